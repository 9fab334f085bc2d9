import json
import sys
from contextlib import contextmanager

from tropica.utils.errors import MalformedInput


@contextmanager
def open_input(path):
    """Context manager for a JSON input stream; "-" or None reads standard input."""
    if path in (None, "-"):
        yield sys.stdin
        return
    try:
        f = open(path, "r", encoding="utf-8")
    except OSError as e:
        raise MalformedInput(f"cannot open input {path}: {e.strerror}", path=str(path)) from e
    try:
        yield f
    finally:
        f.close()


def load_json(path):
    with open_input(path) as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}") from e
