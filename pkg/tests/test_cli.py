"""End-to-end runs of the command line through main()."""
import io
import json
import random
from pathlib import Path

import pytest

from tests.strategies import random_bipoly
from tropica import __version__
from tropica.app import main
from tropica.utils.serialize import bi_to_json

EXAMPLES = Path(__file__).resolve().parent.parent / "data" / "examples"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    out = json.loads(captured.out) if captured.out.strip().startswith("{") else None
    err = json.loads(captured.err.strip().splitlines()[-1]) if code and captured.err.strip() else None
    return code, out, err


def example(name):
    return str(EXAMPLES / name)


def test_curve_of_a_line(capsys):
    code, out, _ = run(capsys, "curve", "--input", example("line.json"))
    assert code == 0
    assert out["schema"] == "tropica/1"
    assert out["vertices"] == [["-3/2", "11/2"]]
    assert out["degree"]["degree"] == 1


def test_roots_from_standard_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"poly": "0+x^2"})))
    code, out, _ = run(capsys, "roots")
    assert code == 0
    assert out["roots"] == [{"root": "0", "order": 2}]


def test_curve_output_feeds_balance(capsys, tmp_path):
    rng = random.Random(5)
    for k in range(50):
        source = tmp_path / f"poly{k}.json"
        source.write_text(json.dumps({"poly": bi_to_json(random_bipoly(rng, rng.randint(1, 4)))}))
        code, curve, _ = run(capsys, "curve", "--input", str(source))
        assert code == 0
        target = tmp_path / f"curve{k}.json"
        target.write_text(json.dumps(curve))
        code, out, _ = run(capsys, "balance", "--input", str(target))
        assert code == 0 and out["ok"]


def test_bezout_and_intersections(capsys):
    code, out, _ = run(capsys, "bezout", "--input", example("line-conic.json"))
    assert code == 0
    assert (out["total"], out["d1"], out["d2"], out["bezout_ok"]) == (2, 1, 2, True)
    code, out, _ = run(capsys, "intersect", "--input", example("tangent-line-conic.json"))
    assert code == 0
    assert [(p["x"], p["y"], p["mult"]) for p in out["points"]] == [("0", "0", 2)]
    code, out, _ = run(capsys, "stable", "--input", example("line-through-vertex.json"))
    assert code == 0
    assert [(p["x"], p["y"], p["mult"], p["kind"]) for p in out["points"]] == [("1", "-1", 2, "stable-limit")]


def test_stable_with_a_parallel_direction_exits_with_two(capsys, tmp_path):
    source = tmp_path / "stable.json"
    source.write_text(json.dumps({"polys": ["0+x+y", "1+x+2y"], "direction": [1, 0]}))
    code, _, err = run(capsys, "stable", "--input", str(source))
    assert code == 2
    assert err["error"]["type"] == "MalformedInput"
    assert err["error"]["direction"] == [1, 0]


def test_non_transverse_input_is_a_domain_error(capsys):
    code, out, err = run(capsys, "intersect", "--input", example("line-through-vertex.json"))
    assert code == 1 and out is None
    assert err["schema"] == "tropica/1"
    assert err["error"]["type"] == "NonTransverse"
    assert err["error"]["point"] == ["1", "-1"]


def test_dequant(capsys):
    code, out, _ = run(capsys, "dequant", "--input", example("dequant.json"), "--precision", "12")
    assert code == 0
    assert float(out["lower"]) == 1
    assert 0 < float(out["value"]) - 1 < 2.1e-7
    code, _, err = run(capsys, "dequant", "--input", example("dequant.json"), "--t", "1")
    assert code == 1 and err["error"]["type"] == "InvalidBase"
    code, _, err = run(capsys, "dequant", "--input", example("dequant.json"), "--t", "abc")
    assert code == 2 and err["error"]["type"] == "MalformedInput"


def test_dequant_with_a_missing_argument(capsys, tmp_path):
    source = tmp_path / "half.json"
    source.write_text(json.dumps({"x": "3", "t": "2"}))
    code, out, _ = run(capsys, "dequant", "--input", str(source))
    assert code == 0
    assert out["value"] == "3." + "0" * 30
    assert float(out["lower"]) == 3


def test_tail_and_hyper(capsys, tmp_path):
    code, out, _ = run(capsys, "tail", "--input", example("tail.json"))
    assert code == 0 and out["vertices"] == [["-3/2", "11/2"]]
    source = tmp_path / "hyper.json"
    source.write_text(json.dumps({"poly": "0+x", "at": "0"}))
    code, out, _ = run(capsys, "hyper", "--input", str(source))
    assert code == 0 and out["is_root"]
    assert out["value"] == {"kind": "closed-ray", "upper": "0", "contains_bottom": True}


def test_patchwork_commands(capsys):
    code, out, _ = run(capsys, "patchwork", "stats", "--input", example("patchwork-line.json"))
    assert code == 0 and out["valid"]
    assert (out["components"], out["bounded"], out["unbounded"]) == (1, 0, 1)
    code, out, _ = run(capsys, "patchwork", "enumerate", "--input", example("line.json"), "--limit", "3")
    assert code == 0 and out["count"] == 3
    code, out, _ = run(capsys, "patchwork", "validate", "--input", example("patchwork-line.json"))
    assert code == 0 and out["ok"]


def test_even_weights_cannot_be_patchworked(capsys):
    code, _, err = run(capsys, "patchwork", "enumerate", "--input", example("weighted-conic.json"))
    assert code == 1
    assert err["error"]["type"] == "PreconditionFailed"
    assert err["error"]["reason"] == "even-weight edge"


def test_amoeba_converge(capsys):
    code, out, _ = run(capsys, "amoeba", "converge", "--input", example("amoeba-line.json"),
                       "--t", "2,8,32", "--grid", "33,16")
    assert code == 0
    assert out["t"] == [2.0, 8.0, 32.0]
    assert out["strictly_decreasing"]


def test_svg_is_written(capsys, tmp_path):
    target = tmp_path / "conic.svg"
    code, _, _ = run(capsys, "curve", "--input", example("weighted-conic.json"), "--svg", str(target))
    assert code == 0
    assert "<svg" in target.read_text(encoding="utf-8")


def test_empty_viewport_is_a_domain_error(capsys, tmp_path):
    code, _, err = run(capsys, "curve", "--input", example("line.json"), "--svg", str(tmp_path / "x.svg"),
                       "--viewport", "0,0,0,1")
    assert code == 1 and err["error"]["type"] == "EmptyViewport"


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["curve", "--viewport", "1,2,3"],
    ["patchwork"],
    ["curve", "--input", "/nonexistent/poly.json"],
])
def test_usage_errors_exit_with_two(capsys, argv):
    assert main(argv) == 2


def test_malformed_json_exits_with_two(capsys, tmp_path):
    source = tmp_path / "bad.json"
    source.write_text("{not json")
    code, _, err = run(capsys, "curve", "--input", str(source))
    assert code == 2 and err["error"]["type"] == "MalformedInput"


@pytest.mark.parametrize("document", [
    {"subdivision": [[0, 0], [1, 0], [0, 1]]},
    {"subdivision": "triangle"},
    {"subdivision": {"cells": [[[0, 0], [1, 0], [0, 1]]], "heights": [{"i": 0}]}},
    {"subdivision": {"cells": "abc"}},
])
def test_reconstruct_with_a_malformed_subdivision_exits_with_two(capsys, tmp_path, document):
    source = tmp_path / "sub.json"
    source.write_text(json.dumps(document))
    code, out, err = run(capsys, "reconstruct", "--input", str(source))
    assert code == 2 and out is None
    assert err["error"]["type"] == "MalformedInput"


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out
