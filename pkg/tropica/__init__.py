"""tropica - exact plane tropical geometry with a JSON/SVG command line."""

__version__ = "1.0.0"
