"""pilotsim: deterministic desk-scale simulator of a glidein-style pilot pool."""

__version__ = "0.1.0"
