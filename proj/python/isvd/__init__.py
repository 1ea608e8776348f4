"""Iterative rank-one decomposition of stacked matrices with support detection."""

from ._core import (
    ConvergenceError,
    Factor,
    ParseError,
    Report,
    ShapeError,
    ZeroMatrixError,
    chebyshev_check,
    decompose,
    detect_support,
    gen_theorem2,
    gen_theorem3,
    gram_residual,
    leading_triple,
    load_matrix,
    roc_sweep,
    save_matrix,
    spectral_norm,
    universal_threshold,
)

__all__ = [
    "ConvergenceError",
    "Factor",
    "ParseError",
    "Report",
    "ShapeError",
    "ZeroMatrixError",
    "chebyshev_check",
    "decompose",
    "detect_support",
    "gen_theorem2",
    "gen_theorem3",
    "gram_residual",
    "leading_triple",
    "load_matrix",
    "roc_sweep",
    "save_matrix",
    "spectral_norm",
    "universal_threshold",
]

__version__ = "0.1.0"
