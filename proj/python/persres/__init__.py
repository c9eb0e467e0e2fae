"""Exact computations for multi-parameter persistence modules.

Minimal free resolutions and graded Betti numbers of finitely presented
persistence modules over R^n, plus interleaving decision procedures at the
module, homotopy and derived levels. All arithmetic is exact (rationals or
GF(p)); grades and epsilons cross the boundary as strings like "1/2".
"""

from ._core import (
    Bifiltration,
    ChainComplex,
    Presentation,
    estimate_distance,
    isometry_check,
    rank_obstruction,
    search_interleaving,
    verify_certificate,
)

__all__ = [
    "Bifiltration",
    "ChainComplex",
    "Presentation",
    "estimate_distance",
    "isometry_check",
    "rank_obstruction",
    "search_interleaving",
    "verify_certificate",
]
