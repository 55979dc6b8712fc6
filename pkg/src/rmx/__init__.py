"""rmx: exact-arithmetic workbench for fused trigonometric R-matrices.

Constructs the braid/tangle generators of the vector representation of
quantum so(n) and sp(n), fuses the spectral R-matrix onto the
adjoint-plus-trivial module, and verifies the algebraic identities the
construction must satisfy (Yang-Baxter, unitarity, crossing, idempotents,
centralizer block spectra) in exact arithmetic over the rationals or a
prime field.
"""

__version__ = "0.1.0"

from .field import M61, PrimeField, RationalField, BackendMismatch, DegeneratePoint
from .points import EvalPoint, sample_admissible_point
from .brackets import BracketTriple, bracket_eval, brace_eval

__all__ = [
    "M61",
    "PrimeField",
    "RationalField",
    "BackendMismatch",
    "DegeneratePoint",
    "EvalPoint",
    "sample_admissible_point",
    "BracketTriple",
    "bracket_eval",
    "brace_eval",
    "__version__",
]
