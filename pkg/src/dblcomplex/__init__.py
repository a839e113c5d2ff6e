"""Exact computations with bounded double complexes.

Cohomology of bicomplexes (Dolbeault, Bott-Chern, Aeppli, de Rham with both
filtrations, Frolicher spectral sequences, d^c-cohomologies), zigzag
multiplicity tables, Chevalley-Eilenberg ingestion of nilpotent Lie algebra
structure equations, Massey products and audits of universal relations.

All arithmetic is exact over the Gaussian rationals Q(i).
"""

from .scalars import Scalar, parse_scalar
from .shapes import ZigzagShape, MultiplicityTable
from .bicomplex import (
    Bicomplex,
    validate,
    make_zigzag,
    make_square,
    direct_sum,
    tensor,
    conjugate,
    dual,
    shift,
    blowup_model,
    basis_change,
    random_bicomplex,
    RandomProfile,
)

__version__ = "0.1.0"
