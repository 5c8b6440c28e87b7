"""Exact implicitization of rational maps P^n --> (P^1)^(n+1).

The packages work over exact rationals: `polyring` supplies the graded
polynomial arithmetic, `groebner` the Buchberger engine and codimension
tools, `koszul` builds the graded strand of the Koszul complex of the
bilinear forms attached to a map, `detcx` computes its determinant (the
Macaulay resultant) by two independent backends, `geometry` checks the
acyclicity/codimension hypotheses and splits the resultant into the
implicit equation and base-locus factors, and `galedual` constructs maps
from integer matrices for sparse discriminants.
"""

from .polyring import (
    MPoly,
    MultiDeg,
    PolyError,
    RingSpec,
    SquarefreeDecomp,
    default_ring,
    equal_up_to_unit,
    exact_div,
    kth_root,
    multidegree,
    multivariate_gcd,
    parse_poly,
    poly_to_text,
    squarefree_decompose,
    unit_normalize,
)

__all__ = [name for name in dir() if not name.startswith('_')]
