"""Invariant differential operators X, Y, E on multiplicity-free spaces with
one-dimensional quotient, Smith algebras S(A, f, n) and U(A, u, n), and exact
checks relating the two."""

from .expr import ParseError, WordSum, parse_expr, parse_poly, parse_unipoly
from .laurent import (
    LaurentElement, RadialVector, embed_u, evaluate_word, laurent_mul, radial_act, tau, tau_inverse,
)
from .numfield import (
    QQ, CoeffRing, EchelonSpan, PolynomialRing, SparsePoly, UniPoly, interpolate, poly_arith,
    unipoly_shift,
)
from .pvcat import (
    CATALOG, PVSpace, abstract_component, bfunction, igusa_closure, load_space, radial_component,
    u_polynomial, verify_space,
)
from .smith import (
    SNormalForm, SPresentation, UNormalForm, UPresentation, casimir, f_from_u, is_central,
    project_S_to_U, s_normalize, u_from_f, u_normalize,
)
from .weyl import WeylOp, commutator, graded_degree, lie_closure_dims, parse_operator, weyl_apply, weyl_mul

__version__ = "0.1.0"
