from fractions import Fraction

import pytest
import sympy

from helpers import sympy_apply_constant_coeff, to_sympy
from smithalg.expr import parse_poly
from smithalg.laurent import LaurentElement
from smithalg.numfield import UniPoly
from smithalg.pvcat import (
    CATALOG, NotRadialError, ProportionalityError, PVSpace, abstract_component, bfunction, igusa_closure,
    load_space, parse_space_file, radial_component, sl2_closed, u_polynomial, verify_space,
)
from smithalg.smith import f_from_u
from smithalg.weyl import WeylOp, weyl_apply

t = UniPoly.t()


def oracle_b(space, K):
    """b(k) by direct sympy differentiation of Delta^(k+1)."""
    syms = sympy.symbols(space.variables)
    delta = to_sympy(space.delta, syms)
    out = []
    for k in range(K + 1):
        image = sympy_apply_constant_coeff(space.delta, syms, sympy.expand(delta ** (k + 1)))
        ratio = sympy.cancel(image / delta ** k) / space.norm
        out.append(Fraction(int(sympy.fraction(ratio)[0]), int(sympy.fraction(ratio)[1])))
    return out


def test_load_rank1():
    s = load_space("rank1")
    assert s.d0 == 1
    assert s.X == WeylOp.x(1, 0)
    assert s.Y == WeylOp.d(1, 0)
    assert s.E == WeylOp.euler(1)


def test_quad2_normalization():
    s = load_space("quad2")
    assert s.norm == 4
    assert s.Y == WeylOp.constant_coefficient(parse_poly("x1^2 + x2^2", ["x1", "x2"])).scale(Fraction(1, 4))


def test_det2_normalization():
    s = load_space("det2")
    assert s.norm == 2


@pytest.mark.parametrize("name", list(CATALOG))
def test_normalization_and_grading(name):
    s = load_space(name)
    assert weyl_apply(s.Y, s.delta) == 1
    assert s.E * s.X - s.X * s.E == s.X.scale(s.d0)
    assert s.E * s.Y - s.Y * s.E == s.Y.scale(-s.d0)


def test_rejections():
    with pytest.raises(ValueError):
        PVSpace("bad", ["x", "y"], parse_poly("x^2 + y", ["x", "y"]))
    with pytest.raises(ValueError):
        PVSpace("zero", ["x"], parse_poly("0", ["x"]))
    with pytest.raises(KeyError):
        load_space("no-such-space")


def test_bfunction_rank1():
    assert bfunction(load_space("rank1"), 5) == [k + 1 for k in range(6)]


@pytest.mark.parametrize("name, expected", [
    ("quad2", [1, 4, 9, 16, 25]),
    ("det2", [1, 3, 6, 10, 15]),
])
def test_bfunction_tables_against_oracle(name, expected):
    s = load_space(name)
    oracle = oracle_b(s, 4)
    assert oracle == expected
    assert bfunction(s, 4) == oracle


@pytest.mark.parametrize("name", ["quad3", "sym2", "pfaff4", "quad4"])
def test_bfunction_other_spaces_against_oracle(name):
    s = load_space(name)
    assert bfunction(s, 4) == oracle_b(s, 4)


def test_bfunction_det3_against_oracle():
    s = load_space("det3")
    b = bfunction(s, 5)
    assert b[:4] == oracle_b(s, 3)
    assert b == [Fraction((k + 1) * (k + 2) * (k + 3), 6) for k in range(6)]


def test_bfunction_precondition():
    with pytest.raises(ValueError):
        bfunction(load_space("det2"), 3)


def test_bfunction_detects_non_proportional_delta():
    s = PVSpace("naive_sym", ["a", "b", "c"], parse_poly("a*c - b^2", ["a", "b", "c"]))
    with pytest.raises(ProportionalityError, match="k = 1"):
        bfunction(s, 4)


@pytest.mark.parametrize("name, u", [
    ("rank1", t),
    ("quad2", t * t * Fraction(1, 4)),
    ("quad3", t * (t + 1) * Fraction(1, 6)),
    ("det2", t * (t + 2) * Fraction(1, 8)),
    ("det3", t * (t + 3) * (t + 6) * Fraction(1, 162)),
])
def test_u_polynomial(name, u):
    # expected values derive from b(k) checked against the oracle above:
    # u_bar(d0 (k+1)) = b(k)
    s = load_space(name)
    assert u_polynomial(s) == u
    assert u_polynomial(s).degree() == s.d0


def test_radial_examples():
    s = load_space("quad2")
    assert radial_component(s, "X") == LaurentElement.x_power(1, 2)
    assert radial_component(s, "E") == LaurentElement.of_e(t, 2)
    bracket = radial_component(s, "Y*X - X*Y")
    assert bracket == LaurentElement.of_e(t + 1, 2)
    assert bracket == LaurentElement.of_e(f_from_u(s.u_bar, 2), 2)


def test_radial_rejects_non_radial_operator():
    s = load_space("quad2")
    with pytest.raises(NotRadialError):
        radial_component(s, WeylOp.x(2, 0))
    with pytest.raises(NotRadialError):
        radial_component(s, WeylOp.multiplication(parse_poly("x1^2", ["x1", "x2"])))


@pytest.mark.parametrize("name", ["rank1", "quad2", "det2", "pfaff4", "sym2"])
def test_radial_matches_abstract_on_short_words(name):
    s = load_space(name)
    for word in ["X*Y*X", "Y*E*Y", "E^2*X - X*E^2", "Y^2*X^2"]:
        assert radial_component(s, word) == abstract_component(s, word)


@pytest.mark.parametrize("name", list(CATALOG))
def test_verify_catalog(name):
    rep = verify_space(load_space(name))
    assert rep.ok, [c for c in rep.checks if c.status != "pass"]


def test_verify_custom_bad_delta():
    s = parse_space_file("name = naive_sym\nvars = a, b, c\ndelta = a*c - b^2\n")
    rep = verify_space(s)
    statuses = {c.name: c.status for c in rep.checks}
    assert statuses["b_proportionality"] == "fail"
    assert not rep.ok


def test_verify_monomial_invariant_is_flagged():
    s = parse_space_file("# reducible\nname = xxy\nvars = x, y\ndelta = x^2*y\n")
    rep = verify_space(s)
    statuses = {c.name: c.status for c in rep.checks}
    assert statuses["no_monomial_factor"] == "fail"
    assert not rep.ok


def test_space_file_errors():
    with pytest.raises(ValueError, match="lacks"):
        parse_space_file("name = a\nvars = x\n")
    with pytest.raises(ValueError):
        parse_space_file("name = a\nvars = x, x\ndelta = x^2")
    with pytest.raises(ValueError):
        parse_space_file("name = a\nvars = x\ndelta = x + 1")


def test_igusa_small():
    assert igusa_closure(load_space("rank1"), 3) == [2, 3, 3]
    assert igusa_closure(load_space("quad2"), 3)[-2:] == [3, 3]
    assert igusa_closure(load_space("det2"), 3)[-2:] == [3, 3]


@pytest.mark.parametrize("name", ["quad2", "quad3", "quad4"])
def test_sl2_closed(name):
    assert sl2_closed(load_space(name))
