"""Catalog of multiplicity-free spaces with one-dimensional quotient, the
operators X, Y, E built on them, b-functions, radial components and the
verification suite that ties the Weyl, Smith and Laurent pictures together.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product

from .expr import parse_expr, parse_poly
from .laurent import LaurentElement, embed_u
from .numfield import QQ, EchelonSpan, SparsePoly, UniPoly, format_scalar, interpolate, mi_factorial
from .smith import UPresentation, f_from_u, u_normalize
from .weyl import WeylOp, commutator, graded_degree, lie_closure_dims, weyl_apply


class ProportionalityError(ValueError):
    """Y applied to a power of Delta_0 is not a multiple of the next lower power."""


class NotRadialError(ValueError):
    """An operator does not map powers of Delta_0 to multiples of powers."""


def _det_vars(n):
    return [f"x{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]


def _det_text(n):
    """Leibniz expansion of the n x n determinant in x11 .. xnn."""
    terms = []
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        mono = "*".join(f"x{i + 1}{perm[i] + 1}" for i in range(n))
        terms.append(("-" if inv % 2 else "+") + mono)
    return " ".join(terms).lstrip("+")


# Each entry: variables, Delta_0 text, description.
CATALOG = {
    "rank1": (["x"], "x", "Delta = x on C"),
    "quad2": (["x1", "x2"], "x1^2 + x2^2", "sum of squares on C^2"),
    "quad3": (["x1", "x2", "x3"], "x1^2 + x2^2 + x3^2", "sum of squares on C^3"),
    "quad4": (["x1", "x2", "x3", "x4"], "x1^2 + x2^2 + x3^2 + x4^2", "sum of squares on C^4"),
    "det2": (_det_vars(2), _det_text(2), "determinant on 2x2 matrices"),
    "det3": (_det_vars(3), _det_text(3), "determinant on 3x3 matrices"),
    # symmetric matrix [[a + b, c], [c, a - b]]: a basis orthogonal for the trace form
    "sym2": (["a", "b", "c"], "a^2 - b^2 - c^2", "determinant on symmetric 2x2 matrices"),
    "pfaff4": (["x12", "x13", "x14", "x23", "x24", "x34"], "x12*x34 - x13*x24 + x14*x23",
               "Pfaffian on alternating 4x4 matrices"),
}


class PVSpace:
    """A space (G, V) given by its fundamental invariant Delta_0.

    X is multiplication by Delta_0, Y = (1/c) Delta_0(d) with
    c = sum over monomials of coeff^2 * alpha!, which makes Y Delta_0 = 1,
    and E is the Euler operator.
    """

    def __init__(self, name: str, variables, delta: SparsePoly, builtin: bool = False):
        variables = list(variables)
        if delta.nvars != len(variables):
            raise ValueError("Delta_0 has the wrong number of variables")
        if delta.is_zero():
            raise ValueError("Delta_0 must be nonzero")
        if not delta.is_homogeneous():
            raise ValueError("Delta_0 must be homogeneous")
        if delta.degree() < 1:
            raise ValueError("Delta_0 must have positive degree")
        self.name = name
        self.variables = variables
        self.delta = delta
        self.builtin = builtin
        self.d0 = delta.degree()
        self.nvars = len(variables)
        self.norm = sum(c * c * mi_factorial(m) for m, c in delta.terms.items())
        self.X = WeylOp.multiplication(delta)
        self.Y = WeylOp.constant_coefficient(delta).scale(1 / self.norm)
        self.E = WeylOp.euler(self.nvars)
        self._powers = [SparsePoly.const(self.nvars, 1)]
        self._b = []

    def __repr__(self):
        return f"PVSpace({self.name!r}, delta={self.delta.format(self.variables)!r})"

    def delta_power(self, k: int) -> SparsePoly:
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.delta)
        return self._powers[k]

    def operator(self, text: str) -> WeylOp:
        """Evaluate a word sum over X, Y, E as a Weyl operator."""
        return evaluate_xye(parse_expr(text, "XYE"), self)

    @cached_property
    def u_bar(self) -> UniPoly:
        return u_polynomial(self)

    def format_op(self, D: WeylOp) -> str:
        return D.format(self.variables)


def evaluate_xye(words, space: PVSpace) -> WeylOp:
    gens = {"X": space.X, "Y": space.Y, "E": space.E}
    total = WeylOp.zero(space.nvars)
    cache = {(): WeylOp.const(space.nvars, 1)}
    for word, c in words.items():
        word = tuple(word)
        # reuse products of shared prefixes
        for i in range(1, len(word) + 1):
            if word[:i] not in cache:
                cache[word[:i]] = cache[word[:i - 1]] * gens[word[i - 1]]
        total = total + cache[word].scale(c)
    return total


def parse_space_file(text: str) -> PVSpace:
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        fields[key] = value
    missing = {"name", "vars", "delta"} - fields.keys()
    if missing:
        raise ValueError(f"space definition lacks {', '.join(sorted(missing))}")
    variables = [v.strip() for v in fields["vars"].split(",") if v.strip()]
    if len(set(variables)) != len(variables):
        raise ValueError("duplicate variable names")
    delta = parse_poly(fields["delta"], variables)
    return PVSpace(fields["name"], variables, delta)


def load_space(source: str) -> PVSpace:
    """A built-in catalog name, or the path of a space-definition file."""
    if source in CATALOG:
        variables, text, _ = CATALOG[source]
        return PVSpace(source, variables, parse_poly(text, variables), builtin=True)
    if os.path.isfile(source):
        with open(source) as fh:
            return parse_space_file(fh.read())
    raise KeyError(source)


# ---------------------------------------------------------------------------
# b-function and u_bar
# ---------------------------------------------------------------------------

def bfunction(space: PVSpace, K: int):
    """[b(0), ..., b(K)] with Y Delta^(k+1) = b(k) Delta^k, checked exactly."""
    if K < space.d0 + 2:
        raise ValueError(f"need K >= d0 + 2 = {space.d0 + 2}")
    while len(space._b) <= K:
        k = len(space._b)
        image = weyl_apply(space.Y, space.delta_power(k + 1))
        b = image.ratio_to(space.delta_power(k))
        if b is None:
            raise ProportionalityError(
                f"not a valid one-dimensional-quotient realization at this power (k = {k})")
        space._b.append(b)
    return list(space._b[:K + 1])


def u_points(space: PVSpace, b):
    return [(space.d0 * (k + 1), bk) for k, bk in enumerate(b)]


def u_polynomial(space: PVSpace, K: int | None = None) -> UniPoly:
    """Interpolate u_bar through (d0 (k+1), b(k)), k = 0..d0, and check that
    the remaining points up to K lie on it and that u_bar(0) = 0."""
    K = space.d0 + 3 if K is None else K
    b = bfunction(space, K)
    pts = u_points(space, b)
    u = interpolate(pts[:space.d0 + 1])
    for t, v in pts[space.d0 + 1:]:
        if u(Fraction(t)) != v:
            raise ArithmeticError(f"u_bar fitted on {space.d0 + 1} points misses b at t = {t}")
    if u(Fraction(0)) != 0:
        raise ArithmeticError("u_bar(0) != 0")
    return u


# ---------------------------------------------------------------------------
# radial components
# ---------------------------------------------------------------------------

def radial_coefficients(space: PVSpace, piece: WeylOp, p: int, K: int):
    """c_k with piece(Delta^k) = c_k Delta^(k+p), k = 0..K."""
    out = []
    for k in range(K + 1):
        image = weyl_apply(piece, space.delta_power(k))
        if k + p < 0:
            if not image.is_zero():
                raise NotRadialError("operator is not radial")
            out.append(Fraction(0))
            continue
        c = image.ratio_to(space.delta_power(k + p))
        if c is None:
            raise NotRadialError("operator is not radial")
        out.append(c)
    return out


def radial_component(space: PVSpace, expr, K: int | None = None) -> LaurentElement:
    """Radial component of ``expr`` (text over X, Y, E, or a WeylOp) as an
    element sum_p x^p g_p(e) of the Laurent model with n = d0.

    Each graded piece of degree p d0 is applied to Delta^k; the scalars
    c_k are interpolated by g_p with g_p(k d0) = c_k. The coefficient c_k is
    a polynomial in k of degree at most the order of the piece, so order + 1
    points fix g_p; the remaining points up to K are checked against it.
    """
    D = expr if isinstance(expr, WeylOp) else space.operator(expr)
    d0 = space.d0
    terms = {}
    for grade, piece in D.graded_pieces().items():
        if grade % d0:
            raise NotRadialError(f"operator has a piece of degree {grade}, not a multiple of {d0}")
        p = grade // d0
        need = piece.order() + 1
        KK = max(need + 1, K or 0)
        cs = radial_coefficients(space, piece, p, KK)
        pts = [(k * d0, c) for k, c in enumerate(cs)]
        g = interpolate(pts[:need])
        if any(g(Fraction(t)) != c for t, c in pts[need:]):
            raise NotRadialError("radial coefficients are not polynomial in the power")
        if g:
            terms[p] = g
    return LaurentElement(terms, d0, QQ)


def abstract_component(space: PVSpace, expr) -> LaurentElement:
    """Evaluate the same word in U(QQ, u_bar, d0), normalize it, and embed
    the normal form in the Laurent model."""
    words = parse_expr(expr, "XYE") if isinstance(expr, str) else expr
    pres = UPresentation(QQ, space.u_bar, space.d0)
    nf = u_normalize({"".join(w).lower(): c for w, c in words.items()}, pres)
    return embed_u(nf, pres)


def words_up_to(length: int, letters="XYE"):
    for n in range(1, length + 1):
        for w in product(letters, repeat=n):
            yield "".join(w)


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "flag"
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Verification:
    space: str
    checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def add(self, name, passed, detail="", flag=False):
        status = "pass" if passed else ("flag" if flag else "fail")
        self.checks.append(Check(name, status, detail))
        return passed


VERIFY_WORDS = ["X", "Y", "X*Y", "Y*X", "Y*X - X*Y", "Y^2", "X^2*Y", "E*X*Y"]


def verify_space(space: PVSpace, K: int | None = None) -> Verification:
    K = space.d0 + 3 if K is None else K
    rep = Verification(space.name)
    X, Y, E, d0 = space.X, space.Y, space.E, space.d0

    rep.add("normalization", weyl_apply(Y, space.delta) == SparsePoly.const(space.nvars, 1),
            "Y(Delta_0) = 1")
    content = space.delta.monomial_content()
    if d0 == 1:
        rep.add("no_monomial_factor", True, "Delta_0 is linear")
    else:
        rep.add("no_monomial_factor", not any(content),
                "Delta_0 has no monomial factor" if not any(content)
                else "Delta_0 is divisible by " + SparsePoly.monomial(content).format(space.variables))
    rep.add("grading_EX", graded_degree(X, E) == d0, f"[E,X] = {d0} X")
    rep.add("grading_EY", graded_degree(Y, E) == -d0, f"[E,Y] = {-d0} Y")
    rep.add("commutativity_XY_YX", commutator(X * Y, Y * X).is_zero(), "[XY, YX] = 0")
    rep.add("tau_XE", X * E == (E - d0) * X, f"X E = (E - {d0}) X")
    rep.add("tau_EY", E * Y == Y * (E - d0), f"E Y = Y (E - {d0})")

    try:
        b = bfunction(space, K)
    except ProportionalityError as exc:
        rep.add("b_proportionality", False, str(exc))
        return rep
    rep.values["b"] = [format_scalar(v) for v in b]
    rep.add("b_proportionality", True, f"Y Delta^(k+1) = b(k) Delta^k for k <= {K}")
    rep.add("b0_normalization", b[0] == 1, f"b(0) = {format_scalar(b[0])}")

    pts = u_points(space, b)
    u = interpolate(pts[:d0 + 1])
    rep.values["u"] = u.format()
    misses = [t for t, v in pts[d0 + 1:] if u(Fraction(t)) != v]
    rep.add("u_stability", not misses,
            f"u_bar = {u.format()} predicts b at t = {[t for t, _ in pts[d0 + 1:]]}"
            if not misses else f"u_bar misses b at t = {misses}")
    rep.add("u_at_zero", u(Fraction(0)) == 0, f"u_bar(0) = {format_scalar(u(Fraction(0)))}")
    rep.add("u_degree", u.degree() == d0, f"deg u_bar = {u.degree()}, d0 = {d0}",
            flag=not space.builtin)
    if misses:
        return rep
    space.__dict__["u_bar"] = u

    f_bar = f_from_u(u, d0)
    try:
        bracket = radial_component(space, Y * X - X * Y)
        rep.add("anti_difference", bracket == LaurentElement.of_e(f_bar, d0),
                f"radial [Y,X] = f_bar(e), f_bar = {f_bar.format()}")
    except NotRadialError as exc:
        rep.add("anti_difference", False, str(exc))

    for word in VERIFY_WORDS:
        name = "radial:" + word.replace(" ", "")
        try:
            weyl_side = radial_component(space, word)
        except NotRadialError as exc:
            rep.add(name, False, str(exc))
            continue
        abstract = abstract_component(space, word)
        rep.add(name, weyl_side == abstract, f"{weyl_side}" if weyl_side == abstract
                else f"Weyl {weyl_side} vs abstract {abstract}")
    return rep


def igusa_closure(space: PVSpace, depth: int):
    return lie_closure_dims([space.X, space.Y], depth)


def sl2_closed(space: PVSpace) -> bool:
    """Is span{X, Y, [Y, X]} closed under the bracket?"""
    H = commutator(space.Y, space.X)
    span = EchelonSpan()
    for op in (space.X, space.Y, H):
        span.add(op.terms)
    return all(span.contains(commutator(a, b).terms)
               for a, b in ((H, space.X), (H, space.Y), (space.X, space.Y)))
