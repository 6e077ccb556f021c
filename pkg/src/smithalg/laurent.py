"""Localized model sum_{p in Z} x^p A[e] with x invertible.

An element is a finite map ``p -> g_p`` (a :class:`UniPoly` in e), standing
for ``sum_p x^p g_p(e)``. Multiplication uses the exchange rule
``g(e) x^q = x^q g(e + q n)``. The radial representation lets the model
act on Laurent polynomials in one variable t through
``(x^p g(e)) t^k = g(k n) t^(k + p)``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .expr import parse_expr
from .numfield import QQ, CoeffRing, UniPoly, format_scalar, unipoly_shift
from .smith import UNormalForm, UPresentation


class LaurentElement:
    __slots__ = ("ring", "n", "terms")

    def __init__(self, terms=None, n: int = 1, ring: CoeffRing = QQ):
        if n < 1:
            raise ValueError("grading step n must be positive")
        self.ring = ring
        self.n = n
        clean = {}
        for p, g in (terms or {}).items():
            if not isinstance(g, UniPoly):
                g = UniPoly((g,), ring)
            if g:
                clean[int(p)] = g
        self.terms = clean

    @classmethod
    def x_power(cls, p: int, n: int, ring: CoeffRing = QQ):
        return cls({p: UniPoly((1,), ring)}, n, ring)

    @classmethod
    def of_e(cls, g: UniPoly, n: int):
        return cls({0: g}, n, g.ring)

    @classmethod
    def scalar(cls, c, n: int, ring: CoeffRing = QQ):
        return cls({0: UniPoly((c,), ring)}, n, ring)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def grades(self):
        return sorted(self.terms)

    def _lift(self, other):
        if isinstance(other, LaurentElement):
            if other.n != self.n or other.ring != self.ring:
                raise ValueError("Laurent elements with different n or coefficient ring")
            return other
        return LaurentElement.scalar(other, self.n, self.ring)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for p, g in other.terms.items():
            out[p] = out[p] + g if p in out else g
        return LaurentElement(out, self.n, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return LaurentElement({p: -g for p, g in self.terms.items()}, self.n, self.ring)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, LaurentElement):
            return laurent_mul(self, other, self.n)
        return laurent_mul(self, self._lift(other), self.n)

    def __rmul__(self, other):
        return laurent_mul(self._lift(other), self, self.n)

    def __pow__(self, k: int):
        out = LaurentElement.scalar(1, self.n, self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentElement):
            if isinstance(other, (int, Rational)):
                other = LaurentElement.scalar(other, self.n, self.ring)
            else:
                return NotImplemented
        return self.n == other.n and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms, reverse=True):
            g = self.terms[p].format("e")
            if p == 0:
                parts.append(g)
                continue
            xp = "x" if p == 1 else f"x^{p}"
            if g == "1":
                parts.append(xp)
            elif len(self.terms[p].coeffs) - self.terms[p].coeffs.count(0) == 1 and not g.startswith("-"):
                parts.append(f"{xp}*{g}")
            else:
                parts.append(f"{xp}*({g})")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentElement({self.format()!r}, n={self.n})"


def laurent_mul(a: LaurentElement, b: LaurentElement, n: int) -> LaurentElement:
    """(x^p g(e)) (x^q h(e)) = x^(p+q) g(e + q n) h(e)."""
    out = {}
    for p, g in a.terms.items():
        for q, h in b.terms.items():
            term = unipoly_shift(g, q * n) * h
            out[p + q] = out[p + q] + term if p + q in out else term
    return LaurentElement(out, n, a.ring)


def tau(elem: LaurentElement, n: int | None = None) -> LaurentElement:
    """Conjugation D -> x D x^-1, i.e. x^p g(e) -> x^p g(e - n)."""
    n = elem.n if n is None else n
    return LaurentElement({p: unipoly_shift(g, -n) for p, g in elem.terms.items()}, elem.n, elem.ring)


def tau_inverse(elem: LaurentElement, n: int | None = None) -> LaurentElement:
    n = elem.n if n is None else n
    return LaurentElement({p: unipoly_shift(g, n) for p, g in elem.terms.items()}, elem.n, elem.ring)


def generators(u: UniPoly, n: int):
    """Images of x, x^-1, e and y = x^-1 u(e) in the model."""
    ring = u.ring
    x = LaurentElement.x_power(1, n, ring)
    xinv = LaurentElement.x_power(-1, n, ring)
    e = LaurentElement.of_e(UniPoly.t(ring), n)
    y = LaurentElement({-1: u}, n, ring)
    return {"x": x, "X": xinv, "e": e, "y": y}


def embed_u(nf: UNormalForm, upres: UPresentation | None = None) -> LaurentElement:
    """Map a U(A, u, n) element into the model via x -> x, e -> e,
    y -> x^-1 u(e)."""
    upres = upres or nf.pres
    return evaluate_word(nf.terms, upres.u, upres.n)


def evaluate_word(words, u: UniPoly, n: int) -> LaurentElement:
    """Evaluate a sum of words over ``x y e`` (and ``X`` for x^-1) directly
    in the model, without any normalization in U."""
    gens = generators(u, n)
    ring = u.ring
    total = LaurentElement({}, n, ring)
    for word, c in words.items():
        value = LaurentElement.scalar(1, n, ring)
        for letter in word:
            value = laurent_mul(value, gens[letter], n)
        total = total + value * c
    return total


def parse_laurent(text: str, u: UniPoly, n: int) -> LaurentElement:
    """Parse text over ``x y e`` where ``x^-k`` is allowed."""
    ws = parse_expr(text, "xye", invertible={"x": "X"})
    return evaluate_word({"".join(w): c for w, c in ws.items()}, u, n)


class RadialVector:
    """Laurent polynomial sum c_k t^k with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {int(k): Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, k: int, c=1):
        return cls({k: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return RadialVector(out)

    def __sub__(self, other):
        return self + RadialVector({k: -c for k, c in other.terms.items()})

    def scale(self, c):
        return RadialVector({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, RadialVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def format(self, var="t") -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            coeff = format_scalar(c)
            parts.append(coeff if not mono else (mono if c == 1 else f"{coeff}*{mono}"))
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RadialVector({self.format()!r})"


def radial_act(elem: LaurentElement, v: RadialVector, d0: int | None = None) -> RadialVector:
    """(x^p g(e)) t^k = g(k d0) t^(k + p), extended linearly."""
    if elem.ring != QQ:
        raise ValueError("the radial representation needs rational coefficients")
    d0 = elem.n if d0 is None else d0
    out = {}
    for p, g in elem.terms.items():
        for k, c in v.terms.items():
            val = g(Fraction(k * d0))
            if val:
                out[k + p] = out.get(k + p, 0) + c * val
    return RadialVector(out)


def center_expansion(h: UniPoly):
    """Coefficients H_0, ..., H_k of h = H_0 + e H_1 + ... + e^k H_k with
    each H_i in the tau-fixed part. With rational coefficients the fixed part
    is the constants, so these are the coefficients of h."""
    return list(h.coeffs)


def is_tau_fixed(elem: LaurentElement) -> bool:
    return tau(elem) == elem
