"""Smith algebras S(A, f, n) and their quotients U(A, u, n).

S(A, f, n) is generated over A by x, y, e with

    [e, x] = n x,   [e, y] = -n y,   [y, x] = f(e)

and U(A, u, n) by x, y, e with

    [e, x] = n x,   [e, y] = -n y,   x y = u(e),   y x = u(e + n).

Elements are linear combinations of words over the letters ``x y e`` with
coefficients in A. Normalization rewrites words until none of the rule
left-hand sides occurs; the normal words are ``x^a y^b e^c`` for S and
``y^l e^k`` (l >= 1) or ``x^m e^r`` for U.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .expr import parse_expr
from .numfield import CoeffRing, UniPoly, _join_terms, _ring_term, unipoly_shift


# ---------------------------------------------------------------------------
# anti-difference
# ---------------------------------------------------------------------------

def f_from_u(u: UniPoly, n: int) -> UniPoly:
    """f(t) = u(t + n) - u(t)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return unipoly_shift(u, n) - u


def u_from_f(f: UniPoly, n: int) -> UniPoly:
    """The u with u(t + n) - u(t) = f(t) and u(0) = 0.

    The difference operator lowers degree by exactly one and is triangular
    on the monomial basis, so u is found by back-substitution from the top
    coefficient down. Works over any ring containing the rationals.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    ring = f.ring
    if f.is_zero():
        return UniPoly((), ring)
    d = f.degree() + 1
    coeffs = [ring.zero] * (d + 1)
    residual = f
    for j in range(d, 0, -1):
        # the t^(j-1) coefficient of the difference of t^j is j * n
        c = residual.coeff(j - 1) * Fraction(1, j * n)
        coeffs[j] = c
        mono = UniPoly([ring.zero] * j + [c], ring)
        residual = residual - (unipoly_shift(mono, n) - mono)
    if not residual.is_zero():
        raise ArithmeticError("anti-difference did not terminate cleanly")
    return UniPoly(coeffs, ring)


# ---------------------------------------------------------------------------
# presentations and rewriting
# ---------------------------------------------------------------------------

class _Presentation:
    letters = "xye"

    def __init__(self, ring: CoeffRing, poly: UniPoly, n: int):
        if n < 1:
            raise ValueError("n must be a positive integer")
        if poly.ring != ring:
            raise ValueError("polynomial coefficients must lie in the presentation ring")
        self.ring = ring
        self.n = n
        self._rules = self._make_rules(poly)
        self._cache = {}

    def _make_rules(self, poly):
        raise NotImplementedError

    @staticmethod
    def _powers_of_e(p: UniPoly, ring):
        return [("e" * j, c) for j, c in enumerate(p.coeffs) if not ring.is_zero(c)]

    def reducible_positions(self, word: str):
        return [i for i in range(len(word) - 1) if word[i:i + 2] in self._rules]

    def normalize(self, elem, rng: random.Random | None = None):
        """Normal form of ``elem`` (dict word -> coefficient).

        Without ``rng`` each word is built up one letter at a time, using
        closed formulas for a normal word times a single letter. With ``rng``
        the rewriting rules are applied to a random reducible pair at every
        step, which gives an independent route to the same answer.
        """
        if rng is None:
            return self._wrap(self._build(elem))
        return self._rewrite(elem, rng)

    def _build(self, elem):
        ring = self.ring
        zero = ring.zero
        done = {}
        for word, c in elem.items():
            c = ring(c)
            if ring.is_zero(c):
                continue
            state = {"": c}
            for letter in word:
                nxt = {}
                for w, v in state.items():
                    for w2, k in self._times_letter(w, letter):
                        nxt[w2] = nxt.get(w2, zero) + v * k
                state = {w: v for w, v in nxt.items() if not ring.is_zero(v)}
            for w, v in state.items():
                done[w] = done.get(w, zero) + v
        return {w: v for w, v in done.items() if not ring.is_zero(v)}

    def _times_letter(self, word: str, letter: str):
        key = (word, letter)
        hit = self._cache.get(key)
        if hit is None:
            if letter == "e":
                hit = ((word + "e", self.ring.one),)
            else:
                hit = tuple(self._right_multiply(word, letter))
            self._cache[key] = hit
        return hit

    def _right_multiply(self, word: str, letter: str):
        raise NotImplementedError

    def _shifted_power(self, k: int, s: int) -> UniPoly:
        """(e + s)^k as a polynomial in e."""
        return unipoly_shift(UniPoly([0] * k + [1], self.ring), s)

    def _with_e(self, prefix: str, g: UniPoly):
        return [(prefix + "e" * j, c) for j, c in enumerate(g.coeffs) if not self.ring.is_zero(c)]

    def _rewrite(self, elem, rng):
        ring = self.ring
        zero = ring.zero
        done = {}
        todo = {w: ring(c) for w, c in elem.items() if not ring.is_zero(ring(c))}
        while todo:
            word, c = todo.popitem()
            if ring.is_zero(c):
                continue
            pos = self.reducible_positions(word)
            if not pos:
                v = done.get(word, zero) + c
                if ring.is_zero(v):
                    done.pop(word, None)
                else:
                    done[word] = v
                continue
            i = rng.choice(pos)
            head, tail = word[:i], word[i + 2:]
            for sub, k in self._rules[word[i:i + 2]]:
                w = head + sub + tail
                todo[w] = todo.get(w, zero) + c * k
        return self._wrap(done)

    def _wrap(self, terms):
        raise NotImplementedError

    def element(self, source):
        """Build a normalized element from text, a WordSum, or a dict."""
        if isinstance(source, str):
            source = parse_expr(source, self.letters)
        terms = {}
        for word, c in source.items():
            w = "".join(word)
            terms[w] = terms.get(w, self.ring.zero) + self.ring(c)
        return self.normalize(terms)

    def gen(self, letter: str):
        return self._wrap({letter: self.ring.one})

    def scalar(self, c):
        return self._wrap({"": self.ring(c)} if not self.ring.is_zero(self.ring(c)) else {})


class SPresentation(_Presentation):
    def __init__(self, ring: CoeffRing, f: UniPoly, n: int):
        self.f = f
        super().__init__(ring, f, n)

    def _make_rules(self, f):
        n = self.n
        return {
            "ex": [("xe", self.ring.one), ("x", self.ring(n))],
            "ey": [("ye", self.ring.one), ("y", self.ring(-n))],
            "yx": [("xy", self.ring.one)] + self._powers_of_e(f, self.ring),
        }

    def _right_multiply(self, word, letter):
        a, b, c = word.count("x"), word.count("y"), word.count("e")
        n = self.n
        if letter == "y":
            return self._with_e("x" * a + "y" * (b + 1), self._shifted_power(c, -n))
        # y^b x = x y^b + y^(b-1) (f(e) + f(e - n) + ... + f(e - (b-1) n))
        shifted = self._shifted_power(c, n)
        out = self._with_e("x" * (a + 1) + "y" * b, shifted)
        if b:
            F = UniPoly((), self.ring)
            for j in range(b):
                F = F + unipoly_shift(self.f, -j * n)
            out += self._with_e("x" * a + "y" * (b - 1), F * shifted)
        return out

    def _wrap(self, terms):
        return SNormalForm(self, terms)

    def __repr__(self):
        return f"S({self.ring!r}, f={self.f}, n={self.n})"


class UPresentation(_Presentation):
    def __init__(self, ring: CoeffRing, u: UniPoly, n: int):
        self.u = u
        super().__init__(ring, u, n)

    def _make_rules(self, u):
        n = self.n
        return {
            "ex": [("xe", self.ring.one), ("x", self.ring(n))],
            "ey": [("ye", self.ring.one), ("y", self.ring(-n))],
            "xy": self._powers_of_e(u, self.ring),
            "yx": self._powers_of_e(unipoly_shift(u, n), self.ring),
        }

    def _right_multiply(self, word, letter):
        n = self.n
        k = word.count("e")
        if "y" in word:
            l = word.count("y")
            if letter == "y":
                return self._with_e("y" * (l + 1), self._shifted_power(k, -n))
            # y x = u(e + n)
            g = unipoly_shift(self.u, n) * self._shifted_power(k, n)
            return self._with_e("y" * (l - 1), g)
        m = word.count("x")
        if letter == "x":
            return self._with_e("x" * (m + 1), self._shifted_power(k, n))
        if m == 0:
            return self._with_e("y", self._shifted_power(k, -n))
        # x y = u(e)
        return self._with_e("x" * (m - 1), self.u * self._shifted_power(k, -n))

    def _wrap(self, terms):
        return UNormalForm(self, terms)

    def __repr__(self):
        return f"U({self.ring!r}, u={self.u}, n={self.n})"


class _NormalForm:
    """Normalized element: dict normal word -> nonzero coefficient."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms):
        self.pres = pres
        self.terms = dict(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _lift(self, other):
        if isinstance(other, _NormalForm):
            if other.pres is not self.pres:
                raise ValueError("elements of different presentations")
            return other
        return self.pres.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        ring = self.pres.ring
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, ring.zero) + c
            if ring.is_zero(v):
                out.pop(w, None)
            else:
                out[w] = v
        return self.pres._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self.pres._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        ring = self.pres.ring
        if not isinstance(other, _NormalForm):
            c = ring(other)
            return self.pres._wrap({w: v * c for w, v in self.terms.items() if not ring.is_zero(v * c)})
        other = self._lift(other)
        raw = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                raw[w] = raw.get(w, ring.zero) + c1 * c2
        return self.pres.normalize(raw)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        out = self.pres.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, _NormalForm):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"{type(self).__name__}({self.format()!r})"

    @staticmethod
    def _word_factors(word: str):
        out = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            k = j - i
            out.append(word[i] if k == 1 else f"{word[i]}^{k}")
            i = j
        return out

    def _sort_key(self, word):
        raise NotImplementedError

    def format(self) -> str:
        ring = self.pres.ring
        parts = [_ring_term(ring, self.terms[w], self._word_factors(w))
                 for w in sorted(self.terms, key=self._sort_key, reverse=True)]
        return _join_terms(parts)


class SNormalForm(_NormalForm):
    """Element sum coeff * x^a y^b e^c of S(A, f, n)."""

    @property
    def exponents(self):
        return {(w.count("x"), w.count("y"), w.count("e")): c for w, c in self.terms.items()}

    def _sort_key(self, w):
        a, b, c = w.count("x"), w.count("y"), w.count("e")
        return (a - b, a + b, c)


class UNormalForm(_NormalForm):
    """Element sum alpha_{k,l} y^l e^k + sum beta_{m,r} x^m e^r of U(A, u, n)."""

    @property
    def y_part(self):
        """{(k, l): alpha} for the terms y^l e^k with l >= 1."""
        return {(w.count("e"), w.count("y")): c for w, c in self.terms.items() if "y" in w}

    @property
    def x_part(self):
        """{(m, r): beta} for the terms x^m e^r with m >= 0."""
        return {(w.count("x"), w.count("e")): c for w, c in self.terms.items() if "y" not in w}

    def grade(self, word) -> int:
        return word.count("x") - word.count("y")

    def _sort_key(self, w):
        return (w.count("x") - w.count("y"), w.count("e"))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _as_terms(word):
    if isinstance(word, str):
        return {word: 1}
    if isinstance(word, _NormalForm):
        return word.terms
    return {"".join(w) if not isinstance(w, str) else w: c for w, c in word.items()}


def s_normalize(word, pres: SPresentation, rng=None) -> SNormalForm:
    """Normal form in S(A, f, n) of a word or a sum of words."""
    return pres.normalize(_as_terms(word), rng)


def u_normalize(word, pres: UPresentation, rng=None) -> UNormalForm:
    """Normal form in U(A, u, n) of a word or a sum of words."""
    return pres.normalize(_as_terms(word), rng)


def casimir(pres: SPresentation) -> SNormalForm:
    """xy - u(e) with u the anti-difference of f vanishing at 0."""
    u = u_from_f(pres.f, pres.n)
    omega = {"xy": pres.ring.one}
    for j, c in enumerate(u.coeffs):
        if not pres.ring.is_zero(c):
            omega["e" * j] = omega.get("e" * j, pres.ring.zero) - c
    return pres.normalize(omega)


def bracket(a, b):
    return a * b - b * a


def is_central(elem, pres) -> bool:
    """True iff ``elem`` commutes with x, y and e."""
    if not isinstance(elem, _NormalForm):
        elem = pres.scalar(elem)
    return all(bracket(elem, pres.gen(g)).is_zero() for g in "xye")


def project_S_to_U(elem: SNormalForm, upres: UPresentation) -> UNormalForm:
    """Image under the quotient map S(A, f, n) -> U(A, u, n)."""
    spres = elem.pres
    if spres.n != upres.n or spres.ring != upres.ring:
        raise ValueError("presentations have different n or coefficient ring")
    if f_from_u(upres.u, upres.n) != spres.f:
        raise ValueError("u is not an anti-difference of f for this n")
    return upres.normalize(elem.terms)
