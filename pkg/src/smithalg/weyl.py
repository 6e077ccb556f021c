"""The Weyl algebra of differential operators with polynomial coefficients.

An operator is stored in normal order, ``sum c * x^alpha d^beta`` with every
multiplication to the left of every derivative, as a dict keyed by
``(alpha, beta)``. Normal order is unique, so equality is dict equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from numbers import Rational

from .expr import parse_expr
from .numfield import EchelonSpan, SparsePoly, falling, mi_factorial, scalar


@lru_cache(maxsize=None)
def _exchange_1d(b: int, g: int):
    """d^b x^g = sum_k C(b,k) g!/(g-k)! x^(g-k) d^(b-k)."""
    return tuple((k, comb(b, k) * falling(g, k)) for k in range(min(b, g) + 1))


@lru_cache(maxsize=200_000)
def _exchange(beta: tuple, gamma: tuple):
    """Normal-ordered expansion of d^beta x^gamma as ((gamma-k, beta-k), coeff)."""
    per_var = [_exchange_1d(b, g) for b, g in zip(beta, gamma)]
    out = []
    for choice in product(*per_var):
        coeff = 1
        for _, c in choice:
            coeff *= c
        ks = tuple(k for k, _ in choice)
        out.append((tuple(g - k for g, k in zip(gamma, ks)), tuple(b - k for b, k in zip(beta, ks)), coeff))
    return tuple(out)


class WeylOp:
    """Element of the Weyl algebra on ``nvars`` variables. Immutable."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for (a, b), c in (terms or {}).items():
            if len(a) != nvars or len(b) != nvars:
                raise ValueError("multi-index length does not match variable count")
            if c:
                clean[(tuple(a), tuple(b))] = scalar(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # constructors
    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars, c=1):
        c = scalar(c)
        z = (0,) * nvars
        return cls._raw(nvars, {(z, z): c} if c else {})

    @classmethod
    def x(cls, nvars, i):
        a = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw(nvars, {(a, (0,) * nvars): Fraction(1)})

    @classmethod
    def d(cls, nvars, i):
        b = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._raw(nvars, {((0,) * nvars, b): Fraction(1)})

    @classmethod
    def multiplication(cls, p: SparsePoly):
        """Operator of multiplication by ``p``."""
        z = (0,) * p.nvars
        return cls._raw(p.nvars, {(m, z): c for m, c in p.terms.items()})

    @classmethod
    def constant_coefficient(cls, p: SparsePoly):
        """``p(d)``: substitute derivatives for the variables of ``p``."""
        z = (0,) * p.nvars
        return cls._raw(p.nvars, {(z, m): c for m, c in p.terms.items()})

    @classmethod
    def euler(cls, nvars):
        z = (0,) * nvars
        terms = {}
        for i in range(nvars):
            e = tuple(1 if j == i else 0 for j in range(nvars))
            terms[(e, e)] = Fraction(1)
        return cls._raw(nvars, terms)

    # predicates / accessors
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def order(self) -> int:
        """Highest total derivative order (-1 for the zero operator)."""
        return max((sum(b) for _, b in self.terms), default=-1)

    def graded_pieces(self):
        """Split into pieces of fixed ``|alpha| - |beta|``: the eigenspaces of
        ad(E) for the Euler operator E."""
        pieces = {}
        for (a, b), c in self.terms.items():
            pieces.setdefault(sum(a) - sum(b), {})[(a, b)] = c
        return {g: WeylOp._raw(self.nvars, t) for g, t in sorted(pieces.items())}

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    # arithmetic
    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = WeylOp.const(self.nvars, other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return WeylOp._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._raw(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = scalar(c)
        if not c:
            return WeylOp.zero(self.nvars)
        return WeylOp._raw(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = WeylOp.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = WeylOp.const(self.nvars, other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __call__(self, p: SparsePoly) -> SparsePoly:
        return weyl_apply(self, p)

    def format(self, names=None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)] if self.nvars > 1 else ["x"]
        if not self.terms:
            return "0"
        parts = []
        key = lambda kv: (sum(kv[0][1]), sum(kv[0][0]), kv[0][1], kv[0][0])
        for (a, b), c in sorted(self.terms.items(), key=key, reverse=True):
            factors = []
            for name, e in zip(names, a):
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            for name, e in zip(names, b):
                if e:
                    factors.append(f"d{name}" if e == 1 else f"d{name}^{e}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coeff = str(mag) if mag != 1 or not factors else ""
            body = "*".join(([coeff] if coeff else []) + factors)
            parts.append((sign, body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"WeylOp({self.format()!r})"


def weyl_mul(D1: WeylOp, D2: WeylOp) -> WeylOp:
    """Normal-ordered product D1 * D2."""
    D1._check(D2)
    out = {}
    for (a, b), c1 in D1.terms.items():
        for (g, d), c2 in D2.terms.items():
            c = c1 * c2
            for g_k, b_k, k in _exchange(b, g):
                key = (tuple(i + j for i, j in zip(a, g_k)), tuple(i + j for i, j in zip(b_k, d)))
                out[key] = out.get(key, 0) + c * k
    return WeylOp._raw(D1.nvars, {k: v for k, v in out.items() if v})


def weyl_apply(D: WeylOp, p: SparsePoly) -> SparsePoly:
    """Action of D on the polynomial p."""
    if D.nvars != p.nvars:
        raise ValueError(f"variable-count mismatch: {D.nvars} vs {p.nvars}")
    out = {}
    for (a, b), c in D.terms.items():
        for g, v in p.terms.items():
            coeff = c * v
            mono = []
            for ai, bi, gi in zip(a, b, g):
                if bi > gi:
                    break
                if bi:
                    coeff *= falling(gi, bi)
                mono.append(ai + gi - bi)
            else:
                mono = tuple(mono)
                out[mono] = out.get(mono, 0) + coeff
    return SparsePoly(p.nvars, out)


def commutator(D1: WeylOp, D2: WeylOp) -> WeylOp:
    return weyl_mul(D1, D2) - weyl_mul(D2, D1)


def graded_degree(D: WeylOp, E: WeylOp):
    """Return m with [E, D] = m D, or None if D is not homogeneous.

    The zero operator has no unique degree and also gives None.
    """
    if D.is_zero():
        return None
    C = commutator(E, D)
    key, c = next(iter(D.terms.items()))
    m = C.terms.get(key, Fraction(0)) / c
    if m.denominator != 1:
        return None
    if C != D.scale(m):
        return None
    return int(m)


def lie_closure_dims(generators, depth: int):
    """Dimensions of the spans of iterated brackets of ``generators``.

    ``dims[i - 1]`` is the dimension of the span of the generators together
    with all right-normed brackets ``[g1, [g2, ... [g_{j-1}, g_j]]]`` with
    ``j <= i``. Right-normed brackets of generators span the whole Lie
    algebra they generate, so a repeated value means the closure is reached.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    gens = list(generators)
    span = EchelonSpan()
    frontier = [g for g in gens if span.add(g.terms)]
    dims = [span.dim]
    for _ in range(1, depth):
        new = []
        if frontier:
            for g in gens:
                for b in frontier:
                    c = commutator(g, b)
                    if span.add(c.terms):
                        new.append(c)
        frontier = new
        dims.append(span.dim)
    return dims


def operator_alphabet(variables):
    """Map of token -> letter for operator text: each variable ``v`` and its
    derivative ``dv``."""
    alphabet = {}
    for i, v in enumerate(variables):
        alphabet[f"d{v}"] = ("d", i)
    for i, v in enumerate(variables):
        alphabet[v] = ("x", i)
    return alphabet


def parse_operator(text: str, variables) -> WeylOp:
    variables = list(variables)
    n = len(variables)
    ws = parse_expr(text, operator_alphabet(variables))
    gens = {}
    for kind, i in {letter for word in ws for letter in word}:
        gens[(kind, i)] = WeylOp.x(n, i) if kind == "x" else WeylOp.d(n, i)
    return ws.evaluate(gens, WeylOp.const(n, 1))
