"""Exact arithmetic: rationals, sparse multivariate polynomials, univariate
polynomials over a commutative coefficient ring, interpolation and exact
row reduction.

Rationals are :class:`fractions.Fraction`; every other type here is built on
top of them and never rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational

Scalar = Fraction


def scalar(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# multi-indices (plain tuples of non-negative ints)
# ---------------------------------------------------------------------------

def mi_add(a: tuple, b: tuple) -> tuple:
    return tuple(i + j for i, j in zip(a, b))


def mi_sub(a: tuple, b: tuple) -> tuple:
    out = tuple(i - j for i, j in zip(a, b))
    if any(v < 0 for v in out):
        raise ValueError(f"multi-index {b} does not divide {a}")
    return out


def mi_le(a: tuple, b: tuple) -> bool:
    return all(i <= j for i, j in zip(a, b))


def mi_factorial(a: tuple) -> int:
    out = 1
    for v in a:
        for k in range(2, v + 1):
            out *= k
    return out


def falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1)."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _grlex_key(mono):
    return (sum(mono), mono)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------

class SparsePoly:
    """Polynomial in ``nvars`` variables with rational coefficients.

    Stored as a dict ``exponent tuple -> Fraction`` holding nonzero entries
    only. Treat instances as immutable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise ValueError(f"monomial {mono} has wrong length for {nvars} variables")
                if c:
                    clean[tuple(mono)] = scalar(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c=1) -> "SparsePoly":
        c = scalar(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "SparsePoly":
        mono = [0] * nvars
        mono[i] = 1
        return cls._raw(nvars, {tuple(mono): Fraction(1)})

    @classmethod
    def monomial(cls, mono, c=1) -> "SparsePoly":
        return cls(len(mono), {tuple(mono): c})

    # predicates / accessors
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0] if self.terms else None

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return SparsePoly.const(self.nvars, other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SparsePoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SparsePoly":
        c = scalar(c)
        if not c:
            return SparsePoly.zero(self.nvars)
        return SparsePoly._raw(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return SparsePoly._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = SparsePoly.const(self.nvars, other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v *= scalar(x) ** e
            total += v
        return total

    def ratio_to(self, other: "SparsePoly"):
        """Return c with ``self == c * other`` or None if not proportional."""
        self._check(other)
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        if self.is_zero():
            return Fraction(0)
        if self.terms.keys() != other.terms.keys():
            return None
        mono, c0 = next(iter(other.terms.items()))
        c = self.terms[mono] / c0
        for m, v in other.terms.items():
            if self.terms[m] != c * v:
                return None
        return c

    def monomial_content(self) -> tuple:
        """Largest monomial dividing every term."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def format(self, names=None) -> str:
        if names is None:
            names = default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append(_signed_term(c, factors))
        return _join_terms(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SparsePoly({self.format()!r})"


def default_names(nvars: int):
    return ["x"] if nvars == 1 else [f"x{i + 1}" for i in range(nvars)]


def _signed_term(c: Fraction, factors) -> tuple:
    """(sign, body) pair for a coefficient times a product of factor strings."""
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not factors:
        body = format_scalar(a)
    elif a == 1:
        body = "*".join(factors)
    else:
        body = "*".join([format_scalar(a)] + factors)
    return sign, body


def _join_terms(parts) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_arith(p: SparsePoly, q: SparsePoly, op: str) -> SparsePoly:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# coefficient rings
# ---------------------------------------------------------------------------

class CoeffRing:
    """Commutative ring with unit, used as the coefficient algebra of
    :class:`UniPoly` and of the Smith-type algebras.

    Elements are plain Python objects supporting ``+ - *`` and ``==``; the
    ring object supplies the constants and the embedding of rationals.
    """

    name = "ring"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, c):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def format(self, a) -> str:
        return str(a)

    def is_atomic(self, a) -> bool:
        """True when ``a`` prints without surrounding parentheses."""
        return True


class RationalField(CoeffRing):
    name = "QQ"

    def __call__(self, c):
        if isinstance(c, SparsePoly):
            raise TypeError("polynomial is not a rational")
        return scalar(c)

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        return format_scalar(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PolynomialRing(CoeffRing):
    """Q[z1, ..., zm] realized by :class:`SparsePoly`."""

    def __init__(self, names):
        self.names = list(names)
        self.nvars = len(self.names)
        self.name = "QQ[" + ",".join(self.names) + "]"

    def __call__(self, c):
        if isinstance(c, SparsePoly):
            if c.nvars != self.nvars:
                raise ValueError("polynomial lives in a different ring")
            return c
        return SparsePoly.const(self.nvars, c)

    def gen(self, i: int) -> SparsePoly:
        return SparsePoly.var(self.nvars, i)

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def format(self, a) -> str:
        return a.format(self.names)

    def is_atomic(self, a) -> bool:
        return len(a) <= 1

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.names == self.names

    def __hash__(self):
        return hash(tuple(self.names))

    def __repr__(self):
        return self.name


# ---------------------------------------------------------------------------
# univariate polynomials over a coefficient ring
# ---------------------------------------------------------------------------

class UniPoly:
    """Polynomial in one variable ``t`` with coefficients in ``ring``.

    ``coeffs[i]`` is the coefficient of ``t**i``; trailing zeros are removed
    on construction so the zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, coeffs=(), ring: CoeffRing = QQ):
        cs = [ring(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls, ring: CoeffRing = QQ) -> "UniPoly":
        return cls((0, 1), ring)

    @classmethod
    def constant(cls, c, ring: CoeffRing = QQ) -> "UniPoly":
        return cls((c,), ring)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.ring != self.ring:
                raise ValueError(f"coefficient ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        try:
            return UniPoly((self.ring(other),), self.ring)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.ring)
        out = [self.ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly((1,), self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            try:
                other = self._coerce(other)
            except ValueError:
                return False
            if other is NotImplemented:
                return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __call__(self, value):
        """Horner evaluation; ``value`` may be any object the coefficients
        multiply with (a ring element, a rational, another UniPoly)."""
        if not self.coeffs:
            return self.ring.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def shift(self, s) -> "UniPoly":
        return unipoly_shift(self, s)

    def map_coeffs(self, fn, ring=None) -> "UniPoly":
        ring = ring or self.ring
        return UniPoly([fn(c) for c in self.coeffs], ring)

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if self.ring.is_zero(c):
                continue
            power = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            parts.append(_ring_term(self.ring, c, [power] if power else []))
        return _join_terms(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UniPoly({self.format()!r}, {self.ring!r})"


def _ring_term(ring: CoeffRing, c, factors) -> tuple:
    """(sign, body) for a ring coefficient times factor strings."""
    if isinstance(ring, RationalField):
        return _signed_term(c, factors)
    if not ring.is_atomic(c):
        return "+", "*".join(["(" + ring.format(c) + ")"] + factors)
    body = ring.format(c)
    sign = "+"
    if body.startswith("-"):
        sign, body = "-", body[1:]
    if factors and body == "1":
        return sign, "*".join(factors)
    return sign, "*".join([body] + factors)


def unipoly_shift(u: UniPoly, s) -> UniPoly:
    """Return u(t + s), with s a rational or an element of the coefficient ring."""
    ring = u.ring
    s = ring(s) if not isinstance(s, (int, Rational)) else scalar(s)
    n = len(u.coeffs)
    out = [ring.zero] * n
    spow = [ring.one]
    for _ in range(n):
        spow.append(spow[-1] * s)
    for i, a in enumerate(u.coeffs):
        for j in range(i + 1):
            out[j] = out[j] + a * comb(i, j) * spow[i - j]
    return UniPoly(out, ring)


def interpolate(points) -> UniPoly:
    """Unique rational polynomial of degree < len(points) through ``points``
    (Newton divided differences, exact)."""
    pts = [(scalar(a), scalar(b)) for a, b in points]
    xs = [a for a, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be pairwise distinct")
    if not pts:
        return UniPoly((), QQ)
    table = [b for _, b in pts]
    coef = [table[0]]
    for level in range(1, len(pts)):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(len(table) - 1)]
        coef.append(table[0])
    result = UniPoly((coef[-1],), QQ)
    for i in range(len(coef) - 2, -1, -1):
        result = result * UniPoly((-xs[i], 1), QQ) + coef[i]
    return result


# ---------------------------------------------------------------------------
# exact row reduction on sparse vectors
# ---------------------------------------------------------------------------

class EchelonSpan:
    """Incrementally maintained row-echelon basis of sparse rational vectors.

    Vectors are dicts ``key -> Fraction``; keys must be mutually orderable.
    """

    def __init__(self):
        self.rows = {}  # pivot key -> row with row[pivot] == 1

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> dict:
        v = {k: scalar(c) for k, c in vec.items() if c}
        while v:
            hit = [k for k in v if k in self.rows]
            if not hit:
                break
            for k in hit:
                c = v.get(k)
                if not c:
                    continue
                for kk, rc in self.rows[k].items():
                    nv = v.get(kk, 0) - c * rc
                    if nv:
                        v[kk] = nv
                    else:
                        v.pop(kk, None)
        return v

    def add(self, vec) -> bool:
        """Insert ``vec``; return True iff it was independent of the span."""
        v = self.reduce(vec)
        if not v:
            return False
        pivot = min(v)
        inv = 1 / v[pivot]
        row = {k: c * inv for k, c in v.items()}
        # keep rows fully reduced against the new pivot
        for key, other in self.rows.items():
            c = other.get(pivot)
            if c:
                for kk, rc in row.items():
                    nv = other.get(kk, 0) - c * rc
                    if nv:
                        other[kk] = nv
                    else:
                        other.pop(kk, None)
        self.rows[pivot] = row
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)


def rank(vectors) -> int:
    span = EchelonSpan()
    for v in vectors:
        span.add(v)
    return span.dim
