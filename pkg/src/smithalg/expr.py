"""Text grammar shared by polynomials, differential operators and abstract
words::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' power)?
    atom   := generator | rational | '(' expr ')'

Products are noncommutative and left-associative. Parsing yields a
:class:`WordSum`, a finite map ``tuple of generator names -> Fraction``,
which callers evaluate in whatever algebra the generators live in.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .numfield import PolynomialRing, QQ, SparsePoly, UniPoly


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[offset]!r}", offset, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class WordSum(dict):
    """Finite linear combination of words (tuples of generator names)."""

    @classmethod
    def scalar(cls, c) -> "WordSum":
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def word(cls, *letters) -> "WordSum":
        return cls({tuple(letters): Fraction(1)})

    def __add__(self, other):
        out = WordSum(self)
        for w, c in other.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return out

    def __neg__(self):
        return WordSum({w: -c for w, c in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, WordSum):
            c = Fraction(other)
            return WordSum({w: v * c for w, v in self.items() if v * c})
        out = WordSum()
        for w1, c1 in self.items():
            for w2, c2 in other.items():
                w = w1 + w2
                v = out.get(w, 0) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return out

    def power(self, k: int) -> "WordSum":
        out = WordSum.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def max_length(self) -> int:
        return max((len(w) for w in self), default=0)

    def evaluate(self, gens, one):
        """Sum of c * gens[w0] * gens[w1] * ... in the target algebra."""
        total = one * 0
        for word, c in self.items():
            value = one
            for letter in word:
                value = value * gens[letter]
            total = total + value * c
        return total


class _Parser:
    def __init__(self, text, alphabet, invertible):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.alphabet = alphabet
        self.invertible = invertible

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def parse(self) -> WordSum:
        if self.peek()[0] == "end":
            self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self):
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        start = self.peek()
        atom, name = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            negative = False
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                neg_tok = self.take()
                if name is None or name not in self.invertible:
                    self.error("negative exponent on a non-invertible factor", neg_tok)
                negative = True
            tok = self.peek()
            if tok[0] != "num" or "/" in tok[1]:
                self.error("expected a non-negative integer exponent")
            self.take()
            k = int(tok[1])
            if negative:
                return WordSum.word(*([self.invertible[name]] * k))
            return atom.power(k)
        return atom

    def atom(self):
        tok = self.peek()
        kind, val, _ = tok
        if kind == "num":
            self.take()
            return WordSum.scalar(Fraction(val)), None
        if kind == "name":
            if val not in self.alphabet:
                self.error(f"unknown generator {val!r}")
            self.take()
            return WordSum.word(self.alphabet[val]), val
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            if not (self.peek()[0] == "op" and self.peek()[1] == ")"):
                self.error("expected ')'")
            self.take()
            return inner, None
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {val!r}")


def parse_expr(text: str, alphabet, invertible=None) -> WordSum:
    """Parse ``text`` over the generator names in ``alphabet``.

    ``alphabet`` is an iterable of names or a dict ``name -> letter``.
    ``invertible`` maps a name to the letter used for its inverse, enabling
    ``name^-k``.
    """
    if not isinstance(alphabet, dict):
        alphabet = {a: a for a in alphabet}
    return _Parser(text, alphabet, invertible or {}).parse()


def parse_poly(text: str, variables) -> SparsePoly:
    variables = list(variables)
    n = len(variables)
    index = {v: i for i, v in enumerate(variables)}
    ws = parse_expr(text, variables)
    terms = {}
    for word, c in ws.items():
        mono = [0] * n
        for letter in word:
            mono[index[letter]] += 1
        mono = tuple(mono)
        terms[mono] = terms.get(mono, 0) + c
    return SparsePoly(n, terms)


def parse_unipoly(text: str, var: str = "t", ring=QQ) -> UniPoly:
    if isinstance(ring, PolynomialRing):
        names = ring.names + [var]
        p = parse_poly(text, names)
        coeffs = {}
        for mono, c in p.terms.items():
            k = mono[-1]
            coeffs.setdefault(k, ring.zero)
            coeffs[k] = coeffs[k] + SparsePoly.monomial(mono[:-1], c)
        return UniPoly([coeffs.get(i, ring.zero) for i in range(max(coeffs, default=-1) + 1)], ring)
    p = parse_poly(text, [var])
    deg = p.degree()
    return UniPoly([p.terms.get((i,), 0) for i in range(deg + 1)], QQ)
