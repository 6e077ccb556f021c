"""
Smith algebras and their one-dimensional quotients
==================================================

Normal forms in S(QQ, f, n), the Casimir element, and the quotient
U(QQ, u, n) where u is the anti-difference of f.
"""

import random

from smithalg.expr import parse_unipoly
from smithalg.numfield import QQ
from smithalg.smith import (
    SPresentation, UPresentation, casimir, f_from_u, is_central, project_S_to_U, s_normalize,
    u_from_f, u_normalize,
)

f = parse_unipoly("3*t^2 + 1")
n = 2
S = SPresentation(QQ, f, n)
print("y*x in S:", s_normalize("yx", S).format())
print("e*x*y in S:", s_normalize("exy", S).format())

# rewriting in a random order lands on the same normal form
rng = random.Random(0)
word = "yyexxe"
print("confluent:", s_normalize(word, S) == s_normalize(word, S, rng=rng))

u = u_from_f(f, n)
print("u =", u.format(), " check f:", f_from_u(u, n) == f)

omega = casimir(S)
print("Omega =", omega.format(), " central:", is_central(omega, S))

# in the quotient Omega is sent to zero
U = UPresentation(QQ, u, n)
print("Omega in U:", project_S_to_U(omega, U).format())
print("y^2*x^3 in U:", u_normalize("yyxxx", U).format())
