"""
Invariant operators on a prehomogeneous space
=============================================

Build X = Delta_0(x), Y = Delta_0(d) / c and the Euler operator E for the
quadratic form on C^2, then check the sl2-type relations.
"""

from smithalg.pvcat import load_space
from smithalg.weyl import commutator, graded_degree

space = load_space("quad2")
print("Delta_0 =", space.delta.format(space.variables))
print("X =", space.X.format(space.variables))
print("Y =", space.Y.format(space.variables))
print("E =", space.E.format(space.variables))

# X raises the Euler degree by d0, Y lowers it by d0
print("deg X =", graded_degree(space.X, space.E))
print("deg Y =", graded_degree(space.Y, space.E))

# the bracket [Y, X] is a polynomial in E
print("[Y, X] =", commutator(space.Y, space.X).format(space.variables))

# XY and YX commute, as they must for a commutative invariant algebra
print("[XY, YX] == 0:", commutator(space.X * space.Y, space.Y * space.X).is_zero())
