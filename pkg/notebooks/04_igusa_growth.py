"""
Lie closure of {X, Y}
=====================

For quadratic forms and 2x2 determinants the brackets of X and Y close up
into a three-dimensional Lie algebra. For the 3x3 determinant they keep
growing.
"""

from smithalg.pvcat import igusa_closure, load_space, sl2_closed

for name in ["rank1", "quad2", "quad3", "det2", "det3"]:
    space = load_space(name)
    dims = igusa_closure(space, 4 if name == "det3" else 3)
    print(f"{name:6} dims = {dims}  closes at 3: {sl2_closed(space)}")
