"""
Radial components and the one-variable model
=============================================

For each catalog space compute the b-function, the interpolated u_bar, and
compare the radial component of a word in X, Y, E with its value in the
abstract algebra U(QQ, u_bar, d0).
"""

from smithalg.numfield import format_scalar
from smithalg.pvcat import abstract_component, bfunction, load_space, radial_component

for name in ["rank1", "quad2", "det2", "quad3"]:
    space = load_space(name)
    b = bfunction(space, space.d0 + 3)
    print(f"{name}: d0 = {space.d0}")
    print("  b(k) =", ", ".join(format_scalar(v) for v in b))
    print("  u_bar =", space.u_bar.format())
    for word in ["Y*X", "X*Y*Y", "E*Y*X - X*Y*E"]:
        radial = radial_component(space, word)
        same = radial == abstract_component(space, word)
        print(f"  {word:14} -> {radial.format()}   matches U: {same}")
