"""Pullback diagrams of short exact sequences and their projective covers.

The category of such diagrams is closed under sums but not under
extensions: in the one-dimensional family below the middle diagram is
valid exactly when ``y1 + x2 = 0``.
"""

from syzlab import corpus, pex
from syzlab.rep import cover, cover_sequence, simple

for x2, y1 in [(0, 1), (0, 0), (4, 1), (2, 2)]:
    fx = pex.extension_fixture(x1=0, x2=x2, y1=y1, y2=0)
    v = pex.validate(fx.M)
    print(f"x2={x2} y1={y1}: valid={v.valid}", "" if v.valid else f"({v.first_failure})")

a2 = corpus.algebra("A2")
ses = cover_sequence(simple(a2, "1"))
_, g = cover(ses.right)
d = pex.build_from_pullback(ses, g)
print("\npullback of 0 -> S(2) -> P(1) -> S(1) -> 0 along P(1) -> S(1):", pex.validate(d).valid)
c = pex.pex_cover(d)
print("dimensions  A:", d.dims())
print("            P:", c.P.dims())
print("            K:", c.K.dims())
print("checks:", c.checks)
