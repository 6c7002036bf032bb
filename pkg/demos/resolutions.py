"""Projective resolutions and the Igusa-Todorov functions on small algebras.

Run with ``python3 demos/resolutions.py``.
"""

from syzlab import corpus
from syzlab.itfunc import phi, psi, syzygy_finiteness_search
from syzlab.quiver import projective
from syzlab.rep import direct_sum, ext_dim, minimal_resolution, pd, simple

a2 = corpus.algebra("A2")
l2 = corpus.algebra("L2")

# Over 1 -> 2 the simple at the source has a resolution of length one.
s1 = simple(a2, "1")
res = minimal_resolution(s1, 2)
for k in range(3):
    print(f"P_{k} of S(1):", res.projective(k).dims)
print("pd S(1) =", pd(s1))
print("Ext^1(S(1), S(2)) =", ext_dim(s1, simple(a2, "2"), 1))

# k[a]/(a^2): the simple is its own syzygy, so pd is infinite while Φ and Ψ stay 0.
s = simple(l2, "1")
print("\nover L2, pd S =", pd(s, cap=6))
print("Φ(S) =", phi(s).phi, " Ψ(S) =", psi(s).psi)

# Φ ignores multiplicities and sees only the lattice of summands.
m = direct_sum(simple(a2, "1"), simple(a2, "2"))
print("\nΦ(S1 ⊕ S2) =", phi(m).phi, " Ψ(S1 ⊕ S2) =", psi(m).psi)

# Every Ω-orbit of the regular module and the simple closes at once.
report = syzygy_finiteness_search([s, projective(l2, "1")])
print("\nfiniteness search over L2:", report.verdict.value, "at level", report.level)
