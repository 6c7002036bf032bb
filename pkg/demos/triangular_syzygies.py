"""Syzygies of triples over a triangular matrix algebra.

Over ``T2(Γ)`` a module is a triple ``(A, B, f)`` with ``f: M ⊗ A -> B``.
When ``f`` lifts along the projective cover of ``B`` the n-th syzygy splits
as the syzygy of ``(A, 0, 0)`` plus that of ``(0, B, 0)``, up to projective
summands.  The triple ``(S, S, 1)`` shows that the lifting hypothesis
cannot be dropped.
"""

from syzlab import corpus
from syzlab.decomp import decompose
from syzlab.rep import hom_space, simple
from syzlab.triangular import compare_syzygies, triple

alg = corpus.algebra("T2(L2)")
print(alg, "| M projective on both sides:", alg.hypothesis_holds)

s = simple(alg.T, "1")
h, = hom_space(alg.tensor(s).module, s)
x = triple(alg, s, s, h, label="(S,S,1)")
print(x.label, "f factors through a projective:", x.f_factors_through_projective())
for n in (1, 2, 3):
    c = compare_syzygies(x, n)
    pieces = [p.dims for p in decompose(c.direct.flat).pieces()]
    print(f"  n={n}: direct {c.direct.dim_vector()} {pieces}  formula {c.formula.dim_vector()}"
          f"  agree mod projectives: {c.agree_modulo_projectives}")

tally = {"lifting": [0, 0], "not lifting": [0, 0]}
for t in corpus.corpus_triples(alg):
    for n in (1, 2, 3):
        c = compare_syzygies(t, n)
        key = "lifting" if c.f_lifts else "not lifting"
        tally[key][0] += 1
        tally[key][1] += c.agree_modulo_projectives
for key, (total, agree) in tally.items():
    print(f"{key:>12}: {agree}/{total} comparisons agree")
