"""The Igusa-Todorov machinery over ``T2(Γ)``.

Families: C the modules supported on U, D those supported on T, E the
projective triples ``(P, M⊗P, 1)`` and K the syzygies of D.  For each
sample X we build ``0 -> Ω^(m-1)K -> Ω^(m-1)C ⊕ Ω^(m-1)E ⊕ Q -> Ω^m X ⊕ Q' -> 0``
and then certify an IT module assembled from Hom spaces.
"""

from syzlab import corpus
from syzlab.itbuild import triangular_preset, verify_it_certificate
from syzlab.rep import direct_sum
from syzlab.triangular import it_module_construction

alg = corpus.algebra("T2(A2)")
sc = triangular_preset(alg)
samples = corpus.corpus_triples(alg)
out = sc.run(samples)
print("TS2:", all(r.witnessed for r in out["ts2"]), " TS3:", out["ts3"].passed, f" m = {sc.m}")
shown = [(name, s.to_json(), s.ok) for name, s in out["sequences"] if not s.sequence.middle.is_zero()]
print(f"{len(out['sequences'])} sequences, {len(shown)} nonzero:")
for name, js, ok in shown[:6]:
    print(f"  {name:<28} {js['left']} -> {js['middle']} -> {js['right']}  ok={ok}")

gamma = corpus.algebra("L2")
tri = corpus.algebra("T2(L2)")
V = direct_sum(*corpus.indecomposables(gamma))
C = it_module_construction(V, V, tri)
cert = verify_it_certificate(C, corpus.corpus_triples(tri), 0)
print(f"\nC over T2(L2) has dimension {C.dim}; certificate at n=0: {cert.ok}"
      f" ({len(cert.witnesses)} samples)")
