"""The acceptance suite over the shipped corpus.

Every check is exact.  Each criterion returns a :class:`CriterionResult`
whose ``details`` are plain JSON data in a fixed order, so reports are
byte-reproducible for a fixed seed.
"""

from __future__ import annotations

import hashlib
import json
import os
import subprocess
import sys
from dataclasses import dataclass, field

from . import corpus, pex
from .decomp import decompose
from .itbuild import build_it_sequence, check_ts2, check_ts3, in_add, triangular_preset, ts1_witness, ts2_witness, verify_it_certificate
from .itfunc import SyzygyGraph, it_report, phi_dim_bound, syzygy_finiteness_search
from .rep import direct_sum, pd, syzygy
from .triangular import compare_syzygies, embed_bar, embed_under, it_module_construction


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    summary: str
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.title}: {self.summary}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "summary": self.summary, "details": self.details}


# 1 -------------------------------------------------------------------------


TRIANG_ALGEBRAS = ("T2(L2)", "T2(A2)", "T3(L2)")


def criterion_1(seed: int = 0, p: int = 5) -> CriterionResult:
    """Formula versus direct syzygies of triples, ``1 <= n <= 4``."""
    rows = []
    for name in TRIANG_ALGEBRAS:
        alg = corpus.algebra(name, p)
        for x in corpus.corpus_triples(alg):
            for n in range(1, 5):
                r = compare_syzygies(x, n)
                rows.append({"algebra": name, "triple": x.label, "n": n,
                             "agree_modulo_projectives": r.agree_modulo_projectives, "exact": r.exact,
                             "image_in_radical": r.radical_image, "f_factors_through_projective": r.f_lifts})
    disagree = [r for r in rows if not r["agree_modulo_projectives"]]
    not_exact = [r for r in rows if r["image_in_radical"] and not r["exact"]]
    lifting_violations = [r for r in disagree if r["f_factors_through_projective"]]
    passed = not disagree and not not_exact
    summary = (f"{len(rows)} comparisons, {len(disagree)} disagree modulo projectives, "
               f"{len(not_exact)} radical-image cases inexact; "
               f"{len(lifting_violations)} disagreements where f factors through a projective")
    return CriterionResult(1, "triple syzygy formula vs direct", passed, summary, {
        "comparisons": len(rows),
        "disagreements": disagree,
        "radical_image_inexact": not_exact,
        "disagreements_with_liftable_f": lifting_violations,
    })


# 2 -------------------------------------------------------------------------


def criterion_2(seed: int = 0, p: int = 5) -> CriterionResult:
    diagrams = corpus.all_pex_diagrams(p)
    failures = []
    for label, d in diagrams:
        if not pex.validate(d).valid:
            failures.append({"diagram": label, "failed": ["input not valid"]})
            continue
        c = pex.pex_cover(d)
        bad = [k for k, v in c.checks.items() if not v]
        if bad:
            failures.append({"diagram": label, "failed": bad})
    passed = len(diagrams) >= 10 and not failures
    return CriterionResult(2, "PEx projective cover", passed,
                           f"{len(diagrams)} diagrams, {len(failures)} failures",
                           {"diagrams": len(diagrams), "failures": failures})


# 3 -------------------------------------------------------------------------


def criterion_3(seed: int = 0, p: int = 5) -> CriterionResult:
    bad = pex.validate(pex.extension_fixture(x2=0, y1=1, p=p).M)
    good = pex.validate(pex.extension_fixture(x2=0, y1=0, p=p).M)
    first = bad.first_failure
    rejected = not bad.valid and first is not None and "middle row not exact" in first
    passed = rejected and good.valid
    return CriterionResult(3, "extension counterexample", passed,
                           f"y1=1 rejected: {rejected} ({first or 'valid'}); y1=0 valid: {good.valid}",
                           {"y1=1": bad.to_json(), "y1=0": good.to_json()})


# 4 -------------------------------------------------------------------------


class _Functions:
    """Φ, Ψ and pd with a shared syzygy graph per algebra."""

    def __init__(self, alg, seed: int):
        self.graph = SyzygyGraph(alg, seed)
        self.seed = seed

    def report(self, m):
        r = it_report(m, graph=self.graph, seed=self.seed)
        if not r.decided:
            raise _Undecided(m.label or str(m.dim_vector()))
        return r

    def phi(self, m) -> int:
        return self.report(m).phi

    def psi(self, m) -> int:
        return self.report(m).psi


class _Undecided(Exception):
    pass


def _name(m) -> str:
    return m.label or "x".join(map(str, m.dim_vector()))


def _inequalities(alg, seed: int) -> tuple[int, list[dict], list[dict]]:
    fn = _Functions(alg, seed)
    mods = corpus.corpus_modules(alg)
    inds = corpus.module_samples(alg)
    checks = 0
    violations = []
    undecided = []

    def check(item, ok, **where):
        nonlocal checks
        checks += 1
        if not ok:
            violations.append({"algebra": alg.name, "item": item, **where})

    for m in mods:
        try:
            r = fn.report(m)
            d = pd(m)
            if d.finite:
                check("finite pd", r.phi == r.psi == d.value, module=_name(m), phi=r.phi, psi=r.psi, pd=d.value)
            piece = decompose(m, seed).pieces()[0]
            n_mod = direct_sum(m, piece)
            same_add = in_add(n_mod, decompose(m, seed).pieces(), seed) and in_add(m, decompose(n_mod, seed).pieces(), seed)
            check("add invariance", same_add and fn.phi(n_mod) == r.phi and fn.psi(n_mod) == r.psi, module=_name(m))
            for k in range(5):
                om = syzygy(m, k)
                if om.is_zero():
                    check("syzygy shift", r.phi <= k and r.psi <= k, module=_name(m), n=k)
                    break
                check("syzygy shift", r.phi <= fn.phi(om) + k and r.psi <= fn.psi(om) + k, module=_name(m), n=k)
        except _Undecided as e:
            undecided.append({"algebra": alg.name, "module": str(e)})
    for x in inds:
        for y in mods:
            try:
                s = direct_sum(x, y)
                check("summand", fn.phi(x) <= fn.phi(s) and fn.psi(x) <= fn.psi(s), x=_name(x), y=_name(y))
            except _Undecided as e:
                undecided.append({"algebra": alg.name, "module": str(e)})
    for label, ses in corpus.corpus_sequences(alg):
        X, Y, Z = ses.left, ses.middle, ses.right
        try:
            pz, px, py = pd(Z), pd(X), pd(Y)
            if pz.finite:
                check("pd right term", pz.value <= fn.psi(direct_sum(X, Y)) + 1, sequence=label)
            if px.finite:
                check("pd left term", px.value <= fn.psi(direct_sum(syzygy(Y), syzygy(Z))) + 1, sequence=label)
            if py.finite:
                check("pd middle term", py.value <= fn.psi(direct_sum(X, syzygy(Z))) + 1, sequence=label)
        except _Undecided as e:
            undecided.append({"algebra": alg.name, "module": str(e)})
    return checks, violations, undecided


def criterion_4(seed: int = 0, p: int = 5) -> CriterionResult:
    total, violations, undecided = 0, [], []
    for name in corpus.BASE:
        c, v, u = _inequalities(corpus.algebra(name, p), seed)
        total += c
        violations += v
        undecided += u
    passed = not violations and not undecided
    return CriterionResult(4, "Φ/Ψ inequalities", passed,
                           f"{total} checks, {len(violations)} violations, {len(undecided)} undecided",
                           {"checks": total, "violations": violations, "undecided": undecided})


# 5 -------------------------------------------------------------------------


def criterion_5(seed: int = 0, p: int = 5) -> CriterionResult:
    rows = []
    passed = True
    for name in corpus.BASE:
        alg = corpus.algebra(name, p)
        inds = corpus.indecomposables(alg)
        search = syzygy_finiteness_search(inds, n_max=4, seed=seed)
        if not search.confirmed:
            rows.append({"algebra": name, "confirmed": False})
            passed = False
            continue
        b = phi_dim_bound(alg, inds, search.level, inds, search=search)
        rows.append({"algebra": name, "confirmed": True, "level": search.level, "phi_M": b.phi_m,
                     "samples": len(b.rows), "violations": [v.sample for v in b.violations]})
        passed = passed and b.holds
    return CriterionResult(5, "Φ-dimension bound", passed,
                           "; ".join(f"{r['algebra']}: n={r.get('level')}, Φ(M)={r.get('phi_M')}, "
                                     f"{len(r.get('violations', []))} violations" for r in rows),
                           {"algebras": rows})


# 6 -------------------------------------------------------------------------


def _levels(alg, seed: int) -> dict:
    ts = corpus.module_samples(alg.T)
    us = corpus.u_samples(alg)

    def level(family):
        r = syzygy_finiteness_search(family, n_max=4, seed=seed)
        return r.level if r.confirmed else None

    return {
        "T": level(ts),
        "U": level(us),
        "T-generators": level([embed_bar(alg, a).flat for a in ts]),
        "U-generators": level([embed_under(alg, b).flat for b in us]),
        "triples": level([x.flat for x in corpus.corpus_triples(alg)]),
    }


def criterion_6(seed: int = 0, p: int = 5) -> CriterionResult:
    table = {}
    for base in corpus.BASE:
        for k in (2, 3):
            name = f"T{k}({base})"
            table[name] = _levels(corpus.algebra(name, p), seed)
    agree = all(None not in lv.values() and len(set(lv.values())) == 1 for lv in table.values())
    towers = all(table[f"T2({b})"] == table[f"T3({b})"] for b in corpus.BASE)
    return CriterionResult(6, "syzygy-finiteness levels of triangular algebras", agree and towers,
                           ", ".join(f"{n}: {sorted(set(v.values()), key=str)}" for n, v in table.items()),
                           {"levels": table, "T2 equals T3": towers})


# 7 -------------------------------------------------------------------------


def certified_level(V, samples, n_max: int = 3, seed: int = 0) -> int | None:
    for n in range(n_max + 1):
        if verify_it_certificate(V, samples, n, seed).ok:
            return n
    return None


def criterion_7(seed: int = 0, p: int = 5) -> CriterionResult:
    gamma = corpus.algebra("L2", p)
    alg = corpus.algebra("T2(L2)", p)
    inds = corpus.indecomposables(gamma)
    V = direct_sum(*inds)
    n = certified_level(V, inds, seed=seed)
    details = {"gamma_level": n}
    if n is None:
        return CriterionResult(7, "IT module of the triangular algebra", False, "Γ not certified", details)
    C = it_module_construction(V, V, alg)
    samples = corpus.corpus_triples(alg)
    cert = verify_it_certificate(C, samples, n, seed)
    details.update({"C_dim": C.dim, "C_summands": len(decompose(C.flat, seed).summands),
                    "samples": len(samples), "certificate": cert.to_json()})
    return CriterionResult(7, "IT module of the triangular algebra", cert.ok,
                           f"Γ certified at n={n}; C ({C.dim}-dim) certifies {sum(w.ok for w in cert.witnesses)}"
                           f"/{len(samples)} samples", details)


# 8 -------------------------------------------------------------------------


def criterion_8(seed: int = 0, p: int = 5) -> CriterionResult:
    rows = {}
    passed = True
    for base in corpus.BASE:
        name = f"T2({base})"
        alg = corpus.algebra(name, p)
        sc = triangular_preset(alg, seed=seed)
        ts2 = check_ts2(sc.D, sc.E, sc.K, sc.ts2_hints, seed=seed)
        ts3 = check_ts3(sc.E, sc.C, sc.j)
        built, failed = 0, []
        for x in corpus.corpus_triples(alg):
            y = syzygy(x.flat)
            w1, _ = ts1_witness(y, sc.C, sc.D, sc.ts1_hints, seed=seed)
            w2 = ts2_witness(w1.right, sc.E, sc.K, sc.ts2_hints, seed=seed)[0] if w1 else None
            if w1 is None or w2 is None:
                failed.append({"sample": x.label, "reason": "no TS1/TS2 witness"})
                continue
            s = build_it_sequence(x, w1, w2, sc.j, sc.m, seed)
            if s.ok:
                built += 1
            else:
                failed.append({"sample": x.label, "failed": [k for k, v in s.checks.items() if not v]})
        ok = all(r.witnessed for r in ts2) and ts3.passed and not failed
        passed = passed and ok
        rows[name] = {"m": sc.m, "ts2": all(r.witnessed for r in ts2), "ts3": ts3.passed,
                      "sequences": built, "failures": failed}
    return CriterionResult(8, "Igusa-Todorov sequence end to end", passed,
                           ", ".join(f"{n}: {r['sequences']} sequences, {len(r['failures'])} failures"
                                     for n, r in rows.items()), rows)


# 9 -------------------------------------------------------------------------


def fin_dim(alg) -> int:
    """Largest finite pd over all indecomposables (needs an exhaustive list)."""
    return max((d.value for d in map(pd, corpus.indecomposables(alg)) if d.finite), default=0)


def criterion_9(seed: int = 0, p: int = 5) -> CriterionResult:
    rows = []
    passed = True
    for name in corpus.BASE:
        alg = corpus.algebra(name, p)
        inds = corpus.indecomposables(alg)
        fd = fin_dim(alg)
        fn = _Functions(alg, seed)
        candidates = {"all indecomposables": direct_sum(*inds),
                      "regular": direct_sum(*alg.indecomposable_projectives())}
        for label, V in candidates.items():
            for n in range(3):
                if not verify_it_certificate(V, inds, n, seed).ok:
                    continue
                bound = fn.psi(V) + n + 1
                rows.append({"algebra": name, "V": label, "n": n, "fin_dim": fd, "bound": bound, "holds": fd <= bound})
                passed = passed and fd <= bound
    return CriterionResult(9, "finitistic dimension bound", passed and bool(rows),
                           f"{len(rows)} certificates, {sum(not r['holds'] for r in rows)} violations", {"rows": rows})


# 10 ------------------------------------------------------------------------


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def report_text(results: list[CriterionResult], cfg: dict) -> str:
    """The ``corpus run`` JSON report."""
    return json.dumps({"config": cfg, "criteria": [r.to_json() for r in results]}, indent=2, ensure_ascii=False) + "\n"


def run_criteria(numbers=None, seed: int = 0, p: int = 5) -> list[CriterionResult]:
    numbers = sorted(numbers or CRITERIA)
    return [CRITERIA[k](seed, p) for k in numbers]


def criterion_10(reference: str, seed: int = 0, p: int = 5, cfg: dict | None = None) -> CriterionResult:
    """Recompute criteria 1-9 in a fresh interpreter and compare the report bytes."""
    cfg = cfg or {"field_char": p, "seed": seed}
    cmd = [sys.executable, "-m", "syzlab", "--format", "json"]
    for key, value in cfg.items():
        cmd += [f"--{key.replace('_', '-')}", str(value)]
    cmd += ["corpus", "run", "--criteria", "1-9"]
    env = dict(os.environ, PYTHONHASHSEED="random")
    out = subprocess.run(cmd, capture_output=True, env=env, check=False)
    other = out.stdout.decode("utf-8")
    a = hashlib.sha256(reference.encode("utf-8")).hexdigest()
    b = hashlib.sha256(other.encode("utf-8")).hexdigest()
    same = out.returncode in (0, 1) and a == b
    return CriterionResult(10, "determinism", same,
                           "byte-identical reports" if same else f"reports differ (exit {out.returncode})",
                           {"sha256": [a, b]})
