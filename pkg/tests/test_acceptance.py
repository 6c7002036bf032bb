"""The ten acceptance criteria, run once through ``python -m syzlab corpus run``.

Each criterion prints one ``[PASS]``/``[FAIL]`` line in the terminal summary.
"""

import json
import subprocess
import sys
import time

import pytest

LINES: list[str] = []
TIME_LIMIT = 60.0


@pytest.fixture(scope="session")
def report():
    start = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-m", "syzlab", "--format", "json", "--seed", "0", "corpus", "run"],
        capture_output=True,
        check=False,
    )
    elapsed = time.perf_counter() - start
    assert out.returncode in (0, 1), out.stderr.decode()
    data = json.loads(out.stdout)
    by_number = {c["criterion"]: c for c in data["criteria"]}
    LINES.clear()
    for k in sorted(by_number):
        c = by_number[k]
        LINES.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {k:>2}. {c['title']}: {c['summary']}")
    LINES.append(f"corpus run took {elapsed:.1f} s")
    return {"criteria": by_number, "elapsed": elapsed, "exit": out.returncode}


def _check(report, k):
    c = report["criteria"][k]
    assert c["passed"], c["summary"]


@pytest.mark.xfail(
    strict=True,
    reason="Ωⁿ(A,B,f) ≅ Ωⁿ(A,0,0) ⊕ Ωⁿ(0,B,0) needs f to factor through a projective; "
    "(S,S,1) over T2(L2) is a counterexample, see test_triangular",
)
def test_criterion_01_triple_syzygy_formula(report):
    _check(report, 1)


def test_criterion_01_corrected_statement(report):
    d = report["criteria"][1]["details"]
    assert d["comparisons"] > 100
    assert d["disagreements_with_liftable_f"] == []
    assert d["radical_image_inexact"] == []
    assert all(not r["f_factors_through_projective"] for r in d["disagreements"])


def test_criterion_02_pex_validation(report):
    _check(report, 2)


def test_criterion_03_pex_cover(report):
    _check(report, 3)


def test_criterion_04_it_inequalities(report):
    _check(report, 4)


def test_criterion_05_phi_dim_bound(report):
    _check(report, 5)


def test_criterion_06_triangular_finiteness(report):
    _check(report, 6)


def test_criterion_07_it_module(report):
    _check(report, 7)


def test_criterion_08_it_sequences(report):
    _check(report, 8)


def test_criterion_09_fin_dim(report):
    _check(report, 9)


def test_criterion_10_determinism(report):
    _check(report, 10)


def test_time_limit(report):
    assert report["elapsed"] < TIME_LIMIT
