"""One test per acceptance criterion. Each records a PASS/FAIL line that is
printed in the terminal summary (and immediately, with ``-s``)."""
import itertools
import math
import time

import numpy as np
import pytest

from bispans.bispan import from_norm
from bispans.checks import (
    associativity_suite,
    c2_norm_suite,
    degree_suite,
    double_coset_suite,
    finite_difference_suite,
    fold_structure_suite,
    functoriality_suite,
    oracle_completeness_suite,
    pasting_suite,
    section_count_suite,
    splitting_suite,
    tambara_functoriality_suite,
    universal_property_suite,
)
from bispans.cli import main
from bispans.context import Mor, finite_set
from bispans.evaluation import compile, finite_difference_degree, grid_values
from bispans.tambara import c2_norm_closed_form

from conftest import CRITERIA
from test_cli import GOLD, GOLDEN_RUNS

slow = pytest.mark.slow


def record(n, title, ok, detail, seconds=None, budget=None):
    timing = "" if seconds is None else f" [{seconds:.1f}s" + ("" if budget is None else f" / {budget}s") + "]"
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}: {detail}{timing}"
    CRITERIA.append(line)
    print(line)
    return ok


def timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t


def run_suites(n, title, calls, budget=None):
    results, total = [], 0.0
    for fn, kw in calls:
        res, dt = timed(fn, **kw)
        results.append(res)
        total += dt
    ok = all(r.ok for r in results) and (budget is None or total <= budget)
    detail = "; ".join(r.line() for r in results)
    record(n, title, ok, detail, total, budget)
    return results, total, ok


def test_01_universal_property():
    _, _, ok = run_suites(1, "distributivity universal property, FinSet <= 3, probes <= 3",
                          [(universal_property_suite, dict(max_size=3, probe_bound=3))], budget=60)
    assert ok


def test_02_section_count():
    _, _, ok = run_suites(2, "section counts, 1000 random (l, f), carriers <= 6",
                          [(section_count_suite, dict(trials=1000, max_size=6, seed=0))])
    assert ok


@slow
def test_03_associativity():
    _, _, ok = run_suites(3, "bispan associativity, exhaustive <= 2 plus 500 random <= 4, FinSet and C2", [
        (associativity_suite, dict(max_size=2, boundary_max=2, trials=500, random_max=4)),
        (associativity_suite, dict(max_size=2, boundary_max=1, trials=500, random_max=4, group="C2")),
    ], budget=120)
    assert ok


@slow
def test_04_oracle_and_functoriality():
    _, _, ok = run_suites(4, "polynomial oracle completeness <= 3; functoriality over N, Z, Bool, tropical", [
        (oracle_completeness_suite, dict(max_size=3)),
        (functoriality_suite, dict(max_size=3, limit=200)),
    ])
    assert ok


def test_05_double_cosets():
    _, _, ok = run_suites(5, "double coset formula, C2 C3 C4 C2xC2 S3",
                          [(double_coset_suite, {})], budget=30)
    assert ok


def test_06_c2_norm():
    (res,), _, ok = run_suites(6, "C2 Burnside norm, n = 0..6, sections vs closed form",
                               [(c2_norm_suite, dict(max_n=6))])
    assert ok
    # the closed form itself, against a direct count of maps C2 -> n
    for n in range(7):
        maps = list(itertools.product(range(n), repeat=2))
        fixed = sum(a == b for a, b in maps)
        assert c2_norm_closed_form(n) == (fixed, (len(maps) - fixed) // 2)


@slow
def test_07_tambara_functoriality():
    _, _, ok = run_suites(7, "Tambara functoriality over C2 and S3, random boundaries <= 6", [
        (tambara_functoriality_suite, dict(group="C2", max_size=2, boundary_max=1, trials=0)),
        (tambara_functoriality_suite, dict(group="C2", max_size=1, boundary_max=2, trials=0)),
        (tambara_functoriality_suite, dict(group="C2", max_size=0, boundary_max=0, trials=500,
                                           random_max=6, random_middle=4)),
        (tambara_functoriality_suite, dict(group="S3", max_size=2, boundary_max=1, trials=0)),
        (tambara_functoriality_suite, dict(group="S3", max_size=1, boundary_max=2, trials=0)),
        (tambara_functoriality_suite, dict(group="S3", max_size=0, boundary_max=0, trials=300,
                                           random_max=6, random_middle=2)),
    ], budget=300)
    assert ok


def higher_differences_vanish(p: Mor) -> bool:
    """Every forward difference of total order ``max + 1`` is zero at every
    base point of ``{0..max+2}^k`` where it is defined."""
    mx = max((len(fib) for fib in p.fibers), default=0)
    k = len(p.dom)
    for vals in grid_values(compile(from_norm(p)), mx + 2):
        arr = np.asarray(vals, dtype=np.int64)
        if k == 0:
            continue
        for a in itertools.product(range(mx + 2), repeat=k):
            if sum(a) != mx + 1:
                continue
            d = arr
            for axis, order in enumerate(a):
                d = np.diff(d, n=order, axis=axis)
            if d.size and np.any(d):
                return False
    return True


def test_08_degree_theorem():
    (res,), dt, ok = run_suites(8, "finite-difference degree = max fiber, every FinSet p <= 5",
                                [(finite_difference_suite, dict(max_size=5))])
    checked, bad = 0, []
    for y in range(1, 6):
        for x in range(6):
            for t in itertools.combinations_with_replacement(range(y), x):
                p = Mor(finite_set(x), finite_set(y), t)
                mx = max(len(f) for f in p.fibers)
                got = finite_difference_degree(compile(from_norm(p)), mx + 2)
                if max(d.total for d in got) != mx or not higher_differences_vanish(p):
                    bad.append(t)
                checked += 1
    record(8, "max degree = max fiber; (max+1)-st differences vanish on {0..max+2}^k", not bad,
           f"{checked} maps" if not bad else f"failed at {bad[:3]}")
    assert ok and not bad


@pytest.mark.xfail(strict=True, reason="false at empty fibers: splitting gives 1 != 1 + 0 + 1")
def test_09_splitting_literal():
    (res,), _, ok = run_suites(9, "binomial splitting, every p with fibers <= 4 (empty fibers included)",
                               [(splitting_suite, dict(max_fiber=4))])
    assert ok


def test_09_splitting_surjective():
    _, _, ok = run_suites(9, "binomial splitting, every surjective p with fibers <= 4",
                          [(splitting_suite, dict(max_fiber=4, surjective=True))])
    assert ok


@pytest.mark.xfail(strict=True, reason="false at empty fibers: |c_z| = 0, not 2^0 - 2")
def test_10_fold_structure_literal():
    (res,), _, ok = run_suites(10, "fold-distributivity |c_z| = 2^|fiber| - 2, every p <= 5",
                               [(fold_structure_suite, dict(max_size=5))])
    assert ok


def test_10_fold_structure_surjective():
    _, _, ok = run_suites(10, "fold-distributivity structure, every surjective p <= 5",
                          [(fold_structure_suite, dict(max_size=5, surjective=True))])
    assert ok


@slow
def test_11_degree_structure():
    _, _, ok = run_suites(11, "degree axioms and coproduct degree components, FinSet <= 4, C2 <= 6", [
        (degree_suite, dict(max_size=4, probe_size=3)),
        (degree_suite, dict(max_size=6, group="C2", probe_size=2)),
    ])
    assert ok


def test_12_pasting():
    _, _, ok = run_suites(12, "pasted diagrams are distributivity diagrams, carriers <= 3",
                          [(pasting_suite, dict(max_size=3))])
    assert ok


def test_13_cli_goldens(capsys, monkeypatch):
    fixtures = ["compose.txt", "cosets_s3.txt", "norm_c2.txt", "eval_tropical.txt"]
    bad = []
    for name in fixtures:
        want = (GOLD / name).read_text(encoding="utf-8")
        outs = []
        for seed in (None, "0", "0"):
            if seed is None:
                monkeypatch.delenv("BISPAN_SEED", raising=False)
            else:
                monkeypatch.setenv("BISPAN_SEED", seed)
            code = main(GOLDEN_RUNS[name] + ["--seed", "0"])
            outs.append(capsys.readouterr().out)
            if code != 0:
                bad.append(f"{name}: exit {code}")
        if any(o != want for o in outs):
            bad.append(name)
    ok = not bad
    record(13, "CLI goldens byte-identical across runs", ok,
           "mismatch: " + ", ".join(bad) if bad else f"{len(fixtures)} fixtures x 3 runs")
    assert ok
