"""Acceptance criteria, one check per criterion at its stated tolerance.

Each check prints a single ``criterion N: PASS|FAIL ...`` line. Run with
``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np
import pytest

from pangular import bounds as B
from pangular.bounds import BoundId
from pangular.distance import DistanceParams as P
from pangular.probe import (
    SearchConfig,
    classify_space,
    map_pomocna_witness,
    search_violation,
    violation_margin,
)
from pangular.space import SpaceSpec, validate_triple
from pangular.verify import SampleConfig, SeqId, asymptotic_value, check_property, positivity_scan

N = 10_000
SEED = 20240601
P_GRID = (0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, -1.0)
SUITE_SPACES = [SpaceSpec.euclidean(d) for d in (2, 3, 4)] + \
    [SpaceSpec.lp(1.0, d) for d in (2, 3, 4)] + [SpaceSpec.linf(d) for d in (2, 3, 4)]


def _suite(jobs, tol=1e-9):
    """Run (property_id, space, params) jobs; return (all passed, summary)."""
    failures, total = [], 0
    for prop, space, params in jobs:
        rep = check_property(prop, SampleConfig(SEED, N, space), params, tol)
        total += rep.samples_run
        if not rep.passed:
            failures.append(f"{prop}@{space.to_syntax()} p={params.p} ({len(rep.violations)})")
    return not failures, f"{len(jobs)} runs, {total} evaluated samples, failures: {failures or 'none'}"


def criterion_1():
    out = []
    for c, want in ((4.0, 1 / 12), (4.5, -0.375)):
        t = validate_triple(1, 4, c)
        m = B.evaluate_bound(BoundId.MAL_LO, P(-1.0), t).value
        k = B.evaluate_bound(BoundId.NEW_k, P(-1.0), t).value
        out.append((abs((m - k) - want) <= 1e-12, f"(1,4,{c:g}): {m - k:.15g}"))
    return all(ok for ok, _ in out), "; ".join(d for _, d in out)


def criterion_2():
    jobs = [("chain_p_ge_1" if p >= 1 else "chain_p_lt_1", s, P(p)) for s in SUITE_SPACES for p in P_GRID]
    return _suite(jobs)


def criterion_3():
    jobs = [("dominance_upper", s, P(p)) for s in SUITE_SPACES for p in P_GRID]
    jobs += [("dominance_lower", s, P(p)) for s in SUITE_SPACES for p in P_GRID if 0 <= p < 1]
    jobs += [("hile_dominance", s, P(p)) for s in SUITE_SPACES for p in P_GRID if p >= 1]
    return _suite(jobs)


def criterion_4():
    cfg = SampleConfig(SEED, N, SpaceSpec.euclidean(3))
    rep = positivity_scan(BoundId.NEW_k, [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, -1.0], cfg, family_n=10_000)
    nonneg = all(not rep.negative_found(p) for p in (0.0, 0.5, 1.0, 1.5, 2.0))
    neg = rep.negative_found(3.0) and rep.negative_found(-1.0)
    n = 10**6
    gaps = {
        "phi(3)": abs(asymptotic_value(SeqId.PHI, 3.0, n) + 1),
        "psi(0.5)": abs(asymptotic_value(SeqId.PSI, 0.5, n) - 0.5),
        "xi(2)": abs(asymptotic_value(SeqId.XI, 2.0, n) + 2 / 3),
    }
    limits = all(g <= 1e-3 for g in gaps.values())
    mins = {e["p"]: e["min_value"] for e in rep.entries}
    detail = (f"no negatives on [0,2]: {nonneg}; negatives at p=3,-1: {neg} "
              f"(min {mins[3.0]:.3g}, {mins[-1.0]:.3g}); limit gaps "
              + ", ".join(f"{k}={v:.1e}" for k, v in gaps.items()))
    return nonneg and neg and limits, detail


def criterion_5():
    spaces = [SpaceSpec.euclidean(d) for d in (2, 3, 4)]
    ok1, d1 = _suite([(prop, s, P(p)) for s in spaces for p in P_GRID
                      for prop in ("identitet0_zero", "zap_formula")], tol=1e-9)
    ok2, d2 = _suite([("tha_iv_identity", s, P(p)) for s in spaces for p in P_GRID], tol=1e-10)
    return ok1 and ok2, f"identity/closed form: {d1} | inversion identity: {d2}"


def criterion_6():
    linf = SpaceSpec.linf(2)
    res = search_violation(BoundId.POMOCNA, P(0.0, r=-1.0), linf)
    found = res.found and res.margin >= 0.5 - 1e-9
    mx, my = map_pomocna_witness(linf, *res.best_pair, 2.0)
    mapped = violation_margin(BoundId.HILE3, P(2.0, -2.0), linf, mx, my)

    panel = [(BoundId.HILE3, P(p, q)) for p, q in ((2.0, 1.0), (3.0, 1.0), (2.0, 0.0), (-1.0, 1.0))]
    panel += [(BoundId.SREDINE, P(2.0, r=r)) for r in (0.0, 0.5, 1.0)]
    panel += [(BoundId.PAMETNO, P(p)) for p in (1.0, 2.0)]
    panel += [(BoundId.KARAKTER, P(0.0, r=r)) for r in (0.5, 1.0)]
    verdict = classify_space(SpaceSpec.euclidean(3), SearchConfig(), panel=panel, stop_early=False)
    evals = sum(r.trace["evaluations"] for r in verdict.results)
    worst = max(r.margin for r in verdict.results)
    clean = worst <= 1e-9 and evals >= 10**5 and verdict.status == "CONSISTENT_WITH_IPS"
    detail = (f"linf:2 POMOCNA margin {res.margin:.6g} (found={res.found}); mapped HILE3(2,-2) "
              f"margin {mapped:.6g}; l2:3 panel max margin {worst:.3g} over {evals} evaluations")
    return found and mapped > 0 and clean, detail


def criterion_7():
    res = search_violation(BoundId.SREDINE, P(2.0, r=2.0), SpaceSpec.euclidean(2))
    x, y = res.best_pair
    cos = float(np.dot(x, y) / (np.linalg.norm(x) * np.linalg.norm(y)))
    ok_kv, d_kv = _suite([("kvadratik2_conditional", SpaceSpec.euclidean(d), P(p))
                          for d in (2, 3, 4) for p in P_GRID])
    detail = f"SREDINE r=2 margin {res.margin:.6g} at cos angle {cos:.6f}; KVADRATIK2 cells: {d_kv}"
    return res.found and res.margin > 1e-6 and ok_kv, detail


def criterion_8():
    cfg = SearchConfig(restarts=2, steps_per_restart=100)
    spaces = [SpaceSpec.euclidean(3), SpaceSpec.lp(2.0, 5), SpaceSpec.linf(2), SpaceSpec.lp(1.0, 3)]
    statuses = {s.to_syntax(): classify_space(s, cfg).status for s in spaces}
    allowed = {"NOT_IPS", "CONSISTENT_WITH_IPS"}
    expected = {"l2:3": "CONSISTENT_WITH_IPS", "lp:2.0:5": "CONSISTENT_WITH_IPS",
                "linf:2": "NOT_IPS", "lp:1.0:3": "NOT_IPS"}
    ok = set(statuses.values()) <= allowed and statuses == expected
    return ok, f"verdicts {statuses}; no positive certificate status exists"


CRITERIA = {
    1: ("remark fixtures MAL_LO - NEW_k", criterion_1),
    2: ("chain theorem suite", criterion_2),
    3: ("dominance suites", criterion_3),
    4: ("positivity region and asymptotics", criterion_4),
    5: ("inner-product identity suite", criterion_5),
    6: ("characterization probe", criterion_6),
    7: ("power-mean sharpness and conditional KVADRATIK2", criterion_7),
    8: ("sampling never certifies an inner product", criterion_8),
}


def _line(n):
    name, fn = CRITERIA[n]
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, f"criterion {n}: {'PASS' if ok else 'FAIL'} [{name}] {detail} ({time.perf_counter() - t0:.1f}s)"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = _line(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_line(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
