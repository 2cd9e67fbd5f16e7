"""Acceptance gate: each criterion runs its verification suite under a time limit.

Run ``python3 tests/test_acceptance.py`` for a standalone report, or through pytest,
where the per-criterion lines are printed in the terminal summary.
"""

import sys
import time

import pytest

from envelope import verify

# criterion -> (short title, time limit in seconds)
LIMITS = {
    1: ("PBW straightening equals the ideal-reduction oracle", 10),
    2: ("PBW window dimensions are binomial", 1),
    3: ("Hopf axioms on degree-4 windows", 30),
    4: ("primitives of U(L) are exactly L", 30),
    5: ("U(L)J membership equals kernel of U(quotient)", 5),
    6: ("Heisenberg tower factorization and threads", 5),
    7: ("multiplicativity map bijective for heis x abelian1", 5),
    8: ("exp/log inverse, BCH coefficients, grouplike exponentials", 20),
    9: ("abelian function algebra suite", 10),
    10: ("A2 example: units, radical, morphism census", 5),
    11: ("sign mutation breaks criteria 1 and 3", 10),
}

RESULTS: dict = {}


def run_criterion(n: int):
    suite = verify.CRITERIA[n]
    t0 = time.perf_counter()
    checks = verify.run_suite(suite)
    elapsed = time.perf_counter() - t0
    failed = [c.name for c in checks if c.status != "pass"]
    title, limit = LIMITS[n]
    ok = bool(checks) and not failed and elapsed < limit
    detail = f"{len(checks)} checks, {elapsed:.2f}s (limit {limit}s)"
    if failed:
        detail += f", failed: {', '.join(failed)}"
    line = f"criterion {n:2d} [{suite}] {'PASS' if ok else 'FAIL'}: {title}; {detail}"
    RESULTS[n] = line
    return ok, failed, elapsed, limit


@pytest.mark.parametrize("n", sorted(LIMITS))
def test_criterion(n):
    ok, failed, elapsed, limit = run_criterion(n)
    print(RESULTS[n])
    assert not failed, failed
    assert elapsed < limit, f"{elapsed:.2f}s exceeds {limit}s"


if __name__ == "__main__":
    results = [run_criterion(n)[0] for n in sorted(LIMITS)]
    for n in sorted(LIMITS):
        print(RESULTS[n])
    sys.exit(0 if all(results) else 1)
