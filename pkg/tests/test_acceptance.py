"""One test per acceptance criterion; each prints a single pass/fail line.

Timing limits (< 1 s for criterion 1, < 30 s for 3, < 60 s for 5) are
recorded as claims inside the criterion and checked with everything else.
"""

import time

import pytest

from quandlecoh.reproduce import CRITERIA, run_criteria

SEED = 0


def _run(k, capsys):
    t0 = time.perf_counter()
    claims = run_criteria([k], seed=SEED)
    dt = time.perf_counter() - t0
    failed = [c for c in claims if not c.passed]
    status = "PASS" if claims and not failed else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {k}: {status} ({len(claims) - len(failed)}/{len(claims)} claims, {dt:.2f} s)")
        for c in failed:
            print("  " + c.line())
    return claims, failed


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    claims, failed = _run(k, capsys)
    assert claims
    assert not failed, "\n".join(c.line() for c in failed)
