"""One pass/fail line per acceptance criterion, each under its time limit.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

import subprocess
import sys
import time

import pytest

from spancalc import selftest

LIMITS = {1: 1.0, 2: 5.0, 3: 60.0, 4: 60.0, 5: 120.0, 6: 120.0}
SEED = 0


def report(n, ok, seconds, detail=""):
    status = "PASS" if ok else "FAIL"
    line = f"criterion {n} [{status}] {seconds:.2f}s"
    if detail:
        line += f" {detail}"
    print(line)


@pytest.mark.parametrize("n", sorted(LIMITS))
def test_criterion(n):
    start = time.perf_counter()
    outcome = selftest.CRITERIA[n](SEED)
    elapsed = time.perf_counter() - start
    ok = outcome.passed and elapsed < LIMITS[n]
    report(n, ok, elapsed, f"{selftest.TITLES[n]}: {outcome.checks} checks, limit {LIMITS[n]:.0f}s")
    assert outcome.passed, outcome.failures
    assert elapsed < LIMITS[n], f"took {elapsed:.2f}s, limit {LIMITS[n]}s"


def test_criterion_7_determinism():
    cmd = [sys.executable, "-m", "spancalc", "--command", "selftest", "--seed", "5"]
    start = time.perf_counter()
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    elapsed = time.perf_counter() - start
    ok = first.returncode == second.returncode == 0 and first.stdout == second.stdout and first.stdout
    report(7, bool(ok), elapsed, f"byte-identical selftest reports ({len(first.stdout)} bytes)")
    assert first.returncode == 0, first.stdout.decode()
    assert first.stdout == second.stdout
