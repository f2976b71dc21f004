"""Acceptance criteria A1-A10 at full sample sizes.

Run under pytest (one PASS/FAIL line per criterion in the summary) or
directly with ``python3 tests/test_acceptance.py``.
"""
import time

import pytest

from consheaf import verify

SEED = 0

# criterion -> (checks, time limit in seconds or None)
CRITERIA = {
    "A1": ([verify.gabriel_roundtrip], 60),
    "A2": ([verify.hom_table], None),
    "A3": ([verify.energy_laws], None),
    "A4": ([verify.projector_laws], None),
    "A5": ([verify.geodesic_germs], 30),
    "A6": ([lambda samples=None, seed=None: verify.geodesic_triangle()], None),
    "A7": ([verify.square_kernel, verify.kinf_lines], 300),
    "A8": ([verify.circle_roundtrip, verify.circle_endomorphisms], None),
    "A9": ([verify.orbit_category], None),
    "A10": ([verify.microsupport_coherence], None),
}

RESULTS = {}


def evaluate(name):
    checks, limit = CRITERIA[name]
    t0 = time.perf_counter()
    ok, details = True, []
    for fn in checks:
        passed, detail = fn(seed=SEED)
        ok &= bool(passed)
        details.append(detail)
    elapsed = time.perf_counter() - t0
    if limit is not None and elapsed >= limit:
        ok = False
        details.append(f"took {elapsed:.1f}s, limit {limit}s")
    line = f"{name:<4} {'PASS' if ok else 'FAIL'}  {elapsed:7.2f}s  {'; '.join(details)}"
    RESULTS[name] = line
    return ok, line


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    ok, line = evaluate(name)
    assert ok, line


if __name__ == "__main__":
    import sys

    bad = 0
    for name in CRITERIA:
        ok, line = evaluate(name)
        print(line, flush=True)
        bad += not ok
    sys.exit(1 if bad else 0)
