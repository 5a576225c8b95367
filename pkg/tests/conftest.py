"""Shared fixtures: an independent J_0 zero oracle and the acceptance run cache."""
from __future__ import annotations

from pathlib import Path

import mpmath
import pytest

ROOT = Path(__file__).resolve().parents[1]
ACCEPTANCE_CONFIG = ROOT / "configs" / "acceptance.yaml"


def j0_series(x, dps=80):
    """J_0(x) by direct summation of sum (-1)^k (x/2)^(2k) / (k!)^2.

    Deliberately shares no code with the package: plain loop, fixed generous
    precision, stop once terms are below 10^-(dps+10) after the peak.
    """
    with mpmath.workdps(dps + 20):
        x = mpmath.mpf(x)
        q = -(x / 2) ** 2
        term = mpmath.mpf(1)
        total = term
        k = 0
        while True:
            k += 1
            term = term * q / (k * k)
            total += term
            if k > abs(q) and abs(term) < mpmath.mpf(10) ** (-(dps + 10)):
                return +total


def j0_zero_by_bisection(lo, hi, dps=80):
    """Bisect J_0 on [lo, hi] (opposite signs required) to ~10^-dps."""
    with mpmath.workdps(dps + 20):
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
        flo = j0_series(lo, dps)
        assert flo * j0_series(hi, dps) < 0
        while hi - lo > mpmath.mpf(10) ** (-dps):
            mid = (lo + hi) / 2
            fm = j0_series(mid, dps)
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        return (lo + hi) / 2


def product_rule(roots):
    """n -> prod (n - r) in exact arithmetic: a polynomial with the given real roots."""
    from fractions import Fraction

    def rule(n):
        v = Fraction(1)
        for r in roots:
            v *= n - r
        return v
    return rule


@pytest.fixture(scope="session")
def j0_zeros():
    """First three positive zeros of J_0 from the bisection oracle."""
    return [j0_zero_by_bisection(a, b) for a, b in ((2, 3), (5, 6), (8, 9))]


@pytest.fixture(scope="session")
def acceptance_runs():
    """(report, seconds) for every case in the bundled acceptance config, run once."""
    from lpzeros.harness.cases import timed_run
    from lpzeros.harness.sweep import load_config

    runs = {}
    for entry in load_config(ACCEPTANCE_CONFIG):
        assert entry.case is not None, entry.error
        runs[entry.case.case_id] = timed_run(entry.case)
    return runs


@pytest.fixture(scope="session")
def acceptance_reports(acceptance_runs):
    return {case_id: report for case_id, (report, _) in acceptance_runs.items()}
