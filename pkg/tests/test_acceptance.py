"""The ten acceptance criteria, one test each, each printing a PASS/FAIL line.

Criteria 1-7 read the reports of configs/acceptance.yaml (run once per
session).  A failing criterion is reported as found; nothing is relaxed.
"""
import math
import random
import time
from fractions import Fraction

import mpmath

from conftest import product_rule
from lpzeros.catalog import eta_series, hurwitz_bessel_series
from lpzeros.evaluator import evaluate
from lpzeros.harness.cases import Verdict, build_spec
from lpzeros.jensen import (
    ExactPoly,
    laguerre_transform,
    lp_plus_certificate,
    obreschkoff_transform,
    squarefree,
    sturm_count,
)
from lpzeros.numerics import Precision
from lpzeros.realroots import real_zeros_in
from lpzeros.winding import Rect, box_counts, count_in_rect

ACCEPTANCE_RESIDUAL = 0.05
CORPUS_SIZE = 100


def announce(capsys, number, failures, summary):
    line = f"criterion {number:>2}: {'PASS' if not failures else 'FAIL'}  {summary}"
    if failures:
        line += "\n    " + "\n    ".join(failures)
    with capsys.disabled():
        print("\n" + line)
    assert not failures, "; ".join(failures)


def check_reports(reports, ids, expected_verdict, observable, expected=None):
    """Problems with the named reports; expected=None means compare with the prediction."""
    failures = []
    for case_id in ids:
        r = reports[case_id]
        observed = r.observed(observable) if r.observed_total_in_box is not None else None
        target = r.predicted if expected is None else expected
        if r.verdict is not expected_verdict:
            failures.append(f"{case_id}: verdict {r.verdict.value}, predicted {r.predicted}, "
                            f"observed {observable} {observed} {r.error or r.diagnostics.get('consistency', '')}")
        elif expected_verdict is Verdict.MATCH and observed != target:
            failures.append(f"{case_id}: {observable} {observed} != {target}")
        residual = r.diagnostics.get("box_residual")
        if residual is not None and float(residual) >= ACCEPTANCE_RESIDUAL:
            failures.append(f"{case_id}: box residual {residual} >= {ACCEPTANCE_RESIDUAL}")
    return failures


def ids_with(reports, prefix):
    return [k for k in reports if k.startswith(prefix)]


def test_criterion_01_hurwitz(acceptance_runs, acceptance_reports, capsys):
    ids = ids_with(acceptance_reports, "hurwitz-")
    failures = check_reports(acceptance_reports, ids, Verdict.MATCH, "nonpositive")
    for case_id in ids:
        seconds = acceptance_runs[case_id][1]
        if seconds >= 60:
            failures.append(f"{case_id}: {seconds:.1f} s >= 60 s")
    observed = [acceptance_reports[i].observed_nonpositive for i in ids]
    announce(capsys, 1, failures, f"Hurwitz nonpositive counts {observed} for nu = 0.5, 1.5, 2.5, 3.7")


def test_criterion_02_wright_reality(acceptance_reports, capsys):
    ids = ids_with(acceptance_reports, "t1-reality-")
    failures = check_reports(acceptance_reports, ids, Verdict.MATCH, "nonpositive", 0)
    failures += [f"{i}: nonreal {acceptance_reports[i].observed_nonreal}"
                 for i in ids if acceptance_reports[i].observed_nonreal != 0]
    announce(capsys, 2, failures, f"{len(ids)} Wright cases with no nonreal and no nonpositive zeros")


def test_criterion_03_wright_negative_beta(acceptance_reports, capsys):
    ids = ids_with(acceptance_reports, "t1-negbeta-")
    failures = check_reports(acceptance_reports, ids, Verdict.MATCH, "nonpositive")
    observed = [acceptance_reports[i].observed_nonpositive for i in ids]
    announce(capsys, 3, failures, f"nonpositive counts {observed} (expected [1, 2, 4, 1, 2, 4])")


def test_criterion_04_hyper_bessel(acceptance_reports, capsys):
    failures = check_reports(acceptance_reports, ["t2-reality-a0.5-1.2"], Verdict.MATCH, "nonreal", 0)
    failures += check_reports(acceptance_reports, ["t2-negalpha-a0.5-1.2"], Verdict.MATCH, "nonpositive", 1)
    failures += check_reports(acceptance_reports, ["t2-negalpha-a2.3-0.4-1.6"], Verdict.MATCH, "nonpositive", 3)
    announce(capsys, 4, failures, "hyper-Bessel reality and nonpositive counts 1 and 3")


def test_criterion_05_hypergeometric(acceptance_reports, capsys):
    failures = check_reports(acceptance_reports, ["t3-case1-b1.4-n3", "t3-case2-b3.6-n2"],
                             Verdict.MATCH, "nonpositive", 2)
    announce(capsys, 5, failures, "1F1 nonpositive counts 2 and 2")


def test_criterion_06_bessel_derivatives(acceptance_reports, capsys):
    failures = check_reports(acceptance_reports, ["t4-reality-nu3.2-n1", "t4-reality-nu3.2-n2"],
                             Verdict.MATCH, "nonreal", 0)
    failures += check_reports(acceptance_reports, ["t4-bound-nu0.5-n2"], Verdict.WITHIN_BOUND, "nonreal")
    bound = acceptance_reports["t4-bound-nu0.5-n2"]
    announce(capsys, 6, failures, f"derivative reality; nu=0.5, n=2: {bound.observed_nonreal} nonreal <= {bound.predicted}")


def test_criterion_07_cross_products(acceptance_reports, capsys):
    reality = ids_with(acceptance_reports, "t5-reality-")
    bounds = ids_with(acceptance_reports, "t5-bound-")
    failures = check_reports(acceptance_reports, reality, Verdict.MATCH, "nonreal", 0)
    failures += check_reports(acceptance_reports, bounds, Verdict.WITHIN_BOUND, "nonreal")
    observed = [acceptance_reports[i].observed_nonreal for i in bounds]
    announce(capsys, 7, failures, f"{len(reality)} reality cases; nu=1.3 nonreal counts {observed} <= 4")


def test_criterion_08_eta_certificates(acceptance_reports, capsys):
    start = time.perf_counter()
    certs = [lp_plus_certificate(eta_series(s), 20) for s in range(4)]
    seconds = time.perf_counter() - start
    failures = [f"s={s}: all_real_rooted={c.all_real_rooted}, gamma>=0={c.nonnegative_coefficients}"
                for s, c in enumerate(certs) if not (c.all_real_rooted and c.nonnegative_coefficients)]
    if seconds >= 120:
        failures.append(f"{seconds:.1f} s >= 120 s")
    failures += check_reports(acceptance_reports, ids_with(acceptance_reports, "t6-"), Verdict.MATCH, "nonreal", 0)
    announce(capsys, 8, failures, f"eta_0..eta_3 Jensen g_1..g_20 real-rooted in {seconds:.2f} s")


def test_criterion_09_j0_oracle(j0_zeros, capsys):
    zeros = real_zeros_in(hurwitz_bessel_series(0), (0, 20), prec=Precision(50))
    failures = []
    if len(zeros) != 3:
        failures.append(f"found {len(zeros)} zeros in (0, 20], expected 3")
    worst = 0
    with mpmath.workdps(80):
        for z, j in zip(zeros, j0_zeros):
            err = abs(z.location - j ** 2 / 4)
            worst = max(worst, err)
            if err >= mpmath.mpf(10) ** -25:
                failures.append(f"zero {mpmath.nstr(z.location, 30)}: error {mpmath.nstr(err, 3)}")
    announce(capsys, 9, failures, f"first three J0 zeros within {mpmath.nstr(worst, 3)} of the oracle")


def laguerre_polynomial_part(phi, degree):
    """T with sum phi(n) z^n / n! = T(z) e^z: T_k = (forward difference)^k phi(0) / k!."""
    return ExactPoly([sum((-1) ** (k - j) * math.comb(k, j) * phi(j) for j in range(k + 1)) / math.factorial(k)
                      for k in range(degree + 1)])


def _negative_roots(rng):
    return [-Fraction(rng.randint(1, 50), rng.randint(1, 10)) for _ in range(rng.randint(1, 6))]


def _real_roots(rng):
    return [Fraction(rng.choice([-1, 1]) * rng.randint(1, 40), rng.randint(1, 10)) for _ in range(rng.randint(1, 6))]


def _property_suite(reports):
    """Every problem found; an empty list means zero violations."""
    problems = []
    prec = Precision(30)

    # Conjugate pairing and count consistency were checked inside each run.
    for case_id, r in reports.items():
        if "consistency" in r.diagnostics:
            problems.append(f"{case_id}: {r.diagnostics['consistency']}")
        if r.observed_total_in_box is not None:
            if 2 * int(r.diagnostics["upper_half_count"]) != r.observed_nonreal:
                problems.append(f"{case_id}: conjugate pairing")
            if int(r.diagnostics["positive_strip_count"]) != r.observed_positive_real:
                problems.append(f"{case_id}: strip count != positive real count")
            parts = r.observed_real_nonpositive + r.observed_nonreal + r.observed_positive_real
            if parts != r.observed_total_in_box:
                problems.append(f"{case_id}: census parts {parts} != total {r.observed_total_in_box}")

    # Rect additivity across a vertical cut, on a spread of acceptance series.
    for case_id in ("hurwitz-nu2.5", "t1-negbeta-rho1-beta3.4", "t4-bound-nu0.5-n2", "t5-bound-A-nu1.3"):
        spec = build_spec(reports[case_id].case)
        whole = count_in_rect(spec, Rect.box(30), prec)
        left = count_in_rect(spec, Rect(-30, 3.1, -30, 30), prec)
        right = count_in_rect(spec, Rect(left.rect.re_hi, 30, -30, 30), prec)
        if whole.rect == Rect.box(30) and left.count + right.count != whole.count:
            problems.append(f"{case_id}: additivity {left.count} + {right.count} != {whole.count}")

    # Tail-bound honesty: 20 further terms never exceed the certified tail.
    rng = random.Random(7)
    for case_id in ("hurwitz-nu3.7", "t2-negalpha-a2.3-0.4-1.6", "t4-reality-nu3.2-n2", "t5-reality-B-nu1.5"):
        spec = build_spec(reports[case_id].case)
        for _ in range(5):
            z = mpmath.mpc(rng.uniform(-30, 30), rng.uniform(-30, 30))
            res = evaluate(spec, z, Precision(50))
            with mpmath.workdps(200):
                w = z ** spec.power_step
                extra = sum(spec.coefficient(n, 200) * w ** n
                            for n in range(res.terms_used, res.terms_used + 20))
            if abs(extra) > res.tail_bound:
                problems.append(f"{case_id}: tail {mpmath.nstr(abs(extra), 3)} > bound at {z}")

    # Transform corpora with exact polynomial inputs of degree <= 6.
    rng = random.Random(2024)
    for _ in range(CORPUS_SIZE):
        roots = _negative_roots(rng)
        phi = product_rule(roots)
        c = box_counts(laguerre_transform(phi), 30, prec)
        # Roots far out on the negative axis can push zeros of T past the box;
        # count the exact polynomial part's roots inside it instead.
        T = laguerre_polynomial_part(phi, len(roots))
        inside = sturm_count(squarefree(T), (Fraction(-c.R), Fraction(c.R)))
        if (c.total, c.nonreal, c.positive_real) != (inside, 0, 0):
            problems.append(f"Laguerre {roots}: total {c.total} (T has {inside} in box), "
                            f"nonreal {c.nonreal}, positive {c.positive_real}")
    for _ in range(CORPUS_SIZE):
        roots = _real_roots(rng)
        s = sum(1 for r in roots if r > 0)
        spec, bound = obreschkoff_transform(product_rule(roots), s)
        c = box_counts(spec, 8, prec)
        if c.total != 2 * len(roots) or c.nonreal > bound:
            problems.append(f"Obreschkoff {roots}: total {c.total}, nonreal {c.nonreal} > {bound}")
    return problems


def test_criterion_10_property_suites(acceptance_reports, capsys):
    failures = _property_suite(acceptance_reports)
    announce(capsys, 10, failures,
             f"pairing, additivity, consistency, tail honesty, {CORPUS_SIZE}+{CORPUS_SIZE} transform instances")


def test_verdicts_stable_under_larger_region(acceptance_reports):
    # A Match at R must not turn into a Violation at 1.5 R.
    from dataclasses import replace
    from lpzeros.harness import run_case

    changed = []
    for case_id, r in acceptance_reports.items():
        if r.verdict is not Verdict.MATCH or r.case.prediction_kind.value != "Exact":
            continue
        wider = run_case(replace(r.case, region_radius=1.5 * r.case.region_radius))
        if wider.verdict is Verdict.VIOLATION:
            changed.append(f"{case_id}: {wider.primary_observed} != {wider.predicted} at R = {1.5 * r.case.region_radius}")
    assert not changed, changed
