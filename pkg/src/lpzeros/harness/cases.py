"""Theorem instances: hypotheses, predicted counts, and the numeric run."""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Mapping

import mpmath

from ..catalog import (
    SeriesSpec,
    bessel_deriv_series,
    cross_product_series,
    eta_series,
    hurwitz_bessel_series,
    hyper_bessel_series,
    pfq_series,
    wright_series,
)
from ..jensen import lp_plus_certificate
from ..numerics import Precision
from ..winding import NonConvergence, ZeroOnContour, box_counts, count_in_rect, Rect

DEFAULT_R = 30.0
DEFAULT_DIGITS = 50
# Half-height of the strips used to separate real from nonreal zeros.
STRIP_DELTA = 0.05
MAX_RESIDUAL = 0.25
MIN_CLEARANCE_DIGITS = 1.0  # min |f| on the contour must exceed 10 * error bound


class Theorem(str, enum.Enum):
    HURWITZ = "Hurwitz"
    T1_REALITY = "T1_reality"
    T1_NEGBETA = "T1_negbeta"
    T2_REALITY = "T2_reality"
    T2_NEGALPHA = "T2_negalpha"
    T3_CASE1 = "T3_case1"
    T3_CASE2 = "T3_case2"
    T4_REALITY = "T4_reality"
    T4_BOUND = "T4_bound"
    T5_REALITY = "T5_reality"
    T5_BOUND = "T5_bound"
    T6_LP = "T6_lp"


class PredictionKind(str, enum.Enum):
    EXACT = "Exact"
    UPPER_BOUND = "UpperBound"
    ZERO = "Zero"


class Verdict(str, enum.Enum):
    MATCH = "Match"
    WITHIN_BOUND = "WithinBound"
    VIOLATION = "Violation"
    INCONCLUSIVE = "Inconclusive"
    REJECTED = "Rejected"


KIND = {
    Theorem.HURWITZ: PredictionKind.EXACT,
    Theorem.T1_REALITY: PredictionKind.ZERO,
    Theorem.T1_NEGBETA: PredictionKind.EXACT,
    Theorem.T2_REALITY: PredictionKind.ZERO,
    Theorem.T2_NEGALPHA: PredictionKind.EXACT,
    Theorem.T3_CASE1: PredictionKind.EXACT,
    Theorem.T3_CASE2: PredictionKind.EXACT,
    Theorem.T4_REALITY: PredictionKind.ZERO,
    Theorem.T4_BOUND: PredictionKind.UPPER_BOUND,
    Theorem.T5_REALITY: PredictionKind.ZERO,
    Theorem.T5_BOUND: PredictionKind.UPPER_BOUND,
    Theorem.T6_LP: PredictionKind.ZERO,
}

# Which census quantity the predicted number is compared against.
OBSERVABLE = {
    Theorem.HURWITZ: "nonpositive",
    Theorem.T1_REALITY: "nonpositive",
    Theorem.T1_NEGBETA: "nonpositive",
    Theorem.T2_REALITY: "nonpositive",
    Theorem.T2_NEGALPHA: "nonpositive",
    Theorem.T3_CASE1: "nonpositive",
    Theorem.T3_CASE2: "nonpositive",
    Theorem.T4_REALITY: "nonreal",
    Theorem.T4_BOUND: "nonreal",
    Theorem.T5_REALITY: "nonreal",
    Theorem.T5_BOUND: "nonreal",
    Theorem.T6_LP: "nonreal",
}


class HypothesisError(ValueError):
    """Case parameters violate the hypotheses of the theorem they target."""


@dataclass(frozen=True)
class TheoremCase:
    theorem: Theorem
    params: Mapping[str, object]
    region_radius: float = DEFAULT_R
    digits: int = DEFAULT_DIGITS
    case_id: str = ""
    allow_integer: bool = False

    @property
    def prediction_kind(self) -> PredictionKind:
        return KIND[self.theorem]

    @property
    def precision(self) -> Precision:
        return Precision(self.digits)


def _floor(x) -> int:
    return math.floor(x)


def _is_integral(x) -> bool:
    return float(x) == math.floor(float(x))


def _vector(v) -> tuple:
    return tuple(v) if isinstance(v, (list, tuple)) else (v,)


def _require(cond: bool, message: str):
    if not cond:
        raise HypothesisError(message)


def _non_integer(case: TheoremCase, name: str, values):
    if case.allow_integer:
        return
    for v in values:
        _require(not _is_integral(v), f"{name} = {v} is an integer (case boundary); "
                                      "set allow_integer to override")


def _get(case: TheoremCase, key: str):
    try:
        return case.params[key]
    except KeyError:
        raise HypothesisError(f"{case.theorem.value} needs parameter {key!r}") from None


def q_positive_zero_count(nu, n: int) -> int:
    """Positive zeros, with multiplicity, of t -> (nu+t-n+1)_n / Gamma(nu + t/2 + 1)."""
    numerator = sum(1 for k in range(1, n + 1) if k - 1 - nu > 0)
    # 1/Gamma(nu + t/2 + 1) vanishes at t = -2(1 + nu + s), s = 0, 1, ...
    gamma_part = 0
    s = 0
    while -2 * (1 + nu + s) > 0:
        gamma_part += 1
        s += 1
    return numerator + gamma_part


def predicted_count(case: TheoremCase) -> int:
    """Value of the count formula for this case (floors taken as [x])."""
    validate(case)
    th, p = case.theorem, case.params
    if th is Theorem.HURWITZ:
        return _floor(p["nu"])
    if th in (Theorem.T1_REALITY, Theorem.T2_REALITY, Theorem.T4_REALITY,
              Theorem.T5_REALITY, Theorem.T6_LP):
        return 0
    if th is Theorem.T1_NEGBETA:
        return _floor(p["beta"]) + 1
    if th is Theorem.T2_NEGALPHA:
        return sum(_floor(a) for a in _vector(p["alpha"]))
    if th in (Theorem.T3_CASE1, Theorem.T3_CASE2):
        b, n = _vector(p["b"]), _vector(p["n"])
        extra = _vector(p.get("extra_b", ()))
        tail = sum(_floor(x) for x in extra) + len(extra)
        if th is Theorem.T3_CASE1:
            return sum(_floor(x) for x in b) + len(b) + tail
        return sum(int(k) for k in n) + tail
    if th is Theorem.T4_BOUND:
        return 2 * q_positive_zero_count(p["nu"], int(p["n"]))
    if th is Theorem.T5_BOUND:
        return 4 * _floor(p["nu"])
    raise HypothesisError(f"no prediction for {th}")


def validate(case: TheoremCase) -> None:
    th, p = case.theorem, case.params
    _require(case.region_radius > 0, "region radius must be positive")
    if th is Theorem.HURWITZ:
        nu = _get(case, "nu")
        _require(nu >= 0, f"Hurwitz needs nu >= 0, got {nu}")
        _non_integer(case, "nu", [nu])
    elif th is Theorem.T1_REALITY:
        rho, beta = _get(case, "rho"), _get(case, "beta")
        _require(rho > 0 and beta > 0, f"T1_reality needs rho > 0 and beta > 0, got rho={rho}, beta={beta}")
    elif th is Theorem.T1_NEGBETA:
        rho, beta = _get(case, "rho"), _get(case, "beta")
        _require(0 < rho <= 1, f"T1_negbeta needs 0 < rho <= 1, got rho={rho}")
        _require(beta > 0, f"T1_negbeta needs beta > 0, got beta={beta}")
        _non_integer(case, "beta", [beta])
    elif th is Theorem.T2_REALITY:
        alpha = _vector(_get(case, "alpha"))
        _require(len(alpha) >= 1, "alpha must be non-empty")
        _require(all(a > -1 for a in alpha), f"T2_reality needs every alpha_i > -1, got {alpha}")
    elif th is Theorem.T2_NEGALPHA:
        alpha = _vector(_get(case, "alpha"))
        _require(len(alpha) >= 1, "alpha must be non-empty")
        _require(all(a >= 0 for a in alpha), f"T2_negalpha needs every alpha_i >= 0, got {alpha}")
        _non_integer(case, "alpha", alpha)
    elif th in (Theorem.T3_CASE1, Theorem.T3_CASE2):
        b, n = _vector(_get(case, "b")), _vector(_get(case, "n"))
        extra = _vector(p.get("extra_b", ()))
        _require(len(b) == len(n) and len(b) >= 1, "b and n must have the same positive length")
        _require(all(x > 0 for x in b + extra), f"T3 needs b > 0, got {b + extra}")
        _require(all(_is_integral(k) and k >= 1 for k in n), f"n_k must be positive integers, got {n}")
        # Negated integer b would put a pole in the denominator; never overridable.
        _require(not any(_is_integral(x) for x in b + extra), "T3 needs non-integer b")
        large = [int(k) >= _floor(x) + 1 for x, k in zip(b, n)]
        if th is Theorem.T3_CASE1:
            _require(all(large), f"T3_case1 needs n_k >= [b_k] + 1 for every k (b={b}, n={n})")
        else:
            _require(not any(large), f"T3_case2 needs n_k <= [b_k] for every k (b={b}, n={n})")
    elif th is Theorem.T4_REALITY:
        nu, n = _get(case, "nu"), _get(case, "n")
        _require(_is_integral(n) and n >= 0, f"n must be a non-negative integer, got {n}")
        _require(nu > n - 1, f"T4_reality needs nu > n - 1, got nu={nu}, n={n}")
        _non_integer(case, "nu", [nu])
    elif th is Theorem.T4_BOUND:
        nu, n = _get(case, "nu"), _get(case, "n")
        _require(_is_integral(n) and n >= 0, f"n must be a non-negative integer, got {n}")
        _non_integer(case, "nu", [nu])
    elif th is Theorem.T5_REALITY:
        nu = _get(case, "nu")
        _require(nu > -1, f"T5_reality needs nu > -1, got {nu}")
        _require(str(_get(case, "kind")).upper() in ("A", "B"), "kind must be A or B")
    elif th is Theorem.T5_BOUND:
        nu = _get(case, "nu")
        _require(nu >= 0, f"T5_bound needs nu >= 0, got {nu}")
        _require(str(_get(case, "kind")).upper() in ("A", "B"), "kind must be A or B")
        _non_integer(case, "nu", [nu])
    elif th is Theorem.T6_LP:
        s = _get(case, "s")
        _require(_is_integral(s) and s >= 0, f"s must be a non-negative integer, got {s}")
    else:  # pragma: no cover - enum is closed
        raise HypothesisError(f"unknown theorem {th}")


def build_spec(case: TheoremCase) -> SeriesSpec:
    """The series whose zeros the theorem speaks about, in the counting orientation."""
    th, p = case.theorem, case.params
    if th is Theorem.HURWITZ:
        return hurwitz_bessel_series(p["nu"])
    if th is Theorem.T1_REALITY:
        return wright_series(p["rho"], p["beta"]).reflect()
    if th is Theorem.T1_NEGBETA:
        return wright_series(p["rho"], -p["beta"]).reflect()
    if th is Theorem.T2_REALITY:
        return hyper_bessel_series(_vector(p["alpha"]))
    if th is Theorem.T2_NEGALPHA:
        return hyper_bessel_series(tuple(-a for a in _vector(p["alpha"])))
    if th in (Theorem.T3_CASE1, Theorem.T3_CASE2):
        b, n = _vector(p["b"]), _vector(p["n"])
        extra = _vector(p.get("extra_b", ()))
        # Negating b moves the zeros of the gamma quotient to b_k - s + 1, so the
        # reindexed numerator parameters are -b_k + n_k.
        a = tuple(-x + int(k) for x, k in zip(b, n))
        return pfq_series(a, tuple(-x for x in b + extra)).reflect()
    if th in (Theorem.T4_REALITY, Theorem.T4_BOUND):
        return bessel_deriv_series(p["nu"], int(p["n"])).with_power_step(2)
    if th is Theorem.T5_REALITY:
        return cross_product_series(p["nu"], str(p["kind"]))
    if th is Theorem.T5_BOUND:
        return cross_product_series(-p["nu"], str(p["kind"]))
    if th is Theorem.T6_LP:
        return eta_series(int(p["s"]))
    raise HypothesisError(f"no series for {th}")


@dataclass
class CaseReport:
    case: TheoremCase
    predicted: int | None
    observed_total_in_box: int | None = None
    observed_positive_real: int | None = None
    observed_real_nonpositive: int | None = None
    observed_nonreal: int | None = None
    verdict: Verdict = Verdict.INCONCLUSIVE
    claims: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def observed_nonpositive(self) -> int | None:
        if self.observed_total_in_box is None:
            return None
        return self.observed_total_in_box - self.observed_positive_real

    def observed(self, name: str) -> int | None:
        return {"nonpositive": self.observed_nonpositive, "nonreal": self.observed_nonreal,
                "total": self.observed_total_in_box,
                "positive_real": self.observed_positive_real}[name]

    @property
    def primary_observed(self) -> int | None:
        return self.observed(OBSERVABLE[self.case.theorem])


def _fmt(x) -> str:
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 30)
    if isinstance(x, float):
        return "inf" if math.isinf(x) else f"{x:.6e}"
    return str(x)


def _census(spec: SeriesSpec, R: float, prec: Precision) -> dict:
    counts = box_counts(spec, R, prec)
    R_used = counts.R
    upper = count_in_rect(spec, Rect(-R_used, R_used, STRIP_DELTA, R_used), prec)
    strip = count_in_rect(spec, Rect(STRIP_DELTA, R_used, -STRIP_DELTA, STRIP_DELTA), prec)
    return {"counts": counts, "upper": upper, "strip": strip}


def _consistency(census: dict) -> list[str]:
    counts, upper, strip = census["counts"], census["upper"], census["strip"]
    problems = []
    for name, w in (("box", counts.box), ("upper", upper), ("strip", strip)):
        if w.residual >= MAX_RESIDUAL:
            problems.append(f"{name} residual {w.residual:.3f} >= {MAX_RESIDUAL}")
        if w.min_clearance <= MIN_CLEARANCE_DIGITS:
            problems.append(f"{name} contour passes within 10x the error bound of a zero")
    if 2 * upper.count != counts.nonreal:
        problems.append(f"conjugate pairing: 2*upper={2 * upper.count} != nonreal={counts.nonreal}")
    if strip.count != counts.positive_real:
        problems.append(f"count consistency: strip={strip.count} != positive real={counts.positive_real}")
    return problems


def _census_diagnostics(prefix: str, census: dict) -> dict:
    counts = census["counts"]
    return {
        f"{prefix}R_used": _fmt(float(counts.R)),
        f"{prefix}box_residual": _fmt(counts.box.residual),
        f"{prefix}box_segments": str(counts.box.segments),
        f"{prefix}box_min_clearance_digits": _fmt(counts.box.min_clearance),
        f"{prefix}upper_half_count": str(census["upper"].count),
        f"{prefix}upper_half_residual": _fmt(census["upper"].residual),
        f"{prefix}positive_strip_count": str(census["strip"].count),
        f"{prefix}positive_strip_residual": _fmt(census["strip"].residual),
    }


def run_case(case: TheoremCase, prec: Precision | None = None) -> CaseReport:
    """Run the numeric pipeline for one case and judge it against the prediction."""
    prec = prec or case.precision
    try:
        predicted = predicted_count(case)
    except (HypothesisError, ValueError) as exc:
        return CaseReport(case, None, verdict=Verdict.REJECTED, error=str(exc))

    report = CaseReport(case, predicted)
    report.diagnostics["digits"] = str(prec.decimal_digits)
    report.diagnostics["R"] = _fmt(float(case.region_radius))
    try:
        spec = build_spec(case)
        census = _census(spec, case.region_radius, prec)
    except (ZeroOnContour, NonConvergence, RuntimeError) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
        report.verdict = Verdict.INCONCLUSIVE
        return report

    counts = census["counts"]
    report.observed_total_in_box = counts.total
    report.observed_positive_real = counts.positive_real
    report.observed_real_nonpositive = counts.real_nonpositive
    report.observed_nonreal = counts.nonreal
    report.diagnostics.update(_census_diagnostics("", census))
    problems = _consistency(census)

    th = case.theorem
    observed = report.primary_observed
    kind = case.prediction_kind
    if kind is PredictionKind.UPPER_BOUND:
        report.claims[f"{OBSERVABLE[th]} <= {predicted}"] = observed <= predicted
    else:
        report.claims[f"{OBSERVABLE[th]} == {predicted}"] = observed == predicted
    if th in (Theorem.T1_REALITY, Theorem.T2_REALITY):
        report.claims["nonreal == 0"] = counts.nonreal == 0
    if th is Theorem.T5_REALITY:
        # The same coefficients as a series in w = z^2: zeros real and positive.
        try:
            w_census = _census(spec.with_power_step(1), case.region_radius, prec)
        except (ZeroOnContour, NonConvergence, RuntimeError) as exc:
            report.error = f"{type(exc).__name__} (w-variable): {exc}"
            report.verdict = Verdict.INCONCLUSIVE
            return report
        w_counts = w_census["counts"]
        report.diagnostics.update(_census_diagnostics("w_", w_census))
        report.diagnostics["w_nonpositive"] = str(w_counts.nonpositive)
        report.claims["w-variable nonpositive == 0"] = w_counts.nonpositive == 0
        problems += [f"w-variable: {msg}" for msg in _consistency(w_census)]
    if th is Theorem.T6_LP:
        n_max = int(case.params.get("n_max", 20))
        cert = lp_plus_certificate(spec, n_max)
        report.claims["positive_real == 0"] = counts.positive_real == 0
        report.claims[f"Jensen g_1..g_{n_max} real-rooted"] = cert.all_real_rooted
        report.claims["gamma_k >= 0"] = cert.nonnegative_coefficients
        report.diagnostics["jensen_witness"] = str(cert.witness)
        report.diagnostics["jensen_sign_pattern"] = cert.sign_pattern.value

    if problems:
        report.diagnostics["consistency"] = "; ".join(problems)
        report.verdict = Verdict.INCONCLUSIVE
    elif not all(report.claims.values()):
        report.verdict = Verdict.VIOLATION
    elif kind is PredictionKind.UPPER_BOUND:
        report.verdict = Verdict.WITHIN_BOUND
    else:
        report.verdict = Verdict.MATCH
    return report


def timed_run(case: TheoremCase, prec: Precision | None = None) -> tuple[CaseReport, float]:
    start = time.perf_counter()
    report = run_case(case, prec)
    return report, time.perf_counter() - start
