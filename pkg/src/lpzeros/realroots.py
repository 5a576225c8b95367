"""Real zeros on an interval: adaptive sign-change scan plus bracketed refinement."""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .catalog import SeriesSpec
from .evaluator import EvalResult, evaluate_derivative, evaluate_resolved
from .numerics import Precision, resolve

# Grid steps never drop below initial_step / 2**MAX_HALVINGS.
MAX_HALVINGS = 12
MAGNITUDE_JUMP = 8


class CertificationError(RuntimeError):
    """Tail/rounding bounds swallow the function values needed for a sign decision."""


@dataclass(frozen=True)
class RealZero:
    location: mpmath.mpf
    half_width: mpmath.mpf
    sign_change: bool = True


@dataclass
class _Sample:
    x: mpmath.mpf
    result: EvalResult

    @property
    def sign(self) -> int:
        return self.result.certified_sign

    @property
    def magnitude(self):
        return abs(self.result.value.real)


def default_step(spec: SeriesSpec, prec: Precision | None = None) -> float:
    """A quarter of the ratio of the first two non-zero coefficients, capped at 1/4."""
    dps = resolve(prec).working_digits
    nonzero = []
    for n in range(64):
        c = spec.coefficient(n, dps)
        if c:
            nonzero.append((n, c))
            if len(nonzero) == 2:
                break
    if len(nonzero) < 2:
        return 0.25
    (n0, c0), (n1, c1) = nonzero
    gap = (n1 - n0) * spec.power_step
    with mp.workdps(dps):
        scale = float(abs(c0 / c1) ** (mp.one / gap))
    return min(0.25, max(scale / 4, 1e-3))


def _sample(spec, x, prec) -> _Sample:
    with mp.workdps(resolve(prec).working_digits):
        x = mp.mpf(x)
    return _Sample(x, evaluate_resolved(spec, x, prec))


def scan_brackets(spec: SeriesSpec, interval, initial_step=None,
                  prec: Precision | None = None) -> list[tuple]:
    """Disjoint brackets (lo, hi) with certified opposite signs at the ends.

    The step halves whenever consecutive |f| differ by more than a factor 8 or
    a sample's sign is not certified.  Local minima of |f| without a sign
    change are examined for a hidden pair of zeros.
    """
    brackets, _ = _scan(spec, interval, initial_step, prec)
    return brackets


def _scan(spec, interval, initial_step, prec):
    prec = resolve(prec)
    lo, hi = interval
    with mp.workdps(prec.working_digits):
        lo, hi = mp.mpf(lo), mp.mpf(hi)
    if not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    h0 = mp.mpf(initial_step if initial_step is not None else default_step(spec, prec))
    h_min = h0 / 2 ** MAX_HALVINGS

    samples = [_sample(spec, lo, prec)]
    h = h0
    while samples[-1].x < hi:
        cur = samples[-1]
        step = min(h, hi - cur.x)
        while True:
            nxt = _sample(spec, cur.x + step, prec)
            if step / 2 < h_min:
                break
            a, b = cur.magnitude, nxt.magnitude
            jump = (a > MAGNITUDE_JUMP * b or b > MAGNITUDE_JUMP * a)
            if jump or nxt.sign == 0:
                step /= 2
                continue
            break
        samples.append(nxt)
        h = min(h0, 2 * step)

    brackets = []
    touches = []
    last_signed = None
    for i, s in enumerate(samples):
        if s.sign == 0:
            continue
        if last_signed is not None and s.sign != last_signed.sign:
            brackets.append((last_signed.x, s.x))
        last_signed = s

    # Interior minima of |f| with no sign change: two close zeros or a touch.
    for i in range(1, len(samples) - 1):
        a, m, b = samples[i - 1], samples[i], samples[i + 1]
        if not (m.magnitude < a.magnitude and m.magnitude < b.magnitude):
            continue
        if a.sign == 0 or b.sign == 0 or a.sign != b.sign or m.sign not in (0, a.sign):
            continue
        found = _inspect_minimum(spec, a, b, prec)
        if found is None:
            continue
        kind, payload = found
        if kind == "pair":
            brackets.extend(payload)
        else:
            touches.append(payload)
    brackets.sort(key=lambda br: br[0])
    return _disjoint(brackets), touches


def _disjoint(brackets):
    out = []
    for br in brackets:
        if out and br[0] < out[-1][1]:
            continue
        out.append(br)
    return out


def _inspect_minimum(spec, a: _Sample, b: _Sample, prec):
    """Locate the critical point between a and b by bisection on f'."""
    dps = prec.working_digits

    def dsign(x):
        return mpmath.sign(evaluate_derivative(spec, x, 1, prec).value.real)

    lo, hi = a.x, b.x
    slo, shi = dsign(lo), dsign(hi)
    if slo == shi or slo == 0 or shi == 0:
        return None
    with mp.workdps(dps):
        # Same enclosure width that refine() delivers for simple zeros.
        width_goal = 2 * mp.mpf(10) ** (-(prec.decimal_digits // 2)) * max(1, abs(lo), abs(hi))
        while hi - lo > width_goal:
            mid = (lo + hi) / 2
            sm = dsign(mid)
            if sm == 0:
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        c = (lo + hi) / 2
    mid = _sample(spec, c, prec)
    if mid.sign != 0 and mid.sign != a.sign:
        return "pair", [(a.x, mid.x), (mid.x, b.x)]
    # A double zero anywhere in [lo, hi] leaves at most |f''| (hi-lo)^2 / 2 at c.
    with mp.workdps(dps):
        curvature = abs(evaluate_derivative(spec, c, 2, prec).value)
        slack = 4 * mid.result.error_bound + curvature * (hi - lo) ** 2
    if mid.magnitude <= slack:
        return "touch", RealZero(c, (hi - lo) / 2, sign_change=False)
    return None


def refine(spec: SeriesSpec, bracket, tol=None, prec: Precision | None = None) -> RealZero:
    """Shrink a sign-change bracket to half-width <= tol (Illinois steps, bisection safeguard)."""
    prec = resolve(prec)
    dps = prec.working_digits
    with mp.workdps(dps):
        tol = mp.mpf(10) ** (-(prec.decimal_digits // 2)) if tol is None else mp.mpf(tol)
        a, b = mp.mpf(bracket[0]), mp.mpf(bracket[1])
        if b - a <= 2 * tol:
            return RealZero((a + b) / 2, (b - a) / 2)
        fa, fb = _sample(spec, a, prec), _sample(spec, b, prec)
        if fa.sign == 0 or fb.sign == 0 or fa.sign == fb.sign:
            raise CertificationError(f"bracket [{mpmath.nstr(a, 12)}, {mpmath.nstr(b, 12)}] "
                                     "lacks certified opposite signs")
        ya, yb = fa.result.value.real, fb.result.value.real
        sa = fa.sign
        side = 0
        prev_x = None
        while b - a > 2 * tol:
            width = b - a
            x = b - yb * (b - a) / (yb - ya)
            if not a < x < b:
                x = (a + b) / 2
            converged = prev_x is not None and abs(x - prev_x) < tol
            prev_x = x
            if converged:
                # Try to close the enclosure around the secant estimate directly.
                left, right = _sample(spec, x - tol / 2, prec), _sample(spec, x + tol / 2, prec)
                if left.sign == sa and right.sign == -sa:
                    a, b = left.x, right.x
                    break
            s = _sample(spec, x, prec)
            if s.sign == 0:
                left, right = _sample(spec, x - tol / 2, prec), _sample(spec, x + tol / 2, prec)
                if left.sign == sa and right.sign == -sa:
                    a, b = left.x, right.x
                    break
                raise CertificationError(f"sign undecidable near {mpmath.nstr(x, 20)}")
            y = s.result.value.real
            if s.sign == sa:
                a, ya = x, y
                if side == -1:
                    yb /= 2
                side = -1
            else:
                b, yb = x, y
                if side == 1:
                    ya /= 2
                side = 1
            if b - a > width / 2:
                # Secant stalled on one side; force a bisection step.
                m = (a + b) / 2
                sm = _sample(spec, m, prec)
                if sm.sign == 0:
                    continue
                if sm.sign == sa:
                    a, ya = m, sm.result.value.real
                else:
                    b, yb = m, sm.result.value.real
        return RealZero((a + b) / 2, (b - a) / 2)


def real_zeros_in(spec: SeriesSpec, interval, tol=None, prec: Precision | None = None,
                  initial_step=None) -> list[RealZero]:
    """All zeros found in [lo, hi], sorted; touches carry sign_change=False."""
    brackets, touches = _scan(spec, interval, initial_step, prec)
    zeros = [refine(spec, br, tol, prec) for br in brackets] + touches
    zeros.sort(key=lambda z: z.location)
    return zeros


def positive_real_count(spec: SeriesSpec, R, tol=None, prec: Precision | None = None) -> int:
    """Number of zeros found in (0, R]."""
    if R <= 0:
        raise ValueError("R must be positive")
    return sum(1 for z in real_zeros_in(spec, (0, R), tol, prec) if z.location > 0)
