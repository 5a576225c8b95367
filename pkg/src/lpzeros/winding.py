"""Zero counting in rectangles by the argument principle.

The boundary is walked counter-clockwise.  A segment is accepted once the
principal argument increment across it is below pi/2 and the trapezoid rule
for the integral of f'/f agrees with the exact log increment; otherwise it is
bisected.  The count comes from the argument increments, the residual from
the trapezoid sum, so the two are independent routes to the same integer.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import mpmath
from mpmath import mp

from .catalog import SeriesSpec
from .evaluator import evaluate_resolved
from .numerics import Precision, resolve
from .realroots import positive_real_count, real_zeros_in

MAX_SEGMENTS = 200_000
INITIAL_PER_EDGE = 16
# Total trapezoid mismatch budget, in turns, shared over the perimeter.
RESIDUAL_BUDGET = 0.02
RETRIES = 5
ENLARGE = 1e-3
# A node whose Newton step |f/f'| is below this fraction of the perimeter is
# treated as lying on a zero.  Closer zeros make the trapezoid test subdivide
# without end, while the ENLARGE retry moves the contour far past them.
NEAR_ZERO = 1e-6


class ZeroOnContour(RuntimeError):
    """A zero sits on (or numerically indistinguishably close to) the contour."""


class NonConvergence(RuntimeError):
    """Contour subdivision exceeded MAX_SEGMENTS."""


@dataclass(frozen=True)
class Rect:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise ValueError(f"degenerate rectangle {self}")

    @classmethod
    def box(cls, R) -> "Rect":
        return cls(-R, R, -R, R)

    def corners(self):
        return [complex(self.re_lo, self.im_lo), complex(self.re_hi, self.im_lo),
                complex(self.re_hi, self.im_hi), complex(self.re_lo, self.im_hi)]

    def perimeter(self) -> float:
        return 2 * ((self.re_hi - self.re_lo) + (self.im_hi - self.im_lo))

    def scaled(self, factor: float) -> "Rect":
        """Scale about the centre, so every edge moves (edges on an axis too)."""
        cr, ci = (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2
        hr, hi = (self.re_hi - self.re_lo) / 2 * factor, (self.im_hi - self.im_lo) / 2 * factor
        return Rect(cr - hr, cr + hr, ci - hi, ci + hi)


@dataclass(frozen=True)
class WindingResult:
    count: int
    residual: float
    segments: int
    rect: Rect | None = None
    min_clearance: float = math.inf


class _Contour:
    """Cached f and f'/f on boundary nodes."""

    def __init__(self, spec: SeriesSpec, prec: Precision, near: float = 0.0):
        self.spec = spec
        self.prec = prec
        self.near = near
        self.cache = {}
        self.min_clearance = math.inf

    def at(self, z: complex):
        try:
            return self.cache[z]
        except KeyError:
            pass
        f, df = evaluate_resolved(self.spec, mp.mpc(z.real, z.imag), self.prec, with_derivative=True)
        err = f.error_bound
        mag = abs(f.value)
        if mag <= 2 * err:
            raise ZeroOnContour(f"|f| <= 2*error bound at {z}")
        with mp.workdps(30):
            clearance = float(mpmath.log10(mag / err)) if err else math.inf
            g = complex(df.value / f.value)
            logmag = float(mp.log(mag))
            phase = float(mp.arg(f.value))
        if abs(g) * self.near > 1:
            raise ZeroOnContour(f"Newton step {1 / abs(g):.2e} at {z}: a zero is on the contour")
        self.min_clearance = min(self.min_clearance, clearance)
        entry = (logmag, phase, g)
        self.cache[z] = entry
        return entry


def _wrap(theta: float) -> float:
    return (theta + math.pi) % (2 * math.pi) - math.pi


def contour_winding(spec: SeriesSpec, rect: Rect, prec: Precision | None = None) -> WindingResult:
    """Winding number of f around 0 along the boundary of rect."""
    prec = resolve(prec)
    perimeter = rect.perimeter()
    contour = _Contour(spec, prec, NEAR_ZERO * perimeter)
    min_len = perimeter * 1e-13
    corners = rect.corners()

    stack = []
    for k in range(4):
        za, zb = corners[k], corners[(k + 1) % 4]
        pts = [za + (zb - za) * j / INITIAL_PER_EDGE for j in range(INITIAL_PER_EDGE + 1)]
        pts[-1] = zb
        stack.extend((pts[j], pts[j + 1]) for j in range(INITIAL_PER_EDGE))
    # Process in contour order: reverse so that pop() yields the first segment.
    stack.reverse()

    total_arg = 0.0
    total_trap = 0j
    segments = 0
    while stack:
        za, zb = stack.pop()
        la, pa, ga = contour.at(za)
        lb, pb, gb = contour.at(zb)
        dtheta = _wrap(pb - pa)
        dlog = complex(lb - la, dtheta)
        trap = (zb - za) * (ga + gb) / 2
        length = abs(zb - za)
        tol = 2 * math.pi * RESIDUAL_BUDGET * length / perimeter
        if abs(dtheta) < math.pi / 2 and abs(trap - dlog) <= tol:
            total_arg += dtheta
            total_trap += trap
            segments += 1
            continue
        if length < min_len:
            if abs(dtheta) >= math.pi / 2:
                raise ZeroOnContour(f"argument jump {dtheta:.3f} on a segment of length {length:.2e} near {za}")
            total_arg += dtheta
            total_trap += trap
            segments += 1
            continue
        if segments + len(stack) > MAX_SEGMENTS:
            raise NonConvergence(f"more than {MAX_SEGMENTS} contour segments for {spec.label}")
        zm = (za + zb) / 2
        stack.append((zm, zb))
        stack.append((za, zm))

    raw = total_arg / (2 * math.pi)
    count = round(raw)
    residual = abs(total_trap / (2j * math.pi) - count)
    if count < 0:
        raise NonConvergence(f"negative winding number {count} for an entire function")
    return WindingResult(count, residual, segments, rect, contour.min_clearance)


def count_in_rect(spec: SeriesSpec, rect: Rect, prec: Precision | None = None) -> WindingResult:
    """contour_winding with up to RETRIES enlargements when a zero hits the contour."""
    last = None
    for attempt in range(RETRIES + 1):
        trial = rect.scaled((1 + ENLARGE) ** attempt) if attempt else rect
        try:
            return contour_winding(spec, trial, prec)
        except ZeroOnContour as exc:
            last = exc
    raise last


def zero_count_in_rect(spec: SeriesSpec, rect: Rect, prec: Precision | None = None) -> int:
    return count_in_rect(spec, rect, prec).count


@dataclass(frozen=True)
class BoxCounts:
    """Zero census of the box [-R, R]^2 (R possibly nudged off a zero)."""
    R: float
    total: int
    positive_real: int
    real_nonpositive: int
    real: int
    box: WindingResult

    @property
    def nonpositive(self) -> int:
        return self.total - self.positive_real

    @property
    def nonreal(self) -> int:
        return self.total - self.real


def _real_zero_multiplicity_count(zeros) -> int:
    # A touch (no sign change) is at least a double zero.
    return sum(1 if z.sign_change else 2 for z in zeros)


def box_counts(spec: SeriesSpec, R, prec: Precision | None = None, tol=None) -> BoxCounts:
    box = count_in_rect(spec, Rect.box(R), prec)
    R_used = box.rect.re_hi
    zeros = real_zeros_in(spec, (-R_used, R_used), tol, prec)
    positive = [z for z in zeros if z.location > 0]
    nonpositive = [z for z in zeros if z.location <= 0]
    real = _real_zero_multiplicity_count(zeros)
    return BoxCounts(R_used, box.count, _real_zero_multiplicity_count(positive),
                     _real_zero_multiplicity_count(nonpositive), real, box)


def nonpositive_count(spec: SeriesSpec, R, prec: Precision | None = None) -> int:
    """Zeros in [-R, R]^2 that are not on the open positive real axis."""
    box = count_in_rect(spec, Rect.box(R), prec)
    return box.count - positive_real_count(spec, box.rect.re_hi, prec=prec)


def nonreal_count(spec: SeriesSpec, R, prec: Precision | None = None) -> int:
    """Zeros in [-R, R]^2 minus the real zeros found on [-R, R]."""
    return box_counts(spec, R, prec).nonreal


def upper_half_count(spec: SeriesSpec, R, delta, prec: Precision | None = None) -> WindingResult:
    return count_in_rect(spec, Rect(-R, R, delta, R), prec)
