"""Truncated evaluation of a SeriesSpec with a certified tail bound.

The tail is certified by ratio dominance: once consecutive non-zero term
magnitudes shrink by at least a factor 2 (checked over a lookahead window),
the discarded tail is at most twice its first term.  Working precision is
raised by the number of digits the largest term exceeds 1, so cancellation in
alternating series does not eat into the requested accuracy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
import mpmath
from mpmath import mp

from .catalog import SeriesSpec
from .numerics import Precision, resolve

HARD_CAP = 10 ** 6
LOOKAHEAD = 12
# Magnitudes only steer truncation and precision, so low precision is enough.
MAGNITUDE_DPS = 20


class TruncationError(RuntimeError):
    """The ratio test could not be certified within HARD_CAP terms."""


@dataclass(frozen=True)
class EvalResult:
    value: mpmath.mpc
    tail_bound: mpmath.mpf
    terms_used: int
    rounding_bound: mpmath.mpf = mpmath.mpf(0)

    @property
    def error_bound(self):
        """Tail bound plus the floating-point rounding estimate."""
        return self.tail_bound + self.rounding_bound

    @property
    def certified_sign(self) -> int:
        """Sign of the real part if it clears the error bound, else 0."""
        re = self.value.real
        if abs(re) <= 2 * self.error_bound:
            return 0
        return 1 if re > 0 else -1


def _falling(m: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= m - j
    return out


def _log2_coefficient(spec: SeriesSpec, n: int) -> float:
    """log2 |c_n| as a float (-inf for an exact zero), cached on the SeriesSpec."""
    key = ("log2", n)
    try:
        return spec._cache[key]
    except KeyError:
        pass
    c = spec.coefficient(n, MAGNITUDE_DPS)
    if not c:
        value = -math.inf
    else:
        with mp.workdps(MAGNITUDE_DPS):
            value = float(mp.log(abs(c), 2))
    spec._cache[key] = value
    return value


def _log2_term(spec: SeriesSpec, n: int, log2_radius: float, order: int) -> float:
    """log2 of |c_n| * m(m-1)...(m-order+1) * r^(m-order), m = power_step*n."""
    lc = _log2_coefficient(spec, n)
    m = spec.power_step * n
    if lc == -math.inf or m < order:
        return -math.inf
    t = lc + (m - order) * log2_radius if m > order else lc
    if order:
        t += math.log2(_falling(m, order))
    return t


def _plan(spec: SeriesSpec, radius, eps, order: int = 0):
    """Return (N, tail_bound, log2_max_term) for terms n = 0..N.

    The maximum included term magnitude drives the precision headroom.
    """
    log2_eps = float(mp.log(mp.mpf(eps), 2)) if eps < mp.inf else math.inf
    if spec.degree is not None or radius == 0:
        if spec.degree is not None:
            N = spec.degree
        elif order % spec.power_step:
            return 0, mp.zero, -math.inf
        else:
            # Only the monomial of degree `order` survives at the origin.
            N = order // spec.power_step
        log2_r = float(mp.log(radius, 2)) if radius else -math.inf
        if radius == 0:
            lmax = _log2_coefficient(spec, N) + (math.log2(math.factorial(order)) if order else 0.0)
        else:
            lmax = max(_log2_term(spec, n, log2_r, order) for n in range(N + 1))
        return N, mp.zero, lmax

    log2_r = float(mp.log(mp.mpf(radius), 2))
    prev = None
    streak_start = None
    candidate = None  # (index, log2 magnitude) of the first tail term once 2*t <= eps
    certified_after = 0
    lmax = -math.inf
    for n in range(HARD_CAP):
        t = _log2_term(spec, n, log2_r, order)
        if t == -math.inf:
            continue
        if prev is None:
            streak_start = n
        elif t > prev - 1.0:
            streak_start = n
            candidate = None
            certified_after = 0
        prev = t
        lmax = max(lmax, t)
        if candidate is None:
            if n >= 1 and n > streak_start and t + 1.0 <= log2_eps:
                candidate = (n, t)
                certified_after = 0
        else:
            certified_after += 1
            if certified_after >= LOOKAHEAD:
                idx, first = candidate
                with mp.workdps(MAGNITUDE_DPS):
                    bound = mp.mpf(2) ** (first + 1.0)
                return idx - 1, bound, lmax
    raise TruncationError(f"{spec.label}: ratio test not certified within {HARD_CAP} terms "
                          f"at radius {mpmath.nstr(radius, 8)}")


# Plans are reused on a grid of radii 2^(k/PLAN_GRID), always rounding the
# radius up: a tail certified at a larger radius also bounds the smaller one.
PLAN_GRID = 64


def _cached_plan(spec: SeriesSpec, radius, eps, order: int = 0):
    if radius == 0 or spec.degree is not None:
        return _plan(spec, radius, eps, order)
    with mp.workdps(MAGNITUDE_DPS):
        k = math.ceil(float(mp.log(mp.mpf(radius), 2)) * PLAN_GRID)
        key = ("plan", order, mpmath.nstr(mp.mpf(eps), 5), k)
        hit = spec._cache.get(key)
        if hit is None:
            hit = _plan(spec, mp.mpf(2) ** (mp.mpf(k) / PLAN_GRID), eps, order)
            spec._cache[key] = hit
    return hit


def truncation_length(spec: SeriesSpec, radius, eps) -> int:
    """Smallest certified N with sum_{n>N} |c_n| r^(n*power_step) <= eps."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if eps <= 0:
        raise ValueError("eps must be positive")
    return _plan(spec, radius, eps)[0]


def _headroom(log2_max_term: float) -> int:
    if log2_max_term <= 0:
        return 0
    digits = math.ceil(log2_max_term * math.log10(2))
    # Round up to a multiple of 5 so nearby points share coefficient caches.
    return 5 * ((digits + 4) // 5)


def _dps_for(prec: Precision, max_term) -> int:
    return prec.working_digits + _headroom(max_term)


def _rounding(N: int, log2_max_term: float, dps: int):
    with mp.workdps(MAGNITUDE_DPS):
        scale = mp.mpf(2) ** max(log2_max_term, 0.0)
        return 4 * (N + 1) ** 2 * scale * mp.mpf(10) ** (-dps)


def _as_complex(z):
    if isinstance(z, (mpmath.mpc, complex)):
        return mp.mpc(z)
    return mp.mpc(mp.mpf(z) if not isinstance(z, str) else mp.mpf(z))


def _upper(z):
    """Move z to the closed upper half plane; report whether it was flipped.

    Coefficients are real, so f(conj z) = conj f(z).  MPC's complex product is
    not bitwise symmetric under conjugation, so the symmetry is imposed here.
    """
    if z.imag < 0:
        return mp.conj(z), True
    return z, False


def _bits(dps: int) -> int:
    return int(dps * 3.3219280948873626) + 16


def _to_gmpy(x):
    """Exact mpmath mpf -> gmpy2 mpfr (the ambient gmpy2 precision must hold it)."""
    sign, man, exp, _ = x._mpf_
    if not man:
        return gmpy2.mpfr(0)
    return gmpy2.mul_2exp(gmpy2.mpfr(-man if sign else man), exp)


def _from_gmpy(x):
    if not x:
        return mp.zero
    man, exp = x.as_mantissa_exp()
    return mp.mpf((int(man), int(exp)))


def _gmpy_coefficients(spec: SeriesSpec, count: int, dps: int) -> list:
    """Coefficients as gmpy2 mpc, cached alongside the mpmath ones."""
    out = []
    for n in range(count):
        key = ("gmpy", n, dps)
        v = spec._cache.get(key)
        if v is None:
            c = spec.coefficient(n, dps)
            c = mp.mpc(c)
            v = gmpy2.mpc(_to_gmpy(c.real), _to_gmpy(c.imag))
            spec._cache[key] = v
        out.append(v)
    return out


def _z_to_gmpy(z) -> "gmpy2.mpc":
    return gmpy2.mpc(_to_gmpy(z.real), _to_gmpy(z.imag))


def _mpc_from_gmpy(v):
    return mp.mpc(_from_gmpy(v.real), _from_gmpy(v.imag))


def evaluate(spec: SeriesSpec, z, prec: Precision | None = None) -> EvalResult:
    """Truncated series value at z with a certified tail bound."""
    prec = resolve(prec)
    with mp.workdps(prec.working_digits):
        z, flipped = _upper(_as_complex(z))
        radius = abs(z)
    eps = mpmath.mpf(10) ** (-prec.working_digits)
    N, tail, max_term = _cached_plan(spec, radius, eps)
    dps = _dps_for(prec, max_term)
    with mp.workdps(dps), gmpy2.context(gmpy2.get_context(), precision=_bits(dps)):
        coeffs = _gmpy_coefficients(spec, N + 1, dps)
        zg = _z_to_gmpy(z)
        if z.imag == 0:
            w = zg.real * zg.real if spec.power_step == 2 else zg.real
            acc = gmpy2.mpfr(0)
            for c in reversed(coeffs):
                acc = acc * w + c.real
            value = mp.mpc(_from_gmpy(acc))
        else:
            w = zg * zg if spec.power_step == 2 else zg
            acc = gmpy2.mpc(0)
            for c in reversed(coeffs):
                acc = acc * w + c
            value = _mpc_from_gmpy(acc)
        if flipped:
            value = mp.conj(value)
    return EvalResult(value, tail, N + 1, _rounding(N, max_term, dps))


def _monomials(spec: SeriesSpec, N: int, dps: int) -> list:
    """Coefficients a_m of sum a_m z^m up to m = power_step*N."""
    coeffs = spec.coefficients(N + 1, dps)
    if spec.power_step == 1:
        return coeffs
    out = [mp.zero] * (spec.power_step * N + 1)
    for n, c in enumerate(coeffs):
        out[spec.power_step * n] = c
    return out


def evaluate_derivative(spec: SeriesSpec, z, order: int, prec: Precision | None = None) -> EvalResult:
    """order-th derivative, differentiated term by term, with its own tail bound."""
    if order < 1:
        raise ValueError("order must be >= 1")
    prec = resolve(prec)
    with mp.workdps(prec.working_digits):
        z, flipped = _upper(_as_complex(z))
        radius = abs(z)
    eps = mpmath.mpf(10) ** (-prec.working_digits)
    N, tail, max_term = _cached_plan(spec, radius, eps, order)
    dps = _dps_for(prec, max_term)
    with mp.workdps(dps):
        a = _monomials(spec, N, dps)
        acc = mp.mpc(0)
        for m in range(len(a) - 1, order - 1, -1):
            acc = acc * z + a[m] * _falling(m, order)
        if flipped:
            acc = mp.conj(acc)
    return EvalResult(acc, tail, N + 1, _rounding(N, max_term, dps))


def evaluate_with_derivative(spec: SeriesSpec, z, prec: Precision | None = None):
    """(f(z), f'(z)) from one Horner pass; both tails certified."""
    prec = resolve(prec)
    with mp.workdps(prec.working_digits):
        z, flipped = _upper(_as_complex(z))
        radius = abs(z)
    eps = mpmath.mpf(10) ** (-prec.working_digits)
    N0, tail0, max0 = _cached_plan(spec, radius, eps, 0)
    N1, tail1, max1 = _cached_plan(spec, radius, eps, 1)
    N = max(N0, N1)
    max_term = max(max0, max1)
    dps = _dps_for(prec, max_term)
    p = spec.power_step
    with mp.workdps(dps), gmpy2.context(gmpy2.get_context(), precision=_bits(dps)):
        coeffs = _gmpy_coefficients(spec, N + 1, dps)
        zg = _z_to_gmpy(z)
        w = zg * zg if p == 2 else zg
        f = gmpy2.mpc(0)
        g = gmpy2.mpc(0)  # d/dw of the series in w
        for c in reversed(coeffs):
            g = g * w + f
            f = f * w + c
        if p == 2:
            g = g * 2 * zg
        f, df = _mpc_from_gmpy(f), _mpc_from_gmpy(g)
        if flipped:
            f, df = mp.conj(f), mp.conj(df)
    rnd = _rounding(N, max_term, dps)
    return (EvalResult(f, tail0, N + 1, rnd), EvalResult(df, tail1, N + 1, rnd))


# Precision escalation for values swamped by cancellation.
RESOLVE_ROUNDS = 8
MAX_DIGITS = 4000


def evaluate_resolved(spec: SeriesSpec, z, prec: Precision | None = None, factor=4,
                      with_derivative: bool = False):
    """evaluate (or evaluate_with_derivative), raising the precision until
    |f(z)| > factor * error_bound.

    Terms far larger than the sum (e^(-z^2)-like series in their decaying
    sector) leave the value below the rounding bound at the default
    precision.  Each round adds at least as many digits as the previous
    precision had, or the measured deficit if that is larger.  Gives up at
    MAX_DIGITS and returns the last, unresolved, result: a genuine zero at z
    never resolves.
    """
    prec = resolve(prec)
    step = prec.decimal_digits
    for _ in range(RESOLVE_ROUNDS + 1):
        out = evaluate_with_derivative(spec, z, prec) if with_derivative else evaluate(spec, z, prec)
        f = out[0] if with_derivative else out
        mag, err = abs(f.value), f.error_bound
        if mag > factor * err or prec.decimal_digits >= MAX_DIGITS:
            return out
        with mp.workdps(MAGNITUDE_DPS):
            deficit = math.ceil(float(mp.log10(factor * err / mag))) + 10 if mag else 0
        add = max(deficit, step)
        step *= 2
        prec = Precision(min(prec.decimal_digits + add, MAX_DIGITS), prec.guard_digits)
    return out
