"""Jensen polynomials, exact Sturm counting and the Laguerre / Obreschkoff transforms.

Everything polynomial here runs on :class:`fractions.Fraction`; a floating
Sturm chain can flip a real-rootedness verdict, so there is no float path.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from mpmath import mp

from .catalog import SeriesSpec, series_from_rule
from .numerics import to_fraction, to_mpf


class ExactPoly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    def __eq__(self, other):
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"ExactPoly({[str(c) for c in self.coefficients]})"

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "ExactPoly":
        return ExactPoly([k * c for k, c in enumerate(self.coefficients)][1:])

    def scale(self, factor) -> "ExactPoly":
        return ExactPoly([c * factor for c in self.coefficients])

    def reflect(self) -> "ExactPoly":
        """p(-z)."""
        return ExactPoly([-c if k % 2 else c for k, c in enumerate(self.coefficients)])

    def monic(self) -> "ExactPoly":
        return self.scale(1 / self.leading)

    def divmod(self, other: "ExactPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = len(rem) - len(other.coefficients) + 1
        if dq <= 0:
            return ExactPoly([]), self
        quot = [Fraction(0)] * dq
        lead = other.leading
        d = other.degree
        for k in range(dq - 1, -1, -1):
            q = rem[k + d] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coefficients):
                    rem[k + j] -= q * c
        return ExactPoly(quot), ExactPoly(rem[:d])

    def sign_at(self, x) -> int:
        """Sign at a rational point, or at +inf / -inf when x is a float infinity."""
        if self.is_zero():
            return 0
        if isinstance(x, float) and math.isinf(x):
            s = 1 if self.leading > 0 else -1
            if x < 0 and self.degree % 2:
                s = -s
            return s
        v = self(Fraction(x))
        return (v > 0) - (v < 0)


def _gcd(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    while not q.is_zero():
        p, q = q, p.divmod(q)[1]
    return p.monic() if not p.is_zero() else p


def jensen_polynomial(gamma: Sequence, n: int) -> ExactPoly:
    """g_n(z) = sum_{j<=n} C(n, j) gamma_j z^j."""
    if n < 0:
        raise ValueError("degree n must be non-negative")
    if len(gamma) < n + 1:
        raise ValueError(f"need {n + 1} coefficients gamma_0..gamma_{n}, got {len(gamma)}")
    return ExactPoly([math.comb(n, j) * Fraction(gamma[j]) for j in range(n + 1)])


def squarefree(p: ExactPoly) -> ExactPoly:
    """p / gcd(p, p'): same distinct roots, all simple."""
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    if p.degree <= 0:
        return p
    g = _gcd(p, p.derivative())
    if g.degree == 0:
        return p
    return p.divmod(g)[0]


def sturm_chain(p: ExactPoly) -> list[ExactPoly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        rem = chain[-2].divmod(chain[-1])[1]
        if rem.is_zero():
            break
        # Sign matters, scale does not: normalise to keep the rationals small.
        chain.append(rem.scale(-1 / abs(rem.leading)))
    return chain


def _variations(chain, x) -> int:
    signs = [s for s in (q.sign_at(x) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: ExactPoly, interval=(-math.inf, math.inf)) -> int:
    """Distinct real roots of a square-free p in (lo, hi]."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree <= 0:
        return 0
    lo, hi = interval
    chain = sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


def real_rooted(p: ExactPoly) -> bool:
    """True iff every complex root of p is real (constants count as real-rooted)."""
    if p.is_zero():
        return True
    sf = squarefree(p)
    return sturm_count(sf) == sf.degree


class SignPattern(str, enum.Enum):
    ALL_SAME_SIGN = "AllSameSign"
    MIXED = "Mixed"


@dataclass(frozen=True)
class LPCertificate:
    degrees_checked: range
    all_real_rooted: bool
    sign_pattern: SignPattern
    witness: int | None = None
    nonnegative_coefficients: bool = True
    roots_nonpositive: bool = True

    @property
    def passed(self) -> bool:
        """Finite-degree evidence for LP+ membership."""
        return self.all_real_rooted and self.nonnegative_coefficients and self.roots_nonpositive


def taylor_normalized(spec: SeriesSpec, count: int) -> list[Fraction]:
    """gamma_j = j! c_j for j < count (exact)."""
    if spec.power_step != 1:
        raise ValueError("Jensen polynomials need a series in z^n (power_step 1)")
    if not spec.is_exact:
        raise ValueError(f"{spec.label}: coefficients are not exactly rational; "
                         "use the numerical zero-counting pipeline instead")
    return [spec.exact_coefficient(j) * math.factorial(j) for j in range(count)]


def lp_plus_certificate(spec: SeriesSpec, n_max: int) -> LPCertificate:
    """Check g_1..g_{n_max} for real-rootedness, zero signs and coefficient signs."""
    gamma = taylor_normalized(spec, n_max + 1)
    nonzero = [g for g in gamma if g]
    same_sign = all(g > 0 for g in nonzero) or all(g < 0 for g in nonzero)
    nonneg = all(g >= 0 for g in gamma)
    witness = None
    all_rr = True
    nonpos = True
    for n in range(1, n_max + 1):
        g = jensen_polynomial(gamma, n)
        if g.is_zero() or g.degree <= 0:
            continue
        sf = squarefree(g)
        chain = sturm_chain(sf)
        total = _variations(chain, -math.inf) - _variations(chain, math.inf)
        if total != sf.degree:
            all_rr = False
            witness = n if witness is None else witness
            break
        if _variations(chain, 0) - _variations(chain, math.inf):
            nonpos = False
            witness = n if witness is None else witness
            break
    return LPCertificate(range(1, n_max + 1), all_rr,
                         SignPattern.ALL_SAME_SIGN if same_sign else SignPattern.MIXED,
                         witness, nonneg, nonpos)


def laguerre_transform(phi: Callable[[int], object], label: str = "laguerre") -> SeriesSpec:
    """sum phi(n) z^n / n!; exact when phi returns ints or Fractions."""
    probe = phi(0)
    exact = None
    if to_fraction(probe) is not None and not isinstance(probe, float):
        def exact(n):
            return Fraction(phi(n)) / math.factorial(n)

    def rule(n):
        return to_mpf(phi(n)) / mp.factorial(n)

    return series_from_rule(rule, exact_rule=exact, label=label, params={"kind": "laguerre"})


def obreschkoff_transform(q: Callable[[int], object], positive_zero_count: int,
                          label: str = "obreschkoff") -> tuple[SeriesSpec, int]:
    """sum (-1)^n q(2n) z^(2n) / n!, with the predicted bound 2s on nonreal zeros."""
    if positive_zero_count < 0:
        raise ValueError("positive_zero_count must be >= 0")

    def rule(n):
        c = to_mpf(q(2 * n)) / mp.factorial(n)
        return -c if n % 2 else c

    spec = series_from_rule(rule, power_step=2, label=label,
                            params={"kind": "obreschkoff", "s": positive_zero_count})
    return spec, 2 * positive_zero_count
