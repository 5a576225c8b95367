"""Power-series descriptions of the entire functions under study.

A :class:`SeriesSpec` is the unit every other module works with: the function
is ``sum_n c_n * z**(power_step * n)`` with a deterministic coefficient rule.
Sign alternation lives inside ``c_n``; orientation changes (``z -> -z``) and
variable substitutions (``z**2 -> w``) produce new specs.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import mpmath
from mpmath import mp

from .numerics import (
    _pochhammer_ambient,
    _rgamma_ambient,
    is_nonpositive_integer,
    to_fraction,
    to_mpf,
)


class Family(str, enum.Enum):
    WRIGHT = "Wright"
    HURWITZ_BESSEL = "HurwitzBessel"
    HYPER_BESSEL = "HyperBessel"
    PFQ = "PFQ"
    BESSEL_DERIV = "BesselDeriv"
    CROSS_A = "CrossA"
    CROSS_B = "CrossB"
    ETA = "Eta"
    POLYNOMIAL = "Polynomial"
    TRANSFORM = "Transform"


# Rule signatures: ``rule(n)`` runs inside the caller's mp precision context and
# returns an mpf; ``exact_rule(n)`` returns a Fraction.
Rule = Callable[[int], "mpmath.mpf"]
ExactRule = Callable[[int], Fraction]


@dataclass(frozen=True, eq=False)
class SeriesSpec:
    family: Family
    params: Mapping[str, object]
    rule: Rule
    power_step: int = 1
    exact_rule: ExactRule | None = None
    degree: int | None = None
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.power_step not in (1, 2):
            raise ValueError(f"power_step must be 1 or 2, got {self.power_step}")

    def coefficient(self, n: int, dps: int):
        """c_n computed at ``dps`` decimal digits (cached per precision)."""
        key = (n, dps)
        try:
            return self._cache[key]
        except KeyError:
            pass
        if self.degree is not None and n > self.degree:
            value = mp.zero
        else:
            with mp.workdps(dps):
                value = +self.rule(n)
        self._cache[key] = value
        return value

    def coefficients(self, count: int, dps: int) -> list:
        return [self.coefficient(n, dps) for n in range(count)]

    @property
    def is_exact(self) -> bool:
        return self.exact_rule is not None

    def exact_coefficient(self, n: int) -> Fraction:
        if self.exact_rule is None:
            raise ValueError(f"{self.label or self.family.value}: coefficients are not exactly rational")
        if self.degree is not None and n > self.degree:
            return Fraction(0)
        return self.exact_rule(n)

    def reflect(self) -> "SeriesSpec":
        """The series of f(-z)."""
        if self.power_step == 2:
            return replace(self, label=f"{self.label}(-z)", _cache={})
        rule, exact = self.rule, self.exact_rule

        def reflected(n):
            return -rule(n) if n % 2 else rule(n)

        reflected_exact = None
        if exact is not None:
            def reflected_exact(n):
                return -exact(n) if n % 2 else exact(n)

        return replace(self, rule=reflected, exact_rule=reflected_exact,
                       label=f"{self.label}(-z)", _cache={})

    def with_power_step(self, power_step: int) -> "SeriesSpec":
        """Same coefficients in another variable (step 2 -> 1 is the substitution w = z^2)."""
        if power_step == self.power_step:
            return self
        suffix = "[w=z^2]" if power_step == 1 else "[z^2]"
        return replace(self, power_step=power_step, label=self.label + suffix, _cache={})

    def describe(self) -> dict:
        return {
            "family": self.family.value,
            "params": {k: _param_repr(v) for k, v in self.params.items()},
            "power_step": self.power_step,
            "label": self.label,
        }


def _param_repr(v):
    if isinstance(v, (list, tuple)):
        return [_param_repr(x) for x in v]
    return str(v)


def _exact_recip_gamma(x: Fraction) -> Fraction | None:
    """1/Gamma(x) for integer x, None otherwise."""
    if x.denominator != 1:
        return None
    k = x.numerator
    if k <= 0:
        return Fraction(0)
    return Fraction(1, math.factorial(k - 1))


def _all_integers(values) -> bool:
    return all(to_fraction(v) is not None and to_fraction(v).denominator == 1 for v in values)


def wright_series(rho, beta) -> SeriesSpec:
    """phi(rho, beta, z) = sum z^n / (n! Gamma(rho n + beta))."""
    if rho <= -1:
        raise ValueError(f"Wright function needs rho > -1, got rho={rho}")

    def rule(n):
        return _rgamma_ambient(to_mpf(rho) * n + to_mpf(beta)) / mp.factorial(n)

    exact = None
    if _all_integers([rho, beta]):
        r, b = int(rho), int(beta)

        def exact(n):
            return _exact_recip_gamma(Fraction(r * n + b)) / math.factorial(n)

    return SeriesSpec(Family.WRIGHT, {"rho": rho, "beta": beta}, rule,
                      exact_rule=exact, label=f"phi({rho},{beta},z)")


def hurwitz_bessel_series(nu) -> SeriesSpec:
    """z^(nu/2) J_{-nu}(2 sqrt z) = sum (-1)^n z^n / (n! Gamma(n - nu + 1))."""

    def rule(n):
        c = _rgamma_ambient(n - to_mpf(nu) + 1) / mp.factorial(n)
        return -c if n % 2 else c

    exact = None
    if _all_integers([nu]):
        v = int(nu)

        def exact(n):
            c = _exact_recip_gamma(Fraction(n - v + 1)) / math.factorial(n)
            return -c if n % 2 else c

    return SeriesSpec(Family.HURWITZ_BESSEL, {"nu": nu}, rule, exact_rule=exact,
                      label=f"z^(nu/2)J_-nu(2sqrt z), nu={nu}")


def hyper_bessel_series(alpha: Sequence) -> SeriesSpec:
    """Normalised hyper-Bessel function: sum (-1)^n z^n / (n! prod_k Gamma(alpha_k + n + 1))."""
    alpha = tuple(alpha)
    if not alpha:
        raise ValueError("hyper-Bessel needs at least one index (d >= 1)")

    def rule(n):
        c = mp.one / mp.factorial(n)
        for a in alpha:
            c *= _rgamma_ambient(to_mpf(a) + n + 1)
        return -c if n % 2 else c

    exact = None
    if _all_integers(alpha):
        ints = [int(a) for a in alpha]

        def exact(n):
            c = Fraction(1, math.factorial(n))
            for a in ints:
                c *= _exact_recip_gamma(Fraction(a + n + 1))
            return -c if n % 2 else c

    return SeriesSpec(Family.HYPER_BESSEL, {"alpha": alpha}, rule, exact_rule=exact,
                      label=f"J_alpha, alpha={list(alpha)}")


class DenominatorPoleError(ValueError):
    def __init__(self, index: int, value):
        super().__init__(f"b[{index}] = {value} is a non-positive integer: "
                         "the denominator Pochhammer symbol vanishes")
        self.index = index


def pfq_series(a: Sequence, b: Sequence) -> SeriesSpec:
    """pFq(a; b; z) = sum prod (a_i)_n / (prod (b_j)_n n!) z^n, restricted to p <= q."""
    a, b = tuple(a), tuple(b)
    for j, bj in enumerate(b):
        if is_nonpositive_integer(bj):
            raise DenominatorPoleError(j, bj)
    if len(a) > len(b):
        raise ValueError(f"p = {len(a)} > q = {len(b)}: the series is not entire")

    degree = None
    terminating = [-int(ai) for ai in a if is_nonpositive_integer(ai)]
    if terminating:
        degree = min(terminating)

    def rule(n):
        c = mp.one / mp.factorial(n)
        for ai in a:
            c *= _pochhammer_ambient(to_mpf(ai), n)
        for bj in b:
            c /= _pochhammer_ambient(to_mpf(bj), n)
        return c

    exact = None
    fa = [to_fraction(x) for x in a]
    fb = [to_fraction(x) for x in b]
    if None not in fa and None not in fb:
        def exact(n):
            c = Fraction(1, math.factorial(n))
            for ai in fa:
                c *= _exact_pochhammer(ai, n)
            for bj in fb:
                c /= _exact_pochhammer(bj, n)
            return c

    return SeriesSpec(Family.PFQ, {"a": a, "b": b}, rule, exact_rule=exact, degree=degree,
                      label=f"{len(a)}F{len(b)}({list(a)};{list(b)};z)")


def _exact_pochhammer(a: Fraction, n: int) -> Fraction:
    result = Fraction(1)
    for j in range(n):
        result *= a + j
    return result


def bessel_deriv_series(nu, n: int) -> SeriesSpec:
    """2^n z^((n-nu)/2) J_nu^(n)(2 sqrt z) as a series in z.

    c_m = (-1)^m Gamma(nu+2m+1) / (m! Gamma(nu+2m-n+1) Gamma(nu+m+1)); the first
    gamma quotient is the finite product (nu+2m-n+1)_n.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"derivative order must be a non-negative integer, got {n}")
    n = int(n)

    def rule(m):
        v = to_mpf(nu)
        c = _pochhammer_ambient(v + 2 * m - n + 1, n) * _rgamma_ambient(v + m + 1) / mp.factorial(m)
        return -c if m % 2 else c

    return SeriesSpec(Family.BESSEL_DERIV, {"nu": nu, "n": n}, rule,
                      label=f"J^({n})_nu series, nu={nu}")


def cross_product_series(nu, kind: str) -> SeriesSpec:
    """Bessel cross-product (kind A) or product (kind B), series in z^(2n)."""
    kind = kind.upper()
    if kind not in ("A", "B"):
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    shift = 2 if kind == "A" else 1
    scale = 2 if kind == "A" else 1

    def rule(n):
        v = to_mpf(nu)
        c = scale * _rgamma_ambient(v + n + 1) * _rgamma_ambient(v + 2 * n + shift) / mp.factorial(n)
        return -c if n % 2 else c

    family = Family.CROSS_A if kind == "A" else Family.CROSS_B
    return SeriesSpec(family, {"nu": nu, "kind": kind}, rule, power_step=2,
                      label=f"{kind}_nu(z), nu={nu}")


def eta_series(s: int) -> SeriesSpec:
    """eta_s(z) = sum n^s z^n / (n!)^2, with 0^0 = 1."""
    if s < 0 or int(s) != s:
        raise ValueError(f"s must be a non-negative integer, got {s}")
    s = int(s)

    def exact(n):
        return Fraction(n ** s, math.factorial(n) ** 2)

    def rule(n):
        return mp.mpf(n ** s) / mp.factorial(n) ** 2

    return SeriesSpec(Family.ETA, {"s": s}, rule, exact_rule=exact, label=f"eta_{s}(z)")


def polynomial_series(coefficients: Sequence, power_step: int = 1) -> SeriesSpec:
    """Finite series from an explicit coefficient list (index = power of the series variable)."""
    coefficients = tuple(coefficients)
    if not coefficients:
        raise ValueError("empty coefficient list")
    fracs = [to_fraction(c) for c in coefficients]

    def rule(n):
        return to_mpf(coefficients[n]) if n < len(coefficients) else mp.zero

    exact = None
    if None not in fracs:
        def exact(n):
            return fracs[n] if n < len(fracs) else Fraction(0)

    return SeriesSpec(Family.POLYNOMIAL, {"coefficients": coefficients}, rule,
                      power_step=power_step, exact_rule=exact, degree=len(coefficients) - 1,
                      label=f"poly{list(coefficients)}")


def series_from_rule(rule: Rule, *, exact_rule: ExactRule | None = None, power_step: int = 1,
                     label: str = "", params: Mapping | None = None,
                     degree: int | None = None) -> SeriesSpec:
    return SeriesSpec(Family.TRANSFORM, dict(params or {}), rule, power_step=power_step,
                      exact_rule=exact_rule, degree=degree, label=label)


# Name -> constructor table shared by the CLI and the config loader.
FAMILY_BUILDERS = {
    "wright": lambda p: wright_series(p["rho"], p["beta"]),
    "hurwitz-bessel": lambda p: hurwitz_bessel_series(p["nu"]),
    "hyper-bessel": lambda p: hyper_bessel_series(_as_tuple(p["alpha"])),
    "pfq": lambda p: pfq_series(_as_tuple(p.get("a", ())), _as_tuple(p["b"])),
    "bessel-deriv": lambda p: bessel_deriv_series(p["nu"], int(p["n"])),
    "cross-a": lambda p: cross_product_series(p["nu"], "A"),
    "cross-b": lambda p: cross_product_series(p["nu"], "B"),
    "eta": lambda p: eta_series(int(p["s"])),
    "polynomial": lambda p: polynomial_series(_as_tuple(p["coefficients"])),
}


def _as_tuple(v):
    if isinstance(v, (list, tuple)):
        return tuple(v)
    return (v,)


def build(family: str, params: Mapping) -> SeriesSpec:
    try:
        builder = FAMILY_BUILDERS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILY_BUILDERS)}") from None
    try:
        return builder(params)
    except KeyError as exc:
        raise ValueError(f"family {family!r} is missing parameter {exc.args[0]!r}") from None
