"""Multiprecision kernel: working-precision settings and the gamma-function helpers.

Every coefficient rule in :mod:`lpzeros.catalog` is built from the functions
here.  Arithmetic is delegated to :mod:`mpmath`; the value of this module is
the pole discipline (exact zeros of 1/Gamma, pole-free Pochhammer products)
and a single place where precision is configured.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath import mp


class DomainError(ValueError):
    """Argument outside the domain of a real-valued special function."""


@dataclass(frozen=True)
class Precision:
    decimal_digits: int = 50
    guard_digits: int = 15

    def __post_init__(self):
        if self.decimal_digits < 15:
            raise ValueError(f"decimal_digits must be >= 15, got {self.decimal_digits}")
        if self.guard_digits < 10:
            raise ValueError(f"guard_digits must be >= 10, got {self.guard_digits}")

    @property
    def working_digits(self) -> int:
        return self.decimal_digits + self.guard_digits

    @property
    def target(self):
        """Absolute accuracy goal 10^-decimal_digits as an mpf."""
        return mpmath.mpf(10) ** (-self.decimal_digits)

    def doubled(self) -> "Precision":
        return Precision(2 * self.decimal_digits, self.guard_digits)


DEFAULT_PRECISION = Precision()


def resolve(prec: Precision | None) -> Precision:
    return DEFAULT_PRECISION if prec is None else prec


@contextlib.contextmanager
def working(prec: Precision | None = None, extra: int = 0):
    """Run a block at the working precision of ``prec`` plus ``extra`` digits."""
    with mp.workdps(resolve(prec).working_digits + extra):
        yield


def to_mpf(x):
    """Convert a user parameter to mpf at the ambient precision.

    Floats go through their shortest repr so that ``0.3`` means 3/10 rather
    than the nearest binary double.
    """
    if isinstance(x, mpmath.mpf):
        return +x
    if isinstance(x, bool):
        raise TypeError("boolean is not a numeric parameter")
    if isinstance(x, int):
        return mp.mpf(x)
    if isinstance(x, Rational):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, float):
        return mp.mpf(repr(x))
    return mp.mpf(x)


def to_fraction(x) -> Fraction | None:
    """Exact rational value of a parameter, or None if it has none we trust."""
    if isinstance(x, bool):
        return None
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return None


def is_nonpositive_integer(x) -> bool:
    return x <= 0 and x == int(x)


def log_gamma(x, prec: Precision | None = None):
    """ln Gamma(x) for real x > 0."""
    with working(prec):
        x = to_mpf(x)
        if x <= 0:
            raise DomainError(f"log_gamma requires x > 0, got {mpmath.nstr(x, 10)}")
        return mp.loggamma(x)


def recip_gamma(z, prec: Precision | None = None):
    """1/Gamma(z), entire; exactly zero at z = 0, -1, -2, ...

    Real input gives an mpf, complex input an mpc.
    """
    with working(prec):
        if isinstance(z, (complex, mpmath.mpc)):
            z = mp.mpc(z)
            if z.imag == 0 and is_nonpositive_integer(z.real):
                return mp.mpc(0)
            return mp.rgamma(z)
        z = to_mpf(z)
        if is_nonpositive_integer(z):
            return mp.zero
        return mp.rgamma(z)


def _rgamma_ambient(x):
    # Hot path for coefficient rules; caller owns the precision context.
    if x <= 0 and x == int(x):
        return mp.zero
    return mp.rgamma(x)


def pochhammer(a, n: int, prec: Precision | None = None):
    """Rising factorial (a)_n = a(a+1)...(a+n-1) as an explicit product."""
    if n < 0:
        raise ValueError(f"pochhammer needs n >= 0, got {n}")
    with working(prec):
        a = to_mpf(a)
        result = mp.one
        for j in range(n):
            result *= a + j
        return result


def gamma_ratio_product(c, shift_count: int, prec: Precision | None = None):
    """Gamma(c + shift_count) / Gamma(c) for any real c, poles absorbed.

    Same value as ``pochhammer(c, shift_count)``; kept as its own name so that
    coefficient rules say which gamma quotients they cancel.
    """
    return pochhammer(c, shift_count, prec)


def _pochhammer_ambient(a, n: int):
    result = mp.one
    for j in range(n):
        result *= a + j
    return result
