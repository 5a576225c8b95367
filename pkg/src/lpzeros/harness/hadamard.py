"""Partial Hadamard products for the Wright function versus direct evaluation."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from ..catalog import Family, SeriesSpec
from ..evaluator import evaluate
from ..numerics import Precision, resolve, to_mpf
from ..realroots import real_zeros_in

SEARCH_LIMIT = 1e4


class NotEnoughZeros(RuntimeError):
    pass


@dataclass(frozen=True)
class HadamardCheck:
    zeros: tuple            # first K positive zeros of phi(rho, beta, -z)
    deviations: tuple       # max relative deviation using the first k zeros, k = 1..K
    monotone: bool          # deviations non-increasing in k

    @property
    def max_deviation(self):
        return self.deviations[-1]


def first_positive_zeros(spec: SeriesSpec, K: int, prec: Precision | None = None) -> list:
    hi = 8.0
    while True:
        zeros = [z for z in real_zeros_in(spec, (0, hi), prec=prec) if z.location > 0]
        if len(zeros) >= K:
            return [z.location for z in zeros[:K]]
        if hi >= SEARCH_LIMIT:
            raise NotEnoughZeros(f"found {len(zeros)} < {K} zeros of {spec.label} in (0, {hi}]")
        hi *= 4


def hadamard_partial_check(spec: SeriesSpec, K: int, samples, prec: Precision | None = None) -> HadamardCheck:
    """Compare Gamma(beta) phi(rho, beta, -z) with prod_{k<=K} (1 - z/x_k) on samples.

    ``spec`` is ``wright_series(rho, beta)`` itself; the reflection to -z
    happens here.
    """
    if spec.family is not Family.WRIGHT:
        raise ValueError("hadamard_partial_check takes a Wright-family spec")
    rho, beta = spec.params["rho"], spec.params["beta"]
    if not (rho > 0 and beta > 0):
        raise ValueError(f"needs rho, beta > 0, got rho={rho}, beta={beta}")
    if K < 1:
        raise ValueError("K must be >= 1")
    prec = resolve(prec)
    reflected = spec.reflect()
    zeros = first_positive_zeros(reflected, K, prec)
    with mp.workdps(prec.working_digits):
        gamma_beta = mp.gamma(to_mpf(beta))
        points = [mp.mpf(x) if not isinstance(x, (complex, mpmath.mpc)) else mp.mpc(x) for x in samples]
        for z in points:
            if abs(z) >= zeros[-1]:
                raise ValueError(f"sample {z} lies outside the disk of the K-th zero {zeros[-1]}")
        lhs = [gamma_beta * evaluate(reflected, z, prec).value for z in points]
        deviations = []
        for k in range(1, K + 1):
            worst = mp.zero
            for z, f in zip(points, lhs):
                prod = mp.one
                for x in zeros[:k]:
                    prod *= 1 - z / x
                worst = max(worst, abs(f - prod) / abs(f))
            deviations.append(worst)
    monotone = all(b <= a for a, b in zip(deviations, deviations[1:]))
    return HadamardCheck(tuple(zeros), tuple(deviations), monotone)
