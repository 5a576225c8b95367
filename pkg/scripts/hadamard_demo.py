"""Partial Hadamard products of phi(rho, beta, -z) against direct evaluation.

Prints the maximum relative deviation on a sample grid as the number of
zeros K in the product grows.

    python scripts/hadamard_demo.py --rho 1 --beta 1 --kmax 20
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

import mpmath

from lpzeros.catalog import wright_series
from lpzeros.harness import hadamard_partial_check
from lpzeros.numerics import Precision


@dataclass
class DemoConfig:
    rho: float = 1.0
    beta: float = 1.0
    kmax: int = 20
    samples: int = 9
    digits: int = 30


def main(argv=None):
    defaults = DemoConfig()
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in vars(defaults).items():
        parser.add_argument(f"--{name}", type=type(value), default=value)
    cfg = DemoConfig(**vars(parser.parse_args(argv)))

    grid = [i / (cfg.samples - 1) for i in range(cfg.samples)]
    check = hadamard_partial_check(wright_series(cfg.rho, cfg.beta), cfg.kmax, grid, Precision(cfg.digits))
    print(f"phi({cfg.rho}, {cfg.beta}, -z), samples in [0, 1]")
    print(f"{'K':>4}  {'zero x_K':>22}  {'max rel. deviation':>20}  {'K * deviation':>14}")
    for k, (x, dev) in enumerate(zip(check.zeros, check.deviations), start=1):
        print(f"{k:>4}  {mpmath.nstr(x, 18):>22}  {mpmath.nstr(dev, 6):>20}  {mpmath.nstr(k * dev, 4):>14}")
    print(f"monotone in K: {check.monotone}")


if __name__ == "__main__":
    main()
