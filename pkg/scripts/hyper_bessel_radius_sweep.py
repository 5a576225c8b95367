"""Zero census of the hyper-Bessel series with negated indices over growing boxes.

For alpha = (2.3, 0.4, 1.6) the count formula [2.3] + [0.4] + [1.6] = 3
disagrees with the census.  This script shows the census is stable in R and
lists the real zeros, so the mismatch is not a box-size artifact.

    python scripts/hyper_bessel_radius_sweep.py --alpha 2.3 0.4 1.6
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field

import mpmath

from lpzeros.catalog import hyper_bessel_series
from lpzeros.numerics import Precision
from lpzeros.realroots import real_zeros_in
from lpzeros.winding import Rect, box_counts, count_in_rect


@dataclass
class SweepConfig:
    alpha: list = field(default_factory=lambda: [2.3, 0.4, 1.6])
    radii: list = field(default_factory=lambda: [5.0, 10.0, 20.0, 30.0, 45.0])
    digits: int = 30


def main(argv=None):
    defaults = SweepConfig()
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alpha", type=float, nargs="+", default=defaults.alpha)
    parser.add_argument("--radii", type=float, nargs="+", default=defaults.radii)
    parser.add_argument("--digits", type=int, default=defaults.digits)
    cfg = SweepConfig(**vars(parser.parse_args(argv)))

    prec = Precision(cfg.digits)
    spec = hyper_bessel_series(tuple(-a for a in cfg.alpha))
    predicted = sum(math.floor(a) for a in cfg.alpha)
    print(f"{spec.label}; count formula gives {predicted}")
    print(f"{'R':>6} {'total':>6} {'pos.real':>9} {'real<=0':>8} {'nonreal':>8} {'nonpositive':>12} {'upper':>6}")
    for R in cfg.radii:
        c = box_counts(spec, R, prec)
        upper = count_in_rect(spec, Rect(-c.R, c.R, 0.05, c.R), prec).count
        print(f"{R:>6g} {c.total:>6} {c.positive_real:>9} {c.real_nonpositive:>8} "
              f"{c.nonreal:>8} {c.nonpositive:>12} {upper:>6}")
    R = cfg.radii[-1]
    zeros = real_zeros_in(spec, (-R, R), prec=prec)
    print("real zeros:", ", ".join(mpmath.nstr(z.location, 12) for z in zeros if z.location <= 0) or "none <= 0")


if __name__ == "__main__":
    main()
