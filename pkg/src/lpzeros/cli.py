"""Command line front end: ``lpzeros <command> ...``.

Family parameters are ``key=value`` tokens; lists are comma separated and
rationals may be written ``p/q``::

    lpzeros eval hurwitz-bessel nu=1.5 --at 2,0
    lpzeros real-zeros wright rho=1 beta=1 --reflect --interval 0,40
    lpzeros count hyper-bessel alpha=0.5,1.2 --rect=-30,30,-30,30
    lpzeros jensen eta s=2 --nmax 20
    lpzeros sweep --config configs/acceptance.yaml --out reports/
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from .catalog import FAMILY_BUILDERS, build
from .evaluator import evaluate
from .harness.cases import run_case
from .harness.sweep import exit_code, load_config, report_json, summary_csv, sweep, write_reports
from .jensen import lp_plus_certificate
from .numerics import Precision
from .realroots import real_zeros_in
from .winding import Rect, count_in_rect


def _scalar(text: str):
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_params(tokens: list[str]) -> dict:
    params = {}
    for tok in tokens:
        if "=" not in tok:
            raise argparse.ArgumentTypeError(f"parameter {tok!r} is not key=value")
        key, value = tok.split("=", 1)
        if key == "kind":
            params[key] = value
            continue
        parts = [_scalar(v) for v in value.split(",") if v.strip()]
        params[key] = parts if "," in value else parts[0]
    return params


def _floats(text: str, n: int) -> list[float]:
    parts = [float(v) for v in text.split(",")]
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return parts


def _spec(args):
    spec = build(args.family, parse_params(args.params))
    if args.power_step:
        spec = spec.with_power_step(args.power_step)
    if args.reflect:
        spec = spec.reflect()
    return spec


def _cmd_eval(args) -> int:
    spec = _spec(args)
    re, im = _floats(args.at, 2)
    res = evaluate(spec, complex(re, im), Precision(args.digits))
    digits = args.digits
    print(json.dumps({
        "series": spec.label,
        "value": [mpmath.nstr(res.value.real, digits), mpmath.nstr(res.value.imag, digits)],
        "error_bound": mpmath.nstr(res.error_bound, 5),
        "terms_used": res.terms_used,
    }, indent=2))
    return 0


def _cmd_real_zeros(args) -> int:
    spec = _spec(args)
    lo, hi = _floats(args.interval, 2)
    for z in real_zeros_in(spec, (lo, hi), prec=Precision(args.digits)):
        kind = "" if z.sign_change else "  (touch, even multiplicity)"
        print(f"{mpmath.nstr(z.location, args.digits // 2)}  +- {mpmath.nstr(z.half_width, 3)}{kind}")
    return 0


def _cmd_count(args) -> int:
    spec = _spec(args)
    rect = Rect(*_floats(args.rect, 4))
    res = count_in_rect(spec, rect, Precision(args.digits))
    print(json.dumps({"count": res.count, "residual": f"{res.residual:.3e}",
                      "segments": res.segments,
                      "rect": [res.rect.re_lo, res.rect.re_hi, res.rect.im_lo, res.rect.im_hi]}, indent=2))
    return 0


def _cmd_jensen(args) -> int:
    cert = lp_plus_certificate(_spec(args), args.nmax)
    print(json.dumps({"degrees_checked": [cert.degrees_checked.start, cert.degrees_checked.stop - 1],
                      "all_real_rooted": cert.all_real_rooted,
                      "nonnegative_coefficients": cert.nonnegative_coefficients,
                      "roots_nonpositive": cert.roots_nonpositive,
                      "sign_pattern": cert.sign_pattern.value,
                      "witness": cert.witness}, indent=2))
    return 0 if cert.passed else 1


def _cmd_verify(args) -> int:
    reports = sweep(load_config(args.config), workers=args.workers)
    for r in reports:
        sys.stdout.write(report_json(r))
    sys.stderr.write(summary_csv(reports))
    return exit_code(reports)


def _cmd_sweep(args) -> int:
    reports = sweep(load_config(args.config), workers=args.workers)
    out = write_reports(reports, args.out)
    sys.stdout.write(summary_csv(reports))
    sys.stderr.write(f"wrote {len(reports)} reports to {out}\n")
    return exit_code(reports)


def _series_parser(sub, name, help_text):
    p = sub.add_parser(name, help=help_text)
    p.add_argument("family", choices=sorted(FAMILY_BUILDERS))
    p.add_argument("params", nargs="*", help="key=value family parameters")
    p.add_argument("--reflect", action="store_true", help="use f(-z)")
    p.add_argument("--power-step", type=int, choices=(1, 2), default=None,
                   help="override the power step (2 means the series is in z^2)")
    p.add_argument("--digits", type=int, default=50)
    return p


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpzeros", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = _series_parser(sub, "eval", "evaluate a series at a point")
    p.add_argument("--at", required=True, help="re,im (write --at=-1,0 for negatives)")
    p.set_defaults(func=_cmd_eval)

    p = _series_parser(sub, "real-zeros", "locate real zeros in an interval")
    p.add_argument("--interval", required=True, help="lo,hi")
    p.set_defaults(func=_cmd_real_zeros)

    p = _series_parser(sub, "count", "count zeros in a rectangle")
    p.add_argument("--rect", required=True, help="re_lo,re_hi,im_lo,im_hi")
    p.set_defaults(func=_cmd_count)

    p = _series_parser(sub, "jensen", "Jensen-polynomial certificate")
    p.add_argument("--nmax", type=int, default=20)
    p.set_defaults(func=_cmd_jensen)

    for name, func, text in (("verify", _cmd_verify, "run a config, print JSON reports"),
                             ("sweep", _cmd_sweep, "run a config, write reports to a directory")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True)
        p.add_argument("--workers", type=int, default=1)
        if name == "sweep":
            p.add_argument("--out", required=True)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
