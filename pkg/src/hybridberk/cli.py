"""Command-line interface.

Exit codes: 0 success, 1 selftest failure, 2 input error, 3 I/O error,
4 numeric failure.  Points and polynomials are given as inline JSON or as
paths to JSON files.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .core_points import (ArchPoint, DerivedPoint, NormValue, TrivPoint, format_value,
                          lambda_of, resolve, seminorm)
from .errors import HybridError, InputError, NumericError
from .multipoly import MultiPoly
from .polynomial import FieldSpec, Polynomial
from .serialization import load_json_arg, point_to_json, poly_from_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3, 4
MAPS = ("rz", "R", "cyl", "disc:<coeffs>", "global", "infinity")


def _emit(obj: Any, out=None):
    out = out or sys.stdout
    out.write(json.dumps(obj, indent=2) + "\n")


def _value_text(v: NormValue) -> str:
    return f"{format_value(v.value)} {v.label}"


def _value_json(v: NormValue) -> dict:
    out = {"value": format_value(v.value), "exactness": v.label}
    if v.exact:
        out["fraction"] = f"{v.fraction.numerator}/{v.fraction.denominator}"
    return out


def _print_value(args, v: NormValue):
    if args.json:
        _emit(_value_json(v))
    else:
        print(_value_text(v))


def _time(text: str, what: str = "time") -> Fraction | float:
    try:
        t = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {text!r}", field=what) from None
    if not 0 <= t <= 1:
        raise InputError(f"{what} {text} outside [0,1]", field=what)
    return t


def _load_point(arg: str, what: str = "point"):
    from .toric import toric_point_from_json

    return toric_point_from_json(load_json_arg(arg, what), what)


def _point_json(x) -> dict:
    from .toric import toric_point_to_json

    return toric_point_to_json(x)


def _parse_coeffs(text: str, field: FieldSpec) -> Polynomial:
    """'-2,0,1' (lowest degree first) or a JSON coefficient array."""
    text = text.strip()
    if text.startswith("["):
        return poly_from_json(json.loads(text), field, "map")
    return poly_from_json([c for c in text.split(",") if c.strip()], field, "map")


# ----------------------------------------------------------------- eval

def cmd_eval(args) -> int:
    from .toric import GaussPoint, ToricDerived, toric_eval

    x = _load_point(args.point)
    data = load_json_arg(args.poly, "poly")
    if isinstance(x, (GaussPoint, ToricDerived)):
        v = toric_eval(x, MultiPoly.from_json(data, where="poly"))
    else:
        v = seminorm(x, poly_from_json(data, x.field, "poly"))
    _print_value(args, v)
    return EXIT_OK


# ------------------------------------------------------------- classify

def cmd_classify(args) -> int:
    from .discs import INFINITY, DiscSpec, RegionTag, region_member
    from .retractions import Schedule

    x = _load_point(args.point)
    if not isinstance(x, (ArchPoint, TrivPoint, DerivedPoint)):
        raise InputError("classify takes a point of the hybrid line", field="point")
    y = resolve(x)
    if args.disc:
        discs = [DiscSpec(_parse_coeffs(args.disc, y.field).monic(), args.delta)]
    else:
        sch = Schedule.build(y.field, args.depth)
        discs = [DiscSpec(INFINITY, sch.e(0))] + [
            DiscSpec(sch.p(n), sch.e(n)) for n in range(1, sch.depth + 1)]
    rows = []
    for d in discs:
        name = "infinity" if d.at_infinity else d.p.pretty()
        for tag in RegionTag:
            if d.at_infinity and tag is RegionTag.NPLUS:
                continue
            rows.append({"disc": name, "delta": d.delta, "tag": tag.value,
                         "member": bool(region_member(y, d, tag, args.tol))})
    report = {"lambda": lambda_of(y), "memberships": rows}
    _emit(report)
    return EXIT_OK


# -------------------------------------------------------------- retract

def _line_homotopy(args, field: FieldSpec):
    from .retractions import (Schedule, disc_sdr_homotopy, global_homotopy,
                              hybrid_cylinder_homotopy, infinity_homotopy, rz_homotopy,
                              squeeze_homotopy)
    from .scalars import parse_scalar

    m = args.map
    if m == "rz":
        return rz_homotopy(parse_scalar(args.z), field)
    if m == "R":
        return squeeze_homotopy(args.delta, args.delta_prime)
    if m == "cyl":
        return hybrid_cylinder_homotopy(args.delta)
    if m == "infinity":
        return infinity_homotopy(args.delta)
    if m == "global":
        return global_homotopy(Schedule.build(field, args.depth))
    if m.startswith("disc:"):
        p = _parse_coeffs(m[5:], field)
        return disc_sdr_homotopy(p.monic(), args.delta)
    raise InputError(f"unknown map {m!r}; expected one of {', '.join(MAPS)}", field="map")


def _trace_times(t, k: int) -> list:
    if k < 1:
        raise InputError("--trace needs at least one sample", field="trace")
    if k == 1:
        return [t]
    return [t * Fraction(j, k - 1) for j in range(k)]


def cmd_retract(args) -> int:
    x = _load_point(args.point)
    if not isinstance(x, (ArchPoint, TrivPoint, DerivedPoint)):
        raise InputError("retract takes a point of the hybrid line", field="point")
    t = _time(args.time)
    H = _line_homotopy(args, resolve(x).field)
    if not H.domain(x):
        raise InputError(f"{x!r} is outside the domain of {H.name}", field="point")
    if args.map == "global" and t == 1:
        from .retractions import Schedule, global_sdr

        res = global_sdr(Schedule.build(resolve(x).field, args.depth), 1.0, x)
        if res.truncated:
            print(f"warning: schedule depth {args.depth} reached; the endpoint is the "
                  "truncation fallback", file=sys.stderr)
    if args.trace:
        _emit([{"t": float(s), "point": point_to_json(resolve(H(float(s), x)))}
               for s in _trace_times(t, args.trace)])
    else:
        _emit(point_to_json(resolve(H(float(t), x))))
    return EXIT_OK


# ------------------------------------------------------------- skeleton

def cmd_skeleton(args) -> int:
    from .toric import dimension, j_eval, j_point, q_eval, q_point, skeleton_member

    data = load_json_arg(args.point, "point")
    if isinstance(data, dict) and data.get("kind") == "gauss" and "base" not in data:
        if not args.base:
            raise InputError("the point has no base; pass --base", field="point.base")
        data = dict(data, base=args.base)
    x = _load_point(json.dumps(data))
    if args.dim is not None and dimension(x) != args.dim:
        raise InputError(f"point has dimension {dimension(x)}, expected {args.dim}", field="dim")
    t = _time(args.t, "t")
    if args.op == "J" and not skeleton_member(x):
        raise InputError("J is defined on the skeleton; apply q at time 1 first", field="point")
    if args.f:
        f = MultiPoly.from_json(load_json_arg(args.f, "f"), where="f")
        v = q_eval(t, x, f) if args.op == "q" else j_eval(t, x, f)
        _print_value(args, v)
        return EXIT_OK
    y = q_point(t, x) if args.op == "q" else j_point(t, x)
    _emit(_point_json(y))
    return EXIT_OK


# ------------------------------------------------------------- spectrum

def cmd_spectrum(args) -> int:
    from .dedekind import base_point_from_json, ht, spectrum_cover_locate
    from .render import RenderSpec, gaussian_label, spectrum_primes, write_svg

    primes = spectrum_primes(args.ring, args.bound)
    report: dict = {"ring": args.ring, "bound": args.bound,
                    "primes": [p if args.ring == "Z" else gaussian_label(p) for p in primes]}
    if args.point:
        z = base_point_from_json(load_json_arg(args.point, "point"), "point")
        report["point"] = z.to_json().get("base", z.to_json())
        report["cover"] = spectrum_cover_locate(z)
        if not report["cover"].startswith("Arch"):
            report["ht"] = format_value(ht(z).value)
    if args.render:
        write_svg(RenderSpec("spectrumZ", ring=args.ring, bound=args.bound, size=args.size),
                  args.render)
        report["svg"] = args.render
    _emit(report)
    return EXIT_OK


def cmd_retract_integers(args) -> int:
    from .dedekind import assembled_sdr

    x = _load_point(args.point)
    t = _time(args.time)
    if args.trace:
        _emit([{"t": float(s), "point": _point_json(assembled_sdr(s, x, args.ring, args.depth))}
               for s in _trace_times(t, args.trace)])
    else:
        _emit(_point_json(assembled_sdr(t, x, args.ring, args.depth)))
    return EXIT_OK


# --------------------------------------------------------------- render

def cmd_render(args) -> int:
    from .render import RenderSpec, write_svg

    spec = RenderSpec(args.subject, n=args.n, size=args.size, delta=args.delta,
                      ring=args.ring, bound=args.bound)
    svg = write_svg(spec, args.out)
    if not args.out:
        sys.stdout.write(svg)
    return EXIT_OK


# ------------------------------------------------------------- selftest

def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    report = run_selftest(args.suite, args.trials, args.seed)
    dest = args.json if isinstance(args.json, str) else None
    if dest == "-" or args.json is True:
        _emit(report)
        return EXIT_OK if report["ok"] else EXIT_FAIL
    if dest:
        with open(dest, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    for suite, checks in report["suites"].items():
        for name, c in checks.items():
            status = "PASS" if c["ok"] else ("KNOWN" if c.get("known_defect") else "FAIL")
            print(f"{status:5s} {suite:12s} {name} ({c['passed']}/{c['passed'] + c['failed']})")
    print("selftest", "ok" if report["ok"] else "FAILED")
    return EXIT_OK if report["ok"] else EXIT_FAIL


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand; the subcommand
    # copies use SUPPRESS so they do not overwrite a value given earlier
    def flags(parser, default, json_flag=True):
        parser.add_argument("--seed", type=int, default=0 if default else argparse.SUPPRESS,
                            help="seed for sampled checks")
        parser.add_argument("--tol", type=float, default=1e-9 if default else argparse.SUPPRESS,
                            help="comparison tolerance")
        if json_flag:
            parser.add_argument("--json", action="store_true",
                                default=False if default else argparse.SUPPRESS,
                                help="machine-readable output")
        return parser

    common = flags(argparse.ArgumentParser(add_help=False), False)
    bare = flags(argparse.ArgumentParser(add_help=False), False, json_flag=False)

    ap = argparse.ArgumentParser(prog="hybridberk",
                                 description="Points, retractions and skeleta of hybrid "
                                             "analytic spaces.")
    flags(ap, True)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate |f(x)|")
    p.add_argument("--point", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", parents=[common], help="disc and region membership of a point")
    p.add_argument("--point", required=True)
    p.add_argument("--disc", help="centre polynomial coefficients, lowest degree first")
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--depth", type=int, default=8, help="schedule depth when --disc is absent")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("retract", parents=[common], help="apply a retraction of the hybrid line")
    p.add_argument("--map", required=True, help="rz | R | cyl | disc:<coeffs> | global | infinity")
    p.add_argument("--time", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--trace", type=int, default=0, help="emit k samples on [0, time]")
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--delta-prime", type=float, default=0.5)
    p.add_argument("--z", default="0", help="base point of rz")
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=cmd_retract)

    p = sub.add_parser("skeleton", parents=[common], help="q and J on affine space over a base ring")
    p.add_argument("--dim", type=int)
    p.add_argument("--base", help="hyb:p or dvr:p, used when the point has no base")
    p.add_argument("--t", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--f")
    p.add_argument("--op", choices=("q", "J"), default="q")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("spectrum", parents=[common], help="primes and points of Z or Z[i]")
    p.add_argument("--ring", choices=("Z", "Zi"), default="Z")
    p.add_argument("--bound", type=int, default=30)
    p.add_argument("--point", help="a base point to locate")
    p.add_argument("--render", help="write the star of branches as SVG")
    p.add_argument("--size", type=int, default=480)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("retract-integers", parents=[common],
                       help="retraction of the line over the integers")
    p.add_argument("--time", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--ring", choices=("Z", "Zi"), default="Z")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--trace", type=int, default=0)
    p.set_defaults(func=cmd_retract_integers)

    p = sub.add_parser("render", parents=[common], help="draw an SVG picture")
    p.add_argument("subject", choices=("trivline", "disc", "spectrumZ"))
    p.add_argument("--n", type=int, default=5, help="branch count for trivline")
    p.add_argument("--size", type=int, default=480)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--ring", choices=("Z", "Zi"), default="Z")
    p.add_argument("--bound", type=int, default=30)
    p.add_argument("--out", help="output path (stdout when absent)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("selftest", parents=[bare], help="run the seeded self-checks")
    p.add_argument("--suite", default="all",
                   choices=("points", "discs", "retractions", "toric", "dedekind", "all"))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--json", nargs="?", const="-", default=argparse.SUPPRESS, metavar="PATH",
                   help="write the JSON report to PATH (stdout when no path is given)")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        where = f" [{e.field}]" if getattr(e, "field", None) else ""
        print(f"error{where}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except NumericError as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except HybridError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
