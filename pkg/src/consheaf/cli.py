"""Batch front end: ``consheaf <command> [files] [flags]``.

Every command prints one JSON report on stdout.  Exit status is 0 on
success, 1 when a verification check fails and 2 on malformed input.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import calculus, circle, microsupport, orbit, serialize, tamarkin, verify, zigzag
from .errors import ConsheafError, MalformedInput
from .germ import compose, fourier, kernels
from .intervals import Interval

EXIT_OK, EXIT_FAILED, EXIT_MALFORMED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def _rational(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"not a rational number: {s!r}") from None


def _vector(s):
    return [_rational(v) for v in s.split(",") if v.strip()]


# ---------------------------------------------------------------- commands


def _barcode(path, args):
    return serialize.barcode_from_json(serialize.load(path), args.field)


def cmd_decompose(args):
    rep = serialize.zigzag_from_json(serialize.load(args.rep), args.field)
    return zigzag.gabriel_decompose(rep).to_json()


def cmd_ss(args):
    return microsupport.ss(_barcode(args.barcode, args)).to_json()


def cmd_hom(args):
    F, G = _barcode(args.source, args), _barcode(args.target, args)
    return {"hom": calculus.hom_complex(F, G).to_json()}


def cmd_energy(args):
    return tamarkin.displacement_energy(_barcode(args.barcode, args)).to_json()


def cmd_convolve(args):
    return tamarkin.convolve(_barcode(args.barcode, args), Interval.parse(args.kernel)).to_json()


def cmd_tau(args):
    F = _barcode(args.barcode, args)
    out = {"tau_nonneg": tamarkin.is_tau_nonneg(F)}
    if args.c is not None:
        if not out["tau_nonneg"]:
            raise MalformedInput("tau_c needs a tau>=0 barcode")
        c = _rational(args.c)
        out["c"] = str(c)
        out["nonzero_bars"] = [
            {"interval": I.to_json(), "degree": d, "multiplicity": m}
            for I, d, m in F
            if tamarkin.tau_component_nonzero(I, c)
        ]
    return out


def cmd_circle_decompose(args):
    C = _rational(args.circumference)
    rep = serialize.cyclic_from_json(serialize.load(args.rep), args.field, C)
    return circle.decompose_circle(rep).to_json()


def cmd_orbit_hom(args):
    F, G = _barcode(args.source, args), _barcode(args.target, args)
    return {"orbit_hom_dim": orbit.orbit_hom_dim(F, G)}


def cmd_germ_compose(args):
    K1 = serialize.indicator_from_json(serialize.load(args.first))
    K2 = serialize.indicator_from_json(serialize.load(args.second))
    box = None if args.box is None else _rational(args.box)
    stalk = compose.compose_germ(K1, K2, _vector(args.x), _vector(args.z), box)
    return {"stalk": stalk.to_json()}


def cmd_square_kernel(args):
    p = _vector(args.point)
    if len(p) != 4:
        raise MalformedInput("--point takes four rationals x1,x2,y1,y2")
    stratum = kernels.square_stratum(args.m, p)
    return {
        "m": args.m,
        "point": [str(v) for v in p],
        "stratum": None if stratum is None else f"{stratum[0]}_{stratum[1]}",
        "stalk": kernels.square_kernel_stalk(args.m, p).to_json(),
    }


def cmd_fourier_sato(args):
    F = serialize.conic_from_json(serialize.load(args.sheaf), args.field)
    return fourier.fourier_sato_1d(F, antipodal=args.antipodal).to_json()


def cmd_verify(args):
    results = verify.run_suite(args.suite, samples=args.samples, seed=args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark}  {r.name:<{width}}  {r.anchor}  ({r.detail})", file=sys.stderr)
    return {
        "suite": args.suite,
        "seed": args.seed,
        "passed": all(r.passed for r in results),
        "checks": [r.to_json() for r in results],
    }


# ---------------------------------------------------------------- parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="2", help="prime p or 'Q' (default 2); a field in the input file wins")
    p = _Parser(prog="consheaf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, *files, **kw):
        s = sub.add_parser(name, parents=[common], **kw)
        for f in files:
            s.add_argument(f)
        s.set_defaults(func=fn)
        return s

    add("decompose", cmd_decompose, "rep", help="barcode of a zigzag representation")
    add("ss", cmd_ss, "barcode", help="microsupport of a barcode")
    add("hom", cmd_hom, "source", "target", help="graded Hom between barcodes")
    add("energy", cmd_energy, "barcode", help="displacement energy")
    s = add("convolve", cmd_convolve, "barcode", help="convolution with an interval kernel")
    s.add_argument("--kernel", default="[0,inf)")
    s = add("tau", cmd_tau, "barcode", help="tau>=0 test and the bars where tau_c is nonzero")
    s.add_argument("--c", default=None)
    s = add("circle-decompose", cmd_circle_decompose, "rep", help="bars and monodromy of a circle representation")
    s.add_argument("--circumference", default="1")
    add("orbit-hom", cmd_orbit_hom, "source", "target", help="Hom in the orbit category (GF(2))")
    s = add("germ-compose", cmd_germ_compose, "first", "second", help="stalk of a kernel composition")
    s.add_argument("--x", required=True, help="comma-separated rationals")
    s.add_argument("--z", required=True, help="comma-separated rationals")
    s.add_argument("--box", default=None, help="truncation radius for unbounded cells")
    s = add("square-kernel", cmd_square_kernel, help="stalk of K_m at a point of R^4")
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--point", required=True)
    s = add("fourier-sato", cmd_fourier_sato, "sheaf", help="Fourier-Sato transform of a conic sheaf on R")
    s.add_argument("--antipodal", action="store_true")
    s = add("verify", cmd_verify, help="run the property suites")
    s.add_argument("--suite", default="all", choices=["all", *verify.SUITES])
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    return p


def run(argv=None):
    """``(exit_code, report)`` without printing."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify" and args.samples is not None and args.samples < 1:
            raise MalformedInput("--samples must be positive")
        result = args.func(args)
    except ConsheafError as exc:
        return EXIT_MALFORMED, {"schema_version": serialize.SCHEMA_VERSION, "error": type(exc).__name__, "message": str(exc)}
    code = EXIT_FAILED if args.command == "verify" and not result["passed"] else EXIT_OK
    return code, serialize.report(args.command, result)


def main(argv=None):
    try:
        code, rep = run(argv)
    except SystemExit as exc:  # --help
        return exc.code
    print(serialize.dumps(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
