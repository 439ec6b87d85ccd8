"""Command-line front end.

Commands: dims, kac, exp, check-conjecture, shuffle, pair, pbw,
rmatrix-check.  All reports are canonical JSON with exact rational strings;
exit code 0 means success, 2 means the computation ran fine but a verified
conjecture instance failed (a finding), 1 means an operational error.
QSHUF_RESOURCE_CEILING overrides the monomial ceiling.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .algebra import MINUS, PLUS, ShuffleAlgebra, ShuffleElement
from .elementio import element_to_obj, load_element
from .fields import make_field
from .harness import conjecture_report, dims_report
from .kac import TruncSeries, kac_exp_series, kac_hua, plethystic_exp
from .quiver import Quiver
from .report import (
    Telemetry,
    emit,
    frac_str,
    key_str,
    render_conjecture_figures,
    render_dims_figures,
    render_kac_figures,
)
from .slopes import DEFAULT_CEILING


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _parse_fracs(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in text.split(","))


def _parse_word(text: str, side: str):
    from .hopf import GeneratorWord

    letters = []
    for part in text.split(","):
        i, d = part.split(":")
        letters.append((int(i), int(d)))
    return GeneratorWord(side, tuple(letters))


def _ceiling() -> int:
    env = os.environ.get("QSHUF_RESOURCE_CEILING")
    return int(env) if env else DEFAULT_CEILING


def _load_quiver(path: str) -> Quiver:
    return Quiver.from_json(path)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qshuf", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, slope=False, theta=False, dim=False, upto=False, window=False):
        p.add_argument("--quiver", required=True, help="quiver JSON file")
        p.add_argument("--seed", type=int, default=None, help="specialization seed (default 7)")
        p.add_argument("--trials", type=int, default=3)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--exact", action="store_true", help="exact rational-function mode")
        p.add_argument("--out", help="write the JSON report here")
        if slope:
            p.add_argument("--slope", default=None, help='slope vector, e.g. "0,0"')
        if theta:
            p.add_argument("--theta", default=None, help='direction vector, e.g. "1,1"')
        if dim:
            p.add_argument("--dim", required=True, help='dimension vector, e.g. "2,1"')
        if upto:
            p.add_argument("--upto", required=True, help='dimension box, e.g. "3,3"')
        if window:
            p.add_argument("--window", type=int, default=3)
            p.add_argument("--hbound", type=int, default=2)

    p = sub.add_parser("dims", help="graded dimensions of a slope subalgebra")
    common(p, slope=True, upto=True)
    p.add_argument("--figures", help="also render CSV + PNG into this directory")

    p = sub.add_parser("kac", help="Kac polynomial of a dimension vector")
    common(p, dim=True)
    p.add_argument("--figures", help="also render CSV + PNG into this directory")

    p = sub.add_parser("exp", help="plethystic exponential of the Kac series")
    common(p, upto=True)
    p.add_argument("--input", help="optional JSON series {coeffs: {n: d}} to Exp instead")

    p = sub.add_parser("check-conjecture", help="compare wheel-kernel dims with Exp[Kac]")
    common(p, upto=True)
    p.add_argument("--figures", help="also render CSV + PNG into this directory")

    p = sub.add_parser("shuffle", help="shuffle product of two elements")
    common(p)
    p.add_argument("--input", nargs=2, required=True, metavar=("F.json", "G.json"))

    p = sub.add_parser("pair", help="Hopf pairing of an element with a word")
    common(p)
    p.add_argument("--input", required=True, help="plus-side element JSON")
    p.add_argument("--word", required=True, help='minus word, e.g. "0:1,0:-1"')

    p = sub.add_parser("pbw", help="slope factorization of an element")
    common(p, slope=True, theta=True)
    p.add_argument("--input", required=True, help="plus-side element JSON")

    p = sub.add_parser("rmatrix-check", help="windowed R-matrix factorization check")
    common(p, slope=True, theta=True, window=True)

    return ap


def _slope_of(args, quiver: Quiver):
    if getattr(args, "slope", None):
        m = _parse_fracs(args.slope)
    else:
        m = tuple(Fraction(0) for _ in range(quiver.vertex_count))
    if len(m) != quiver.vertex_count:
        raise ValueError(f"slope needs {quiver.vertex_count} components")
    return m


def _theta_of(args, quiver: Quiver):
    if getattr(args, "theta", None):
        th = _parse_fracs(args.theta)
    else:
        th = tuple(Fraction(1) for _ in range(quiver.vertex_count))
    if len(th) != quiver.vertex_count or any(x <= 0 for x in th):
        raise ValueError("theta needs positive components, one per vertex")
    return th


def main(argv: list[str] | None = None) -> int:
    tele = Telemetry()
    args = build_parser().parse_args(argv)
    try:
        code = _dispatch(args)
    except (ValueError, OSError, ArithmeticError, RuntimeError) as exc:
        print(f"qshuf: error: {exc}", file=sys.stderr)
        return 1
    finally:
        tele.dump()
    return code


def _dispatch(args) -> int:
    if args.exact and args.seed is not None:
        raise ValueError("--exact and --seed are mutually exclusive")
    if args.seed is None:
        args.seed = 7
    quiver = _load_quiver(args.quiver)
    ceiling = _ceiling()
    cmd = args.command

    if cmd == "dims":
        m = _slope_of(args, quiver)
        report = dims_report(
            quiver, m, _parse_ints(args.upto), args.seed, args.trials, args.jobs, args.exact, ceiling
        )
        emit(report, args.out)
        if args.figures:
            render_dims_figures(report, args.figures)
        return 0 if report["agreement"] else 1

    if cmd == "kac":
        n = _parse_ints(args.dim)
        kp = kac_hua(quiver, n)
        report = {
            "command": "kac",
            "quiver": {"vertices": quiver.vertex_count, "edges": [list(e) for e in quiver.edges]},
            "n": list(n),
            "poly": kp.coefficients,
            "at_one": kp.at_one(),
        }
        emit(report, args.out)
        if args.figures:
            render_kac_figures(report, args.figures)
        return 0

    if cmd == "exp":
        box = _parse_ints(args.upto)
        if args.input:
            import json as _json

            with open(args.input, "r", encoding="utf-8") as fh:
                data = _json.load(fh)
            coeffs = {tuple(int(x) for x in k.split(",")): int(v) for k, v in data["coeffs"].items()}
            series = plethystic_exp(TruncSeries(box, coeffs))
            source = "input"
        else:
            series = kac_exp_series(quiver, box)
            source = "kac"
        report = {
            "command": "exp",
            "source": source,
            "upto": list(box),
            "coeffs": {key_str(n): c for n, c in sorted(series.coeffs.items())},
        }
        emit(report, args.out)
        return 0

    if cmd == "check-conjecture":
        report = conjecture_report(
            quiver, _parse_ints(args.upto), args.seed, args.trials, args.jobs, ceiling
        )
        emit(report, args.out)
        if args.figures:
            render_conjecture_figures(report, args.figures)
        if not report["agreement"]:
            return 1
        return 0 if report["all_equal"] else 2

    field = make_field(quiver, seed=None if args.exact else args.seed, exact=args.exact)
    algebra = ShuffleAlgebra(quiver, field)

    if cmd == "shuffle":
        F = load_element(args.input[0], field)
        G = load_element(args.input[1], field)
        prod = algebra.shuffle_product(F, G)
        report = {"command": "shuffle", "result": element_to_obj(prod)}
        emit(report, args.out)
        return 0

    if cmd == "pair":
        from .hopf import pair_poly_word

        F = load_element(args.input, field)
        word = _parse_word(args.word, MINUS)
        val = pair_poly_word(algebra, F, word)
        report = {
            "command": "pair",
            "word": [list(l) for l in word.letters],
            "value": frac_str(val),
        }
        emit(report, args.out)
        return 0

    if cmd == "pbw":
        from .hopf import pbw_decompose

        F = load_element(args.input, field)
        m = _slope_of(args, quiver)
        th = _theta_of(args, quiver)
        terms = pbw_decompose(algebra, F, m, th, ceiling)
        report = {
            "command": "pbw",
            "slope": [str(x) for x in m],
            "theta": [str(x) for x in th],
            "terms": [
                {
                    "coeff": frac_str(c),
                    "factors": [
                        {"r": str(r), "element": element_to_obj(ShuffleElement(PLUS, poly))}
                        for r, poly in factors
                    ],
                }
                for c, factors in terms
            ],
        }
        emit(report, args.out)
        return 0

    if cmd == "rmatrix-check":
        from .hopf import rprime_window_check

        m = _slope_of(args, quiver)
        th = _theta_of(args, quiver)
        report = rprime_window_check(algebra, m, th, args.hbound, args.window, ceiling)
        report["command"] = "rmatrix-check"
        report["seed"] = args.seed
        emit(report, args.out)
        return 0 if report["ok"] else 2

    raise ValueError(f"unknown command {cmd}")


if __name__ == "__main__":
    sys.exit(main())
