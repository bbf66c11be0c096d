"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import hecke_moduli as hm
from . import local_higgs as lh
from . import strata as st
from .germ import GermError, format_germ, order, parse_germ
from .oracles import SUITES
from .wps import to_json as point_json


class UsageError(Exception):
    pass


def _ints(text: str) -> list:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from e


def _profile(args) -> st.QDProfile:
    try:
        return st.QDProfile.make(args.genus, _ints(args.zeros), not args.no_assume_sqrt)
    except st.ProfileError as e:
        raise UsageError(f"invalid profile: {e}") from e


def _germ(text: str, trunc: int):
    try:
        return parse_germ(text, default_trunc=trunc)
    except GermError as e:
        raise UsageError(str(e)) from e


def _emit(obj, fmt: str, text_render=None) -> str:
    if fmt == "text" and text_render is not None:
        return text_render(obj)
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


# strata / realpoints -----------------------------------------------------------

def _strata_text(rep: dict) -> str:
    lines = [f"genus {rep['profile']['genus']}, zeros {rep['profile']['mults']}",
             f"prym_dim {rep['numerology']['prym_dim']}, spectral genus {rep['numerology']['spectral_genus']}",
             f"{'D':<16}{'deg':>4}{'dim':>5}{'r1':>4}{'r2':>4}{'real':>10}"]
    for s in rep["strata"]:
        real = "-" if s["real_points"] is None else str(s["real_points"])
        lines.append(f"{str(s['D']):<16}{s['deg']:>4}{s['dim']:>5}{s['r1']:>4}{s['r2']:>4}{real:>10}")
    lines.append(f"classification: {rep['classification'].get('classification')}")
    lines.append(f"global fibre: {rep['global_fibre']}")
    lines += [f"warning: {w}" for w in rep["warnings"]]
    return "\n".join(lines) + "\n"


def run_strata(args) -> tuple:
    p = _profile(args)
    if args.dot or args.format == "dot":
        return 0, st.poset_dot(p)
    return 0, _emit(st.report(p), args.format, _strata_text)


def run_realpoints(args) -> tuple:
    p = _profile(args)
    try:
        if args.D:
            D = st.HiggsDivisor(tuple(_ints(args.D)))
            if len(D.coeffs) != p.n or any(
                    d < 0 or 2 * d > m for d, m in zip(D.coeffs, p.mults)):
                raise UsageError("divisor must satisfy 0 <= D_i <= floor(m_i/2)")
            out = {"D": list(D.coeffs), "real_points": st.count_real_points(p, D)}
        else:
            total = st.total_real_points(p)
            out = {"total_real_points": total,
                   "per_stratum": [[list(s.divisor.coeffs), s.real_points] for s in st.enumerate_strata(p)]}
            if p.n_even == 0:
                out["all_odd_closed_form"] = st.all_odd_closed_form(p)
            d = st.single_even_shape(p)
            if d is not None:
                out["printed_closed_form"] = st.single_even_printed(p.genus, d)
                out["derived_closed_form"] = st.single_even_derived(p.genus, d)
                if out["printed_closed_form"] != total:
                    out["warning"] = "printed (4d-3) closed form disagrees with the stratum sum"
    except st.NotCovered as e:
        raise UsageError(str(e)) from e
    out["formula"] = "2^(2g-2+n-n0) per stratum"
    return 0, _emit(out, args.format)


# Hecke parameters ----------------------------------------------------------------

def run_canon(args) -> tuple:
    d = args.d
    if args.even:
        if d <= 0:
            raise UsageError("m must be positive")
        a, b = _germ(args.a, d), _germ(args.b, d)
        try:
            p = hm.EvenHeckeParam.make(d, a, b)
        except GermError as e:
            raise UsageError(str(e)) from e
        out = {"m": d, "a": format_germ(p.a), "b": format_germ(p.b), "n": p.n,
               "zero_class": p.is_zero_class,
               "degeneration_type": list(hm.even_degeneration_type(p))}
        try:
            out["extension_datum"] = format_germ(hm.even_extension_datum(p))
        except hm.DegenerateDatum as e:
            out["extension_datum"] = None
            out["degenerate"] = str(e)
        return 0, _emit(out, args.format)
    if d <= 0 or d % 2 == 0:
        raise UsageError("d must be odd for this subcommand; even zeros use --even")
    a, b = _germ(args.a, d), _germ(args.b, d)
    try:
        p = hm.HeckeParam.make(d, a, b)
    except GermError as e:
        raise UsageError(str(e)) from e
    out = {"d": d, "stratum": hm.stratum_of(p)}
    if p.is_zero_class:
        out["class"] = "[0]"
        return 0, _emit(out, args.format)
    c = hm.canonicalize(p)
    out["canonical"] = {"a": format_germ(c.a), "b": format_germ(c.b)}
    if 2 * p.n == d - 1:
        out["bottom_stratum_point"] = True
    else:
        out["u"] = [str(x) for x in hm.u_coordinate(p)]
    images = {}
    for chart in hm.charts(d):
        if chart.kind != "V" and hm.in_chart(chart, p):
            images[chart.label()] = point_json(hm.chart_image(chart, p))
    out["chart_images"] = images
    return 0, _emit(out, args.format)


def run_atlas(args) -> tuple:
    d = args.d
    if d <= 0 or d % 2 == 0:
        raise UsageError("d must be a positive odd integer")
    out = {"d": d, "strata": hm.strata_count(d), "charts": hm.atlas(d)}
    if d == 5:
        out["order5_sign_check"] = hm.order5_u_sign()
    return 0, _emit(out, args.format)


def run_higgs(args) -> tuple:
    if args.matrix:
        try:
            m = lh.parse_matrix(args.matrix)
            D, lam, gauge = lh.normal_form(lh.LocalHiggsData(m, args.lambda_order))
        except GermError as e:
            raise UsageError(str(e)) from e
        nf = lh.conjugate(m, gauge)
        target = lh.companion_target(m, D)
        ok = nf.agrees(target, min(nf.trunc, target.trunc))
        out = {"D": D, "lambda": lam, "gauge": lh.format_matrix(gauge),
               "normal_form": lh.format_matrix(nf), "companion_ok": ok}
        return (0 if ok else 1), _emit(out, args.format)
    if args.d is None or args.a is None or args.b is None:
        raise UsageError("need --matrix, or --d with --a and --b")
    d = args.d
    T = args.trunc or lh.default_trunc(d)
    a, b = _germ(args.a, T), _germ(args.b, T)
    try:
        if args.even:
            m = lh.even_hecke_higgs(d, a, b)
        else:
            m = lh.hecke_higgs(d, a, b)
        o = lh.transition_oracle(d, a, b)
        plus, minus = lh.eigen_twist_orders(m, d)
        vd = lh.vanishing_divisor(m)
    except GermError as e:
        raise UsageError(str(e)) from e
    agree = m.agrees(o)
    out = {"matrix": lh.format_matrix(m), "oracle_agrees": agree,
           "vanishing_divisor": vd, "eigen_twist": [plus, minus],
           "min_order": int(min(order(a), order(b)))}
    return (0 if agree else 1), _emit(out, args.format)


def run_oracle(args) -> tuple:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}")
    kw = {"seed": args.seed}
    if args.cases is not None:
        kw["cases"] = args.cases
    rec = SUITES[args.suite](**kw)
    return (0 if rec["pass"] else 1), _emit(rec, "json")


# entry point ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hfl", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("json", "text")):
        p.add_argument("--format", choices=choices, default="json")

    p = sub.add_parser("strata", help="stratification report for a zero profile")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--zeros", required=True, help="zero orders, e.g. 3,1")
    p.add_argument("--no-assume-sqrt", action="store_true",
                   help="do not assert that q2 has no global square root")
    p.add_argument("--dot", action="store_true", help="emit the degeneration poset as DOT")
    fmt(p, ("json", "text", "dot"))
    p.set_defaults(func=run_strata)

    p = sub.add_parser("realpoints", help="real-point counts")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--zeros", required=True)
    p.add_argument("--D", help="Higgs divisor; omit for the total")
    p.add_argument("--no-assume-sqrt", action="store_true")
    fmt(p, ("json",))
    p.set_defaults(func=run_realpoints)

    p = sub.add_parser("canon", help="canonical form and chart images of a Hecke parameter")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--even", action="store_true", help="treat --d as m at an even zero")
    fmt(p, ("json",))
    p.set_defaults(func=run_canon)

    p = sub.add_parser("heck-atlas", help="charts and invariant polynomials for order d")
    p.add_argument("--d", type=int, required=True)
    fmt(p, ("json",))
    p.set_defaults(func=run_atlas)

    p = sub.add_parser("higgs", help="Hecke-transformed Higgs field or local normal form")
    p.add_argument("--d", type=int)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--even", action="store_true")
    p.add_argument("--trunc", type=int)
    p.add_argument("--matrix", help="four germs in row-major order, ';'-joined")
    p.add_argument("--lambda", dest="lambda_order", type=int, default=0)
    fmt(p, ("json",))
    p.set_defaults(func=run_higgs)

    p = sub.add_parser("oracle", help="run a randomized or exhaustive property suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int)
    p.set_defaults(func=run_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        code, text = args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
