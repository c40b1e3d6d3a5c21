"""``lct-kit`` command line front end.

Exit status: 0 on success, 1 when a verified inequality or property fails
(the failing instance is printed as JSON on stderr), 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, cones, jets, newton, rigidity, thresholds
from .ideal import IdealError, colength, ideal_from_json, parse_rat
from .report import jsonable

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc})") from None


def _load_ideal(args):
    data = _load_json(args.ideal)
    ideal, was_minimal = ideal_from_json(data, strict=args.strict)
    if not was_minimal:
        print(f"warning: generators were not minimal; using {ideal}", file=sys.stderr)
    return ideal, data


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(jsonable(payload), indent=2))
    else:
        for line in lines:
            print(line)


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def cmd_lct(args) -> int:
    ideal, _ = _load_ideal(args)
    c = thresholds.lct(ideal)
    _emit(args, {"ideal": ideal.to_json(), "lct": c}, [str(c)])
    return EXIT_OK


def cmd_newton(args) -> int:
    ideal, _ = _load_ideal(args)
    P = newton.build_polyhedron(ideal)
    payload = {
        "ideal": ideal.to_json(),
        "facets": [list(w) for w in P.facets],
        "coordinate_facets": list(P.coordinate_facets),
        "vertices": [list(v) for v in P.vertices],
    }
    lines = [f"facet {_fmt_vec(w)}" for w in P.facets]
    lines += [f"vertex {_fmt_vec(v)}" for v in P.vertices]
    if ideal.is_zero_dimensional:
        cov = newton.covolume(P)
        e = newton.samuel_multiplicity(ideal)
        payload.update(covolume=cov, samuel_multiplicity=e)
        lines += [f"covolume {cov}", f"samuel_multiplicity {e}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_colength(args) -> int:
    ideal, _ = _load_ideal(args)
    length = colength(ideal)
    _emit(args, {"ideal": ideal.to_json(), "colength": length}, [str(length)])
    return EXIT_OK


def cmd_samuel(args) -> int:
    ideal, _ = _load_ideal(args)
    e = newton.samuel_multiplicity(ideal)
    _emit(args, {"ideal": ideal.to_json(), "samuel_multiplicity": e}, [str(e)])
    return EXIT_OK


def cmd_pair_lt(args) -> int:
    ideal, data = _load_ideal(args)
    try:
        pair = thresholds.PairSpec.make(ideal, data.get("b", ["0"] * ideal.n), data["mu"])
    except KeyError:
        raise UsageError("pair JSON needs a \"mu\" entry") from None
    lt = thresholds.is_log_terminal_pair(pair)
    val, w = min(thresholds.pair_facet_values(pair))
    payload = {"pair": pair.to_json(), "log_terminal": lt, "min_facet_value": val, "facet": list(w)}
    lines = [
        "log terminal" if lt else "not log terminal",
        f"min facet value {val} at {_fmt_vec(w)}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_mult_ideal(args) -> int:
    ideal, _ = _load_ideal(args)
    res = thresholds.multiplier_ideal(ideal, args.c)
    payload = res.ideal.to_json()
    payload.update(c=res.c, trivial=res.trivial)
    _emit(args, payload, [str(res.ideal)])
    return EXIT_OK


def cmd_jets(args) -> int:
    ideal, _ = _load_ideal(args)
    m_max = args.m_max if args.m_max is not None else jets.default_m_max(ideal)
    prof = jets.contact_profile(ideal, m_max)
    lines = ["m\tweight\twitness\tratio"]
    lines += [f"{e.m}\t{e.weight}\t{_fmt_vec(e.witness)}\t{e.ratio}" for e in prof.entries]
    lines.append(f"lct {prof.lct()} (first reached at m = {prof.argmin()})")
    if prof.min_at_m_max:
        lines.append("note: minimum first reached at m_max")
    _emit(args, prof.to_json(), lines)
    return EXIT_OK


def cmd_cone_bound(args) -> int:
    ideal, _ = _load_ideal(args)
    r = cones.cone_bound_report(ideal, args.degree)
    e = "inf" if r.e == thresholds.INFINITE_CODIM else r.e
    lines = [f"d {r.d}", f"lct {r.c}", f"e {e}"]
    if r.bound_holds is not None:
        lines.append(f"lct >= e/d: {r.c} >= {Fraction(r.e, r.d)} {'holds' if r.bound_holds else 'FAILS'}")
    if r.equality:
        lines.append(f"equality; cone over variables {list(r.cone_variables or [])}; audit {'ok' if r.audit_ok else 'FAILED'}")
    lines.append("note: non-log-terminal locus taken as the zero locus of the multiplier ideal at lct")
    payload = {"ideal": ideal.to_json(), **r.to_json()}
    _emit(args, payload, lines)
    if r.bound_holds is False or not r.audit_ok:
        print(json.dumps(payload), file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_example(args) -> int:
    rows = cones.projection_example(args.k, args.t_max, args.family)
    lines = ["t\tlct\tlength\tbound\tpushforward_lct\tratio"]
    lines += [
        f"{r.t}\t{r.c}\t{r.length}\t{r.paper_bound}\t{r.pushforward_lct}\t{r.ratio}" for r in rows
    ]
    payload = {"family": args.family, "k": args.k, "t_max": args.t_max, "rows": [r.to_json() for r in rows]}
    if args.family == "power":
        table = cones.sharpness_limit_table(args.k, args.t_max)
        payload["sharpness"] = [{"t": t, "ratio": q} for t, q in table]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    sampler = bounds.InstanceSampler(
        seed=args.seed,
        n_range=(1, args.n_max),
        exponent_range=(1, args.deg_max),
        degree_range=(1, min(args.deg_max, 5)),
    )
    summary = bounds.run_suite(sampler, args.suite, args.trials)
    lines = [f"suite {summary.suite}  seed {args.seed}  trials {summary.trials}",
             "check\tchecked\tskipped\tfailed"]
    lines += [f"{name}\t{c}\t{s}\t{f}" for name, (c, s, f) in sorted(summary.by_check.items())]
    if summary.gate_rate is not None:
        lines.append(f"gate pass rate {summary.gate_rate}")
    lines.append("PASS" if summary.ok else f"FAIL ({len(summary.failures)} failures)")
    _emit(args, summary.to_json(), lines)
    for r in summary.failures:
        print(json.dumps(r.to_json()), file=sys.stderr)
    return EXIT_OK if summary.ok else EXIT_CHECK_FAILED


def cmd_rigidity(args) -> int:
    rows = rigidity.rigidity_range(args.n_min, args.n_max)
    lines = ["N\tcase\te\tcoeff\tmargin\tcertified"]
    lines += [
        f"{r.N}\t{r.case}\t{r.codim}\t{r.lct_lower_bound_coeff}\t{r.margin}\t{'yes' if r.contradiction else 'no'}"
        for r in rows
    ]
    lines.append("margin >= 0 certifies: c < 1/r strictly, so c^2 r^2 >= 4*coeff >= 1 is impossible")
    payload = {"rows": [r.to_json() for r in rows], "narrative": rigidity.NARRATIVE}
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--strict", action="store_true", help="reject non-minimal generator lists")

    parser = _Parser(prog="lct-kit", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def ideal_cmd(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("ideal", help="ideal JSON file")
        p.set_defaults(func=func)
        return p

    ideal_cmd("lct", cmd_lct, "log canonical threshold")
    ideal_cmd("newton", cmd_newton, "Newton polyhedron, covolume and multiplicity")
    ideal_cmd("colength", cmd_colength, "length of R/I")
    ideal_cmd("samuel", cmd_samuel, "Samuel multiplicity")
    ideal_cmd("pair-lt", cmd_pair_lt, "log terminality of a monomial pair (JSON adds b and mu)")
    p = ideal_cmd("mult-ideal", cmd_mult_ideal, "multiplier ideal J(I^c)")
    p.add_argument("--c", type=_rational, required=True)
    p = ideal_cmd("jets", cmd_jets, "contact-order profile and jet-scheme threshold")
    p.add_argument("--m-max", type=int, default=None)
    p = ideal_cmd("cone-bound", cmd_cone_bound, "lct >= e/d for a homogeneous ideal")
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("example", parents=[common], help="example families and projection bounds")
    p.add_argument("--family", choices=cones.FAMILIES, default="power")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t-max", type=int, default=20)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("verify", parents=[common], help="seeded randomized verification suites")
    p.add_argument("--suite", choices=bounds.SUITES, required=True)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--deg-max", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rigidity", parents=[common], help="superrigidity certificate table")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=20)
    p.set_defaults(func=cmd_rigidity)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"lct-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IdealError, ValueError) as exc:
        print(f"lct-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"lct-kit: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
