"""Command-line interface.

Subcommands dispatch thinly onto the library: `check` runs a scenario file
end to end, the others expose individual pipelines (Hilbert slices, the
ratio threshold, Chow expansions, the constants ledger, filtrations, and
the position check).  Exit codes: 0 success, 1 when a check produced a
Violation verdict, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from math import lcm

from .chow import (
    chow_height,
    coefficient_bound_report,
    expand_skew,
    psigma_count_report,
)
from .effective_constants import (
    ConstantInputs,
    assemble_constants,
    choose_m,
    lcm_reduction,
)
from .errors import ToolkitError
from .filtration import (
    build_filtration,
    exponent_sum,
    filtration_inequality_check,
)
from .function_field import Place, ProjectivePoint
from .graded_ideal import (
    IdealGenerators,
    check_subgeneral_position,
    graded_piece,
    hilbert_function,
    quotient_monomial_basis,
)
from .harness import (
    emit_report,
    fmt_q,
    has_violation,
    load_scenario,
    load_scenario_dict,
    run_check,
)
from .hilbert_bounds import scan_ratio_window, threshold_a_eps
from .multipoly import format_monomial, parse_poly
from .parsing import parse_rational


def _infer_num_vars(texts, explicit):
    if explicit is not None:
        return explicit
    top = -1
    for text in texts:
        for match in re.finditer(r"X(\d+)", text):
            top = max(top, int(match.group(1)))
    if top < 0:
        raise ToolkitError("cannot infer variable count; pass --num-vars")
    return top + 1


def _parse_gens(arg: str, num_vars) -> IdealGenerators:
    texts = [s for s in (part.strip() for part in arg.split(";")) if s]
    nv = _infer_num_vars(texts, num_vars)
    return IdealGenerators.parse(nv, texts)


def _emit(payload: dict, args) -> None:
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _cmd_check(args) -> int:
    scenario = load_scenario(args.file)
    report = run_check(scenario)
    text = emit_report(report, args.format)
    sys.stdout.write(text)
    if args.report:
        emit_report(report, "json", args.report)
    return 1 if has_violation(report) else 0


def _cmd_hilbert(args) -> int:
    gens = _parse_gens(args.gens, args.num_vars)
    piece = graded_piece(gens, args.m)
    h = hilbert_function(gens, args.m)
    basis = quotient_monomial_basis(gens, args.m)
    print(f"degree m = {args.m}: rank {piece.rank}, H(m) = {h}")
    print("quotient monomial basis:", " ".join(
        format_monomial(mono) or "1" for mono in basis.monomials
    ))
    _emit(
        {
            "m": args.m,
            "rank": piece.rank,
            "hilbert": h,
            "quotient_basis": [list(mono) for mono in basis.monomials],
        },
        args,
    )
    return 0


def _cmd_bounds_a_eps(args) -> int:
    eps = Fraction(args.eps)
    a = threshold_a_eps(args.n, args.delta, args.d, eps)
    ok = scan_ratio_window(args.n, args.delta, args.d, eps, a, args.window)
    print(f"a_eps = {a}")
    print(
        f"scan of [{a}, {a + args.window}] against the extremal Hilbert "
        f"function: {'pass' if ok else 'FAIL'}"
    )
    _emit({"a_eps": a, "scan_window": args.window, "scan_ok": ok}, args)
    return 0 if ok else 1


def _cmd_chow(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "variety" not in data:
        # bare variety file: {"ambient_dim": M, "kind": ..., ...}
        variety = {k: v for k, v in data.items() if k != "ambient_dim"}
        data = {
            "ambient_dim": data["ambient_dim"],
            "variety": variety,
            "divisors": [{"poly": "X0", "degree": 1}],
            "N": 1,
            "places": ["t"],
            "epsilon": "1",
            "points": [],
        }
    scenario = load_scenario_dict(data)
    form = scenario.chow_form
    expansion = expand_skew(form)
    counts = psigma_count_report(expansion)
    print(
        f"Chow form: {form.blocks} blocks of {form.vars_per_block} vars, "
        f"degree {form.block_degree} per block, {len(form.terms)} terms"
    )
    print(f"height h(X) = {fmt_q(chow_height(form))}")
    print(
        f"skew expansion: {counts.actual_count} nonzero P_sigma; "
        f"stated bound {counts.stated_bound}; "
        f"combinatorial monomial count {counts.combinatorial_count}"
    )
    bound_rows = coefficient_bound_report(form, expansion)
    for place, e_form, e_min, ok in bound_rows:
        print(
            f"  place {place}: e_p(F_X) = {e_form}, min_sigma e_p(P_sigma) = "
            f"{e_min} ({'ok' if ok else 'VIOLATED'})"
        )
    _emit(
        {
            "blocks": form.blocks,
            "vars_per_block": form.vars_per_block,
            "block_degree": form.block_degree,
            "terms": len(form.terms),
            "height": fmt_q(chow_height(form)),
            "sigma_actual": counts.actual_count,
            "sigma_stated_bound": counts.stated_bound,
            "sigma_combinatorial": counts.combinatorial_count,
        },
        args,
    )
    return 0


def _cmd_constants(args) -> int:
    with open(args.inputs, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    d_i = tuple(data["d_i"])
    d = lcm(*d_i)
    eps = Fraction(data["epsilon"])
    n, delta = data["n"], data["delta"]
    a_eps = threshold_a_eps(n, delta, d, eps / data["N"])
    m = data.get("m") or choose_m(a_eps, d, n, delta)
    inputs = ConstantInputs(
        n=n,
        delta=delta,
        M=data["M"],
        N=data["N"],
        q=data["q"],
        d_i=d_i,
        d=d,
        epsilon=eps,
        s_card=data["s_card"],
        s_degree=data["s_degree"],
        h_fx=Fraction(data.get("h_fx", "0")),
        h_q_family=Fraction(data.get("h_q_family", "0")),
        h_q_i=tuple(Fraction(h) for h in data.get("h_q_i", ["0"] * data["q"])),
        e_s_term=Fraction(data.get("e_s_term", "0")),
        c1=Fraction(data.get("c1", "0")),
        c1_prime=Fraction(data.get("c1_prime", "0")),
        m=m,
    )
    table = {int(k): v for k, v in data.get("H_table", {}).items()}
    constants = assemble_constants(inputs, table, a_eps=a_eps)
    rows = [
        ("a_eps", a_eps),
        ("m", constants.m),
        ("b", constants.b),
        ("excess_const", fmt_q(constants.excess_const)),
        ("b1", fmt_q(constants.b1)),
        ("b2", fmt_q(constants.b2)),
        ("b3", fmt_q(constants.b3)),
        ("S_sum", constants.S_sum),
        ("c_eps", fmt_q(constants.c_eps)),
        ("c_prime_eps", fmt_q(constants.c_prime_eps)),
    ]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k.rjust(width)} = {v}")
    _emit({k: v for k, v in rows}, args)
    return 0


def _cmd_filtration(args) -> int:
    gens_texts = [s for s in (p.strip() for p in args.gens.split(";")) if s]
    nv = _infer_num_vars(gens_texts + [args.q_poly], args.num_vars)
    gens = IdealGenerators.parse(nv, gens_texts)
    q_poly = parse_poly(args.q_poly, nv)
    basis = build_filtration(gens, args.m, q_poly)
    print(f"filtration of degree {args.m} by {args.q_poly} (d = {q_poly.degree}):")
    print(f"  level dims W_i: {list(basis.level_dims)}")
    for i, g in basis.entries:
        print(f"  i = {i}: g = {format_monomial(g) or '1'}")
    rep = exponent_sum(basis, gens)
    print(
        f"exponent sum {rep.total}; level sum {rep.level_sum}; "
        f"stated closed form {rep.stated_sum} (difference {rep.difference})"
    )
    payload = {
        "m": args.m,
        "d": q_poly.degree,
        "level_dims": list(basis.level_dims),
        "entries": [
            {"i": i, "g": format_monomial(g) or "1"} for i, g in basis.entries
        ],
        "exponent_sum": rep.total,
        "stated_sum": rep.stated_sum,
    }
    if args.point and args.place:
        x = ProjectivePoint([parse_rational(c) for c in args.point.split(",")])
        p = Place.parse(args.place)
        chk = filtration_inequality_check(p, x, basis, gens)
        print(
            f"key inequality at place {p}, point {x}: "
            f"lhs {chk.lhs} >= rhs {chk.rhs}: {'ok' if chk.ok else 'FAIL'}"
        )
        payload["inequality"] = {
            "place": str(p),
            "lhs": None if not chk.finite else chk.lhs,
            "rhs": chk.rhs,
            "ok": chk.ok,
        }
    _emit(payload, args)
    return 0


def _cmd_position(args) -> int:
    scenario = load_scenario(args.file)
    n_value = args.N if args.N is not None else scenario.N
    cap = args.cap if args.cap is not None else scenario.position_cap
    report = check_subgeneral_position(
        scenario.x_gens, scenario.divisors, n_value, cap
    )
    print(
        f"N = {n_value}: {'in position' if report.in_position else 'NOT certified'} "
        f"(cap {cap})"
    )
    for sub in report.subsets:
        print(f"  subset {list(sub.indices)}: {sub.verdict}")
    _emit(
        {
            "N": n_value,
            "degree_cap": cap,
            "in_position": report.in_position,
            "subsets": [
                {
                    "indices": list(sub.indices),
                    "empty_certified": sub.verdict.certified_empty,
                    "certified_degree": sub.verdict.certified_degree,
                }
                for sub in report.subsets
            ],
        },
        args,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffsubspace",
        description="Exact heights, Chow expansions, Hilbert bounds and "
        "subspace-inequality checks over Q(t)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run a scenario file end to end")
    p.add_argument("file")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--report", help="also write a JSON report here")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("hilbert", help="Hilbert function of a graded slice")
    p.add_argument("--gens", required=True, help="semicolon-separated generators")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--num-vars", type=int)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_hilbert)

    p = sub.add_parser("bounds", help="quantitative Hilbert bounds")
    bounds_sub = p.add_subparsers(dest="bounds_command", required=True)
    pa = bounds_sub.add_parser("a-eps", help="ratio threshold a_eps")
    pa.add_argument("--n", type=int, required=True)
    pa.add_argument("--delta", type=int, required=True)
    pa.add_argument("--d", type=int, required=True)
    pa.add_argument("--eps", required=True)
    pa.add_argument("--window", type=int, default=100)
    pa.add_argument("--report")
    pa.set_defaults(func=_cmd_bounds_a_eps)

    p = sub.add_parser("chow", help="Chow form expansion statistics")
    p.add_argument("--input", required=True, help="scenario or variety JSON")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_chow)

    p = sub.add_parser("constants", help="effective constants ledger")
    p.add_argument("--inputs", required=True, help="JSON file of constant inputs")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("filtration", help="divisor filtration of a graded quotient")
    p.add_argument("--gens", required=True, help="semicolon-separated generators ('' for the zero ideal)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q-poly", required=True)
    p.add_argument("--num-vars", type=int)
    p.add_argument("--point", help="comma-separated coordinates for the key inequality")
    p.add_argument("--place", help="place for the key inequality")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_filtration)

    p = sub.add_parser("position", help="N-subgeneral position check")
    p.add_argument("--file", required=True)
    p.add_argument("--N", type=int, help="override the scenario's N")
    p.add_argument("--cap", type=int, help="override the certification cap")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_position)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ToolkitError, OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
