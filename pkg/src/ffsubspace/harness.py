"""Scenario runner: load an instance, check position, assemble constants,
evaluate the subspace inequality point by point, and emit reports.

A scenario file fixes the ambient space, the variety (projective space, a
hypersurface, or explicit generators plus a supplied Chow form), the divisor
family, the place set S, epsilon, and the sample points.  The run is fully
deterministic: identical scenario files produce byte-identical JSON reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import jsonschema

from .chow import (
    MultiHomForm,
    chow_height,
    chow_of_hypersurface,
    chow_of_linear,
    multihomform_from_json,
)
from .effective_constants import (
    ConstantInputs,
    EffectiveConstants,
    assemble_constants,
    choose_m,
    lcm_reduction,
)
from .errors import SchemaError
from .function_field import (
    PlaceSet,
    Place,
    ProjectivePoint,
    RationalFunction,
    gauss_order_poly,
    height_point,
    height_poly_family,
    weil,
)
from .graded_ideal import IdealGenerators, check_subgeneral_position, hilbert_function
from .hilbert_bounds import hypersurface_hilbert, threshold_a_eps
from .multipoly import parse_poly
from .parsing import parse_rational

DEFAULT_POSITION_CAP = 6
DEFAULT_NULLSTELLENSATZ_CAP = 12
DEFAULT_EXACT_HILBERT_CUTOFF = 12

C1_CAVEAT = (
    "c1 and c1_prime come from the effective linear subspace theorem and are "
    "configuration inputs (default 0); c_eps and c_prime_eps are complete "
    "only when those inputs are supplied. The exceptional set of that "
    "theorem is not computed: the verdicts cover exactly the points listed."
)

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["ambient_dim", "variety", "divisors", "N", "places", "epsilon", "points"],
    "additionalProperties": False,
    "properties": {
        "ambient_dim": {"type": "integer", "minimum": 1},
        "variety": {
            "type": "object",
            "required": ["kind"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["projective_space", "hypersurface", "ideal"]},
                "F": {"type": "string"},
                "generators": {"type": "array", "items": {"type": "string"}},
                "chow_form": {
                    "type": "object",
                    "required": ["blocks", "vars_per_block", "terms"],
                    "properties": {
                        "blocks": {"type": "integer", "minimum": 1},
                        "vars_per_block": {"type": "integer", "minimum": 2},
                        "terms": {"type": "array"},
                    },
                },
            },
        },
        "divisors": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["poly", "degree"],
                "additionalProperties": False,
                "properties": {
                    "poly": {"type": "string"},
                    "degree": {"type": "integer", "minimum": 1},
                },
            },
        },
        "N": {"type": "integer", "minimum": 1},
        "places": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "epsilon": {"type": "string"},
        "points": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}},
        },
        "constants_overrides": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "c1": {"type": "string"},
                "c1_prime": {"type": "string"},
                "m": {"type": "integer", "minimum": 2},
                "nullstellensatz_cap": {"type": "integer", "minimum": 1},
                "position_cap": {"type": "integer", "minimum": 1},
                "hilbert_exact_cutoff": {"type": "integer", "minimum": 1},
            },
        },
    },
}


@dataclass(frozen=True)
class Scenario:
    ambient_dim: int
    variety_kind: str
    x_gens: IdealGenerators
    chow_form: MultiHomForm
    dimension: int
    degree: int
    divisors: tuple
    divisor_degrees: tuple
    N: int
    places: PlaceSet
    epsilon: Fraction
    points: tuple
    c1: Fraction
    c1_prime: Fraction
    m_override: int | None
    position_cap: int
    nullstellensatz_cap: int
    hilbert_exact_cutoff: int


def _schema_validate(data):
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if not errors:
        return
    err = errors[0]
    pointer = "/" + "/".join(str(p) for p in err.absolute_path)
    if err.validator == "required":
        missing = err.message.split("'")[1]
        pointer = pointer.rstrip("/") + "/" + missing
    raise SchemaError(err.message, pointer)


def _parse_fraction(text: str, pointer: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not a rational: {text!r} ({exc})", pointer) from None


def load_scenario_dict(data: dict) -> Scenario:
    """Validate and parse an in-memory scenario object."""
    _schema_validate(data)
    M = data["ambient_dim"]
    nv = M + 1

    variety = data["variety"]
    kind = variety["kind"]
    if kind == "projective_space":
        x_gens = IdealGenerators.of(nv, ())
        basis_points = [
            ProjectivePoint([1 if j == i else 0 for j in range(nv)]) for i in range(nv)
        ]
        chow = chow_of_linear(basis_points)
        dimension, degree = M, 1
    elif kind == "hypersurface":
        if "F" not in variety:
            raise SchemaError("hypersurface variety needs F", "/variety/F")
        f = parse_poly(variety["F"], nv)
        if f.is_zero():
            raise SchemaError("F must be nonzero", "/variety/F")
        x_gens = IdealGenerators.of(nv, (f,))
        chow = chow_of_hypersurface(f)
        dimension, degree = M - 1, f.degree
    else:
        if "generators" not in variety:
            raise SchemaError("ideal variety needs generators", "/variety/generators")
        if "chow_form" not in variety:
            raise SchemaError(
                "ideal variety needs an explicit chow_form", "/variety/chow_form"
            )
        x_gens = IdealGenerators.parse(nv, variety["generators"])
        chow = multihomform_from_json(variety["chow_form"])
        if chow.vars_per_block != nv:
            raise SchemaError(
                "chow_form vars_per_block must equal ambient_dim + 1",
                "/variety/chow_form/vars_per_block",
            )
        dimension, degree = chow.blocks - 1, chow.block_degree

    divisors = []
    divisor_degrees = []
    for i, dv in enumerate(data["divisors"]):
        poly = parse_poly(dv["poly"], nv)
        if poly.is_zero():
            raise SchemaError("divisor must be nonzero", f"/divisors/{i}/poly")
        if poly.degree != dv["degree"]:
            raise SchemaError(
                f"divisor degree {poly.degree} != stated {dv['degree']}",
                f"/divisors/{i}/degree",
            )
        divisors.append(poly)
        divisor_degrees.append(poly.degree)

    places = PlaceSet([Place.parse(s) for s in data["places"]])
    epsilon = _parse_fraction(data["epsilon"], "/epsilon")
    if epsilon <= 0:
        raise SchemaError("epsilon must be positive", "/epsilon")

    points = []
    for i, coords in enumerate(data["points"]):
        if len(coords) != nv:
            raise SchemaError(
                f"point needs {nv} coordinates, has {len(coords)}", f"/points/{i}"
            )
        points.append(ProjectivePoint([parse_rational(c) for c in coords]))

    overrides = data.get("constants_overrides", {})
    c1 = _parse_fraction(overrides.get("c1", "0"), "/constants_overrides/c1")
    c1_prime = _parse_fraction(
        overrides.get("c1_prime", "0"), "/constants_overrides/c1_prime"
    )

    return Scenario(
        ambient_dim=M,
        variety_kind=kind,
        x_gens=x_gens,
        chow_form=chow,
        dimension=dimension,
        degree=degree,
        divisors=tuple(divisors),
        divisor_degrees=tuple(divisor_degrees),
        N=data["N"],
        places=places,
        epsilon=epsilon,
        points=tuple(points),
        c1=c1,
        c1_prime=c1_prime,
        m_override=overrides.get("m"),
        position_cap=overrides.get("position_cap", DEFAULT_POSITION_CAP),
        nullstellensatz_cap=overrides.get(
            "nullstellensatz_cap", DEFAULT_NULLSTELLENSATZ_CAP
        ),
        hilbert_exact_cutoff=overrides.get(
            "hilbert_exact_cutoff", DEFAULT_EXACT_HILBERT_CUTOFF
        ),
    )


def bundled_scenario_path(name: str = "conic"):
    """Filesystem path of a scenario shipped with the package."""
    from importlib.resources import files

    return files("ffsubspace") / "scenarios" / f"{name}.json"


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "") from None
    return load_scenario_dict(data)


@dataclass(frozen=True)
class PointRecord:
    index: int
    point: ProjectivePoint
    status: str  # evaluated | on_divisor | not_on_variety
    vanishing_divisors: tuple = ()
    height: Fraction | None = None
    weil_table: tuple = ()  # ((place, (lambda per divisor, ...)), ...)
    lhs: Fraction | None = None
    rhs_main: Fraction | None = None
    rhs_full: Fraction | None = None
    verdict: str | None = None


@dataclass(frozen=True)
class Report:
    scenario: Scenario
    position: object
    constants: EffectiveConstants
    inputs: ConstantInputs
    a_eps: int
    points: tuple
    warnings: tuple


def _hilbert_table(scenario: Scenario, degrees) -> dict:
    """Exact Hilbert values where a closed form or a cheap rank exists."""
    table = {}
    M = scenario.ambient_dim
    for k in sorted(set(degrees)):
        if scenario.variety_kind == "projective_space":
            table[k] = comb(k + M, M)
        elif scenario.variety_kind == "hypersurface":
            table[k] = hypersurface_hilbert(k, M, scenario.degree)
        elif k <= scenario.hilbert_exact_cutoff:
            table[k] = hilbert_function(scenario.x_gens, k)
    return table


def run_check(scenario: Scenario) -> Report:
    """Full pipeline: position check, constants, per-point inequality."""
    warnings = []

    position = check_subgeneral_position(
        scenario.x_gens, scenario.divisors, scenario.N, scenario.position_cap
    )
    if not position.in_position:
        failing = [list(s.indices) for s in position.failing_subsets()]
        warnings.append(
            f"PositionCheckFailed: subsets {failing} not certified empty at "
            f"cap {position.degree_cap}; constants may not be meaningful"
        )

    reduction = lcm_reduction(scenario.divisors)
    d = reduction.d
    n, delta = scenario.dimension, scenario.degree

    eps_for_threshold = scenario.epsilon / scenario.N
    a_eps = threshold_a_eps(n, delta, d, eps_for_threshold)
    m = scenario.m_override or choose_m(a_eps, d, n, delta)

    h_fx = chow_height(scenario.chow_form)
    h_q_i = tuple(height_poly_family([q]) for q in scenario.divisors)
    h_q_family = height_poly_family(reduction.normalized)
    e_s_term = Fraction(
        sum(
            gauss_order_poly(p, reduction.normalized) * p.degree
            for p in scenario.places
        )
    )

    inputs = ConstantInputs(
        n=n,
        delta=delta,
        M=scenario.ambient_dim,
        N=scenario.N,
        q=len(scenario.divisors),
        d_i=scenario.divisor_degrees,
        d=d,
        epsilon=scenario.epsilon,
        s_card=scenario.places.cardinality,
        s_degree=scenario.places.total_degree,
        h_fx=h_fx,
        h_q_family=h_q_family,
        h_q_i=h_q_i,
        e_s_term=e_s_term,
        c1=scenario.c1,
        c1_prime=scenario.c1_prime,
        m=m,
    )
    needed = [i * d for i in range(1, m // d)] + [m]
    table = _hilbert_table(scenario, needed)
    constants = assemble_constants(inputs, table, a_eps=a_eps)

    factor = scenario.N * (n + 1) + scenario.epsilon
    records = []
    for idx, x in enumerate(scenario.points):
        offenders = [
            g for g in scenario.x_gens.generators if not g.evaluate(x).is_zero()
        ]
        if offenders:
            warnings.append(f"NotOnVariety: point {idx} skipped")
            records.append(PointRecord(idx, x, "not_on_variety"))
            continue
        vanishing = tuple(
            i for i, q in enumerate(scenario.divisors) if q.evaluate(x).is_zero()
        )
        if vanishing:
            records.append(
                PointRecord(idx, x, "on_divisor", vanishing_divisors=vanishing,
                            verdict="OnDivisor")
            )
            continue
        weil_rows = []
        for p in scenario.places:
            weil_rows.append(
                (p, tuple(weil(p, q, x) for q in scenario.divisors))
            )
        lhs = sum(
            (
                row[i] / scenario.divisor_degrees[i]
                for _, row in weil_rows
                for i in range(len(scenario.divisors))
            ),
            Fraction(0),
        )
        transposed = sum(
            (
                row[i] / scenario.divisor_degrees[i]
                for i in range(len(scenario.divisors))
                for _, row in weil_rows
            ),
            Fraction(0),
        )
        assert lhs == transposed, "Weil double sum disagrees when transposed"
        h = height_point(x)
        rhs_main = factor * h
        rhs_full = rhs_main + constants.c_prime_eps
        if lhs <= rhs_full:
            verdict = "InequalityHolds"
        elif h <= constants.c_eps:
            verdict = "HeightSmall"
        else:
            verdict = "Violation"
        records.append(
            PointRecord(
                idx,
                x,
                "evaluated",
                height=h,
                weil_table=tuple(weil_rows),
                lhs=lhs,
                rhs_main=rhs_main,
                rhs_full=rhs_full,
                verdict=verdict,
            )
        )

    return Report(
        scenario=scenario,
        position=position,
        constants=constants,
        inputs=inputs,
        a_eps=a_eps,
        points=tuple(records),
        warnings=tuple(warnings),
    )


def fmt_q(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def report_to_dict(report: Report) -> dict:
    s = report.scenario
    c = report.constants
    i = report.inputs
    out = {
        "schema": "ffsubspace-report/1",
        "scenario": {
            "ambient_dim": s.ambient_dim,
            "variety_kind": s.variety_kind,
            "dimension": s.dimension,
            "degree": s.degree,
            "q": len(s.divisors),
            "N": s.N,
            "divisors": [str(q) for q in s.divisors],
            "places": [str(p) for p in s.places],
            "epsilon": fmt_q(s.epsilon),
            "num_points": len(s.points),
        },
        "position": {
            "N": report.position.N,
            "degree_cap": report.position.degree_cap,
            "in_position": report.position.in_position,
            "subsets": [
                {
                    "indices": list(sub.indices),
                    "empty_certified": sub.verdict.certified_empty,
                    "certified_degree": sub.verdict.certified_degree,
                }
                for sub in report.position.subsets
            ],
        },
        "constants": {
            "a_eps": report.a_eps,
            "m": c.m,
            "d": i.d,
            "d_i": list(i.d_i),
            "s_card": i.s_card,
            "s_degree": i.s_degree,
            "b": c.b,
            "excess_const": fmt_q(c.excess_const),
            "b1": fmt_q(c.b1),
            "b2": fmt_q(c.b2),
            "b3": fmt_q(c.b3),
            "S_sum": c.S_sum,
            "c1": fmt_q(i.c1),
            "c1_prime": fmt_q(i.c1_prime),
            "c_eps": fmt_q(c.c_eps),
            "c_prime_eps": fmt_q(c.c_prime_eps),
            "h_fx": fmt_q(i.h_fx),
            "h_q_family": fmt_q(i.h_q_family),
            "h_q_i": [fmt_q(h) for h in i.h_q_i],
            "e_s_term": fmt_q(i.e_s_term),
            "caveat": C1_CAVEAT,
        },
        "points": [],
        "warnings": list(report.warnings),
    }
    for rec in report.points:
        entry = {
            "index": rec.index,
            "coordinates": [str(cd) for cd in rec.point.coordinates],
            "status": rec.status,
        }
        if rec.status == "on_divisor":
            entry["vanishing_divisors"] = list(rec.vanishing_divisors)
            entry["verdict"] = rec.verdict
        elif rec.status == "evaluated":
            entry["height"] = fmt_q(rec.height)
            entry["weil"] = [
                {"place": str(p), "values": [fmt_q(v) for v in vals]}
                for p, vals in rec.weil_table
            ]
            entry["lhs"] = fmt_q(rec.lhs)
            entry["rhs_main"] = fmt_q(rec.rhs_main)
            entry["rhs_full"] = fmt_q(rec.rhs_full)
            entry["verdict"] = rec.verdict
        out["points"].append(entry)
    return out


def _text_table(rows, header) -> str:
    widths = [
        max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))
    ]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(str(v).ljust(w) for v, w in zip(r, widths)))
    return "\n".join(lines)


def report_to_text(report: Report) -> str:
    s = report.scenario
    c = report.constants
    lines = []
    lines.append(
        f"variety: {s.variety_kind} in P^{s.ambient_dim} "
        f"(dim {s.dimension}, degree {s.degree}); q = {len(s.divisors)}, N = {s.N}, "
        f"epsilon = {fmt_q(s.epsilon)}"
    )
    pos = "certified" if report.position.in_position else "NOT certified"
    lines.append(
        f"position: N = {report.position.N} {pos} "
        f"(cap {report.position.degree_cap})"
    )
    for sub in report.position.subsets:
        lines.append(f"  subset {list(sub.indices)}: {sub.verdict}")
    lines.append("constants:")
    for k, v in [
        ("a_eps", report.a_eps),
        ("m", c.m),
        ("b", c.b),
        ("excess_const", fmt_q(c.excess_const)),
        ("b1", fmt_q(c.b1)),
        ("b2", fmt_q(c.b2)),
        ("b3", fmt_q(c.b3)),
        ("S_sum", c.S_sum),
        ("c_eps", fmt_q(c.c_eps)),
        ("c_prime_eps", fmt_q(c.c_prime_eps)),
    ]:
        lines.append(f"  {k:>12} = {v}")
    lines.append(f"  note: {C1_CAVEAT}")
    evaluated = [r for r in report.points if r.status == "evaluated"]
    if evaluated:
        lines.append("points:")
        header = ["idx", "h(x)", "lhs", "rhs_main", "rhs_full", "verdict"]
        rows = [
            [r.index, fmt_q(r.height), fmt_q(r.lhs), fmt_q(r.rhs_main),
             fmt_q(r.rhs_full), r.verdict]
            for r in evaluated
        ]
        lines.append(_text_table(rows, header))
        lines.append("per-place Weil tables (columns = divisors):")
        for r in evaluated:
            lines.append(f"  point {r.index} {r.point}:")
            header = ["place"] + [f"Q{i}" for i in range(len(s.divisors))]
            rows = [
                [str(p)] + [fmt_q(v) for v in vals] for p, vals in r.weil_table
            ]
            lines.append(
                "\n".join("    " + ln for ln in _text_table(rows, header).splitlines())
            )
    skipped = [r for r in report.points if r.status != "evaluated"]
    for r in skipped:
        extra = (
            f" (divisors {list(r.vanishing_divisors)})"
            if r.status == "on_divisor"
            else ""
        )
        lines.append(f"point {r.index}: {r.status}{extra}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, format: str = "json", path=None) -> str:
    """Serialize a report; writes to path when given, returns the text."""
    if format == "json":
        text = json.dumps(report_to_dict(report), indent=2) + "\n"
    elif format == "text":
        text = report_to_text(report)
    else:
        raise ValueError(f"unknown report format {format!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def has_violation(report: Report) -> bool:
    return any(r.verdict == "Violation" for r in report.points)
