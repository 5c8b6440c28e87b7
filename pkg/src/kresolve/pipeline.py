"""End-to-end jobs: conditions -> strand -> determinant -> factor analysis.

Produces the machine-readable report dict shared by the CLI commands.
Exit codes: 0 success, 2 mathematical condition failure (the report is
still produced, with diagnostics), 1 input errors (raised to the CLI).
"""

from __future__ import annotations

import json
import random
import time
from fractions import Fraction

from .config import seeded_rng
from .detcx import macaulay_resultant
from .galedual import GaleMatrix, column_transform, gale_map, parse_gale_matrix
from .geometry import (
    ConditionReport,
    base_points,
    check_conditions,
    extract_implicit,
)
from .koszul import MapSpec
from .polyring import MPoly, PolyError, RingSpec, parse_poly, poly_to_text


def ring_from_names(t_vars: list[str]) -> RingSpec:
    pairs = tuple((f"x{i}", f"y{i}") for i in range(len(t_vars)))
    return RingSpec(tuple(t_vars), pairs)


def load_map(data: dict) -> MapSpec:
    """Build a MapSpec from the JSON input schema."""
    try:
        t_vars = list(data["t_vars"])
        raw_pairs = list(data["pairs"])
    except (KeyError, TypeError) as exc:
        raise PolyError(f"map file needs 't_vars' and 'pairs': {exc}") from exc
    mode = data.get("mode", "strict")
    ring = ring_from_names(t_vars)
    pairs = []
    for i, entry in enumerate(raw_pairs):
        try:
            f = parse_poly(str(entry["f"]), ring)
            g = parse_poly(str(entry["g"]), ring)
        except (KeyError, TypeError) as exc:
            raise PolyError(f"pair {i} needs 'f' and 'g' strings") from exc
        pairs.append((f, g))
    return MapSpec.of(ring, pairs, mode=mode)


def load_map_file(path: str) -> MapSpec:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return load_map(data)


def _conditions_dict(report: ConditionReport) -> dict:
    out: dict = {"eta": report.eta, "degrees": list(report.degrees)}
    if report.avramov_codims is not None:
        out["avramov_codims"] = {str(r): c for r, c in sorted(report.avramov_codims.items())}
        out["avramov_ok"] = report.avramov_ok
    if report.geometric_dims is not None:
        out["geometric_dims"] = {str(r): d for r, d in sorted(report.geometric_dims.items())}
        out["geometric_ok"] = report.geometric_ok
    if report.subset_codims is not None:
        out["subset_codims"] = [
            {"alpha": list(alpha), "codim": codim}
            for alpha, codim in sorted(report.subset_codims.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
    if report.strict_ok is not None:
        out["strict_ok"] = report.strict_ok
        out["strict_witnesses"] = [list(w) for w in report.strict_witnesses]
    if report.weak_ok is not None:
        out["weak_ok"] = report.weak_ok
    out["x_points"] = [str(p) for p in report.x_points]
    out["x_dimension"] = report.x_dimension
    if report.warnings:
        out["warnings"] = list(report.warnings)
    return out


def ring_dict(ring: RingSpec) -> dict:
    return {"t_vars": list(ring.t_vars), "pairs": [list(p) for p in ring.pairs]}


def run_check(spec: MapSpec) -> tuple[dict, int]:
    """Condition checks only."""
    t0 = time.perf_counter()
    report = check_conditions(spec)
    elapsed = (time.perf_counter() - t0) * 1000
    out = {
        "ring": ring_dict(spec.ring),
        "conditions": _conditions_dict(report),
        "timings_ms": {"conditions": round(elapsed, 3), "total": round(elapsed, 3)},
    }
    return out, 0 if report.acyclic else 2


def run_implicitize(
    spec: MapSpec,
    nu: int | None = None,
    method: str = "cayley",
    rng: random.Random | None = None,
) -> tuple[dict, int]:
    """Full pipeline; never raises on mathematical failure (exit code 2)."""
    rng = rng or seeded_rng()
    timings: dict[str, float] = {}
    diagnostics: list[str] = []
    total0 = time.perf_counter()

    t0 = time.perf_counter()
    conditions = check_conditions(spec)
    timings["conditions"] = (time.perf_counter() - t0) * 1000

    report = {
        "ring": ring_dict(spec.ring),
        "resultant": "0",
        "multidegree": list(spec.resultant_multidegree()),
        "H": None,
        "deg_phi": None,
        "extra_factors": [],
        "conditions": _conditions_dict(conditions),
        "diagnostics": diagnostics,
        "timings_ms": timings,
    }

    def finish(code: int) -> tuple[dict, int]:
        timings["total"] = round((time.perf_counter() - total0) * 1000, 3)
        for key in list(timings):
            timings[key] = round(timings[key], 3)
        return report, code

    if not conditions.acyclic:
        diagnostics.append("acyclicity conditions fail; resultant is identically zero")
        if conditions.x_points:
            pts = ", ".join(str(p) for p in conditions.x_points)
            diagnostics.append(f"X nonempty: {pts}")
        elif conditions.x_dimension is not None:
            diagnostics.append(
                f"X nonempty of dimension {conditions.x_dimension}"
            )
        return finish(2)

    t0 = time.perf_counter()
    res = macaulay_resultant(spec, nu=nu, method=method, rng=rng)
    timings["resultant"] = (time.perf_counter() - t0) * 1000
    report["resultant"] = poly_to_text(res.poly)
    report["multidegree"] = list(res.multidegree)
    if res.is_zero():
        diagnostics.append(res.diagnostic or "resultant is identically zero")
        return finish(2)

    t0 = time.perf_counter()
    comps = base_points(spec)
    implicit = extract_implicit(spec, res, comps, rng=rng)
    timings["extraction"] = (time.perf_counter() - t0) * 1000

    report["H"] = poly_to_text(implicit.H) if implicit.H is not None else None
    report["deg_phi"] = implicit.deg_phi
    extra = []
    for attr in implicit.attributions:
        entry = {"factor": poly_to_text(attr.factor), "exponent": attr.exponent}
        if attr.point is not None:
            entry["point"] = str(attr.point)
        else:
            entry["component"] = {
                "alpha": list(attr.component.alpha),
                "dimension": attr.component.dimension,
            }
        extra.append(entry)
    report["extra_factors"] = extra
    diagnostics.extend(implicit.diagnostics)
    if implicit.residual is not None:
        report["residual"] = [
            {"factor": poly_to_text(q), "multiplicity": m}
            for q, m in implicit.residual.parts
        ]
    return finish(0)


def run_resultant(
    spec: MapSpec,
    nu: int | None = None,
    method: str = "cayley",
    rng: random.Random | None = None,
) -> tuple[dict, int]:
    """Resultant only (conditions still reported for context)."""
    rng = rng or seeded_rng()
    timings: dict[str, float] = {}
    total0 = time.perf_counter()
    t0 = time.perf_counter()
    conditions = check_conditions(spec)
    timings["conditions"] = round((time.perf_counter() - t0) * 1000, 3)
    t0 = time.perf_counter()
    res = macaulay_resultant(spec, nu=nu, method=method, rng=rng)
    timings["resultant"] = round((time.perf_counter() - t0) * 1000, 3)
    timings["total"] = round((time.perf_counter() - total0) * 1000, 3)
    out = {
        "ring": ring_dict(spec.ring),
        "resultant": poly_to_text(res.poly),
        "multidegree": list(res.multidegree),
        "conditions": _conditions_dict(conditions),
        "diagnostics": [res.diagnostic] if res.diagnostic else [],
        "timings_ms": timings,
    }
    return out, 0 if not res.is_zero() else 2


def run_discriminant(
    matrix_text: str,
    transform_text: str | None = None,
    mode: str = "strict",
    nu: int | None = None,
    method: str = "cayley",
    rng: random.Random | None = None,
) -> tuple[dict, int]:
    """Gale-dual pipeline: matrix -> map -> implicitization."""
    B = parse_gale_matrix(matrix_text)
    provenance: dict = {"matrix": [list(r) for r in B.entries]}
    if transform_text is not None:
        M = [
            [int(tok) for tok in line.split()]
            for line in transform_text.splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        B = column_transform(B, M)
        provenance["transform"] = M
        provenance["transformed_matrix"] = [list(r) for r in B.entries]
    ring = ring_from_names([f"t{i}" for i in range(B.num_cols)] if B.num_cols > 3 else ["u", "v", "w"][: B.num_cols])
    spec = gale_map(B, ring, mode=mode)
    report, code = run_implicitize(spec, nu=nu, method=method, rng=rng)
    report["gale"] = provenance
    return report, code


def format_text_report(report: dict) -> str:
    """Human-readable rendering of a report dict."""
    lines = []
    cond = report.get("conditions", {})
    if "degrees" in cond:
        lines.append(f"degrees: {cond['degrees']}  eta: {cond.get('eta')}")
    for key in ("avramov_ok", "geometric_ok", "strict_ok", "weak_ok"):
        if key in cond:
            lines.append(f"{key}: {cond[key]}")
    if cond.get("strict_witnesses"):
        lines.append(f"strict witnesses: {cond['strict_witnesses']}")
    if cond.get("x_points"):
        lines.append(f"X points: {', '.join(cond['x_points'])}")
    if "resultant" in report:
        lines.append(f"resultant: {report['resultant']}")
        lines.append(f"multidegree: {report.get('multidegree')}")
    if report.get("H") is not None:
        lines.append(f"H: {report['H']}")
        lines.append(f"deg_phi: {report['deg_phi']}")
    for entry in report.get("extra_factors", []):
        where = entry.get("point") or f"component {entry.get('component')}"
        lines.append(
            f"extra factor: ({entry['factor']})^{entry['exponent']} from {where}"
        )
    for diag in report.get("diagnostics", []):
        lines.append(f"diagnostic: {diag}")
    if "timings_ms" in report:
        lines.append(f"timings_ms: {report['timings_ms']}")
    return "\n".join(lines)
