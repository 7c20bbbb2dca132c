"""Command-line surface: JSON-configured certification runs.

One JSON config document drives each run.  ``command`` selects the
certification family::

    plane         reverse isoperimetric chain in a Minkowski plane
    surface       reverse Minkowski chain for convex surfaces
    sphere-curve  spherical reverse isoperimetric identity
    poincare      two-sided spectral gap check
    search        derivative-free sharpness search
    converge      functional values along a resolution ladder

Exit status: 0 when every asserted identity/inequality passes at the
configured tolerance, 1 on input errors, 2 on certification failures.
Identical config + seed produce byte-identical outputs; floats print
with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import jsonschema

from .errors import CertificationError, ValidationError
from .fourier import FourierCoefficients, PeriodicSamples
from .plane import (NormProfile, SupportProfile, curve_from_support,
                    hurwitz_report, reverse_iso_report, total_curvature_identity)
from .reports import InequalityReport
from .search import SearchSpace, maximize
from .sphere import (SphereGrid, SphereScalarField, poincare_gap_check,
                     real_sph_harm)
from .spherecurve import SphericalCurve, gnomonic_lift, reverse_iso_identity_report
from .surface import SupportField, deficit_identity_check, reverse_minkowski_report

DEFAULT_PLANE_NODES = 512
DEFAULT_SPHERE_NODES = 96
DEFAULT_TOLERANCE = 1e-8
CONVERGE_FLOOR = 1e-11

_NUM = {"type": "number"}
_PROFILE = {
    "oneOf": [
        {"type": "object", "additionalProperties": False, "required": ["fourier"],
         "properties": {"fourier": {
             "type": "object", "additionalProperties": False, "required": ["a0"],
             "properties": {"a0": _NUM,
                            "cos": {"type": "array", "items": _NUM},
                            "sin": {"type": "array", "items": _NUM}}}}},
        {"type": "object", "additionalProperties": False, "required": ["samples"],
         "properties": {"samples": {"type": "array", "items": _NUM, "minItems": 8}}},
    ]
}
_SFIELD = {
    "oneOf": [
        {"type": "object", "additionalProperties": False, "required": ["harmonics"],
         "properties": {"harmonics": {
             "type": "object", "additionalProperties": False,
             "properties": {
                 "base": _NUM,
                 "terms": {"type": "array", "items": {
                     "type": "array", "minItems": 3, "maxItems": 3,
                     "items": _NUM}}}}}},
        {"type": "object", "additionalProperties": False, "required": ["zonal"],
         "properties": {"zonal": {
             "type": "object", "additionalProperties": False,
             "required": ["theta", "values"],
             "properties": {"theta": {"type": "array", "items": _NUM, "minItems": 4},
                            "values": {"type": "array", "items": _NUM, "minItems": 4}}}}},
        {"type": "object", "additionalProperties": False, "required": ["grid"],
         "properties": {"grid": {
             "type": "object", "additionalProperties": False,
             "required": ["n_theta", "n_phi", "values"],
             "properties": {"n_theta": {"type": "integer"},
                            "n_phi": {"type": "integer"},
                            "values": {"type": "array",
                                       "items": {"type": "array", "items": _NUM}}}}}},
        {"type": "object", "additionalProperties": False, "required": ["spheroid"],
         "properties": {"spheroid": {
             "type": "object", "additionalProperties": False, "required": ["a", "c"],
             "properties": {"a": _NUM, "c": _NUM}}}},
    ]
}
_CURVE = {
    "oneOf": [
        {"type": "object", "additionalProperties": False, "required": ["points"],
         "properties": {"points": {"type": "array", "minItems": 8, "items": {
             "type": "array", "minItems": 3, "maxItems": 3, "items": _NUM}}}},
        {"type": "object", "additionalProperties": False, "required": ["gnomonic"],
         "properties": {"gnomonic": {
             "type": "object", "additionalProperties": False, "required": ["profile"],
             "properties": {"profile": _PROFILE, "height": _NUM}}}},
    ]
}

_COMMON = {
    "command": {"type": "string"},
    "resolution": {"type": "integer", "minimum": 8},
    "tolerance": {"type": "number", "exclusiveMinimum": 0},
    "seed": {"type": "integer", "minimum": 0},
}


def _case_schema(extra):
    props = {"name": {"type": "string"}}
    props.update(extra)
    return {"type": "object", "additionalProperties": False,
            "required": [k for k in extra], "properties": props}


_PLANE_CASE = {
    "type": "object", "additionalProperties": False, "required": ["p"],
    "properties": {"name": {"type": "string"}, "p": _PROFILE, "h": _PROFILE},
}

_SCHEMAS = {
    "plane": {
        "type": "object", "additionalProperties": False, "required": ["command", "cases"],
        "properties": dict(_COMMON, cases={
            "type": "array", "minItems": 1, "items": _PLANE_CASE}),
    },
    "surface": {
        "type": "object", "additionalProperties": False, "required": ["command", "cases"],
        "properties": dict(_COMMON, cases={
            "type": "array", "minItems": 1, "items": _case_schema({"h": _SFIELD})}),
    },
    "sphere-curve": {
        "type": "object", "additionalProperties": False, "required": ["command", "cases"],
        "properties": dict(_COMMON, cases={
            "type": "array", "minItems": 1, "items": _case_schema({"curve": _CURVE})}),
    },
    "poincare": {
        "type": "object", "additionalProperties": False, "required": ["command", "cases"],
        "properties": dict(_COMMON, cases={
            "type": "array", "minItems": 1, "items": {
                "type": "object", "additionalProperties": False,
                "required": ["dimension", "f"],
                "properties": {"name": {"type": "string"},
                               "dimension": {"enum": [1, 2]},
                               "f": {"oneOf": [_PROFILE, _SFIELD]}}}}),
    },
    "search": {
        "type": "object", "additionalProperties": False,
        "required": ["command", "normalization", "budget"],
        "properties": dict(
            _COMMON,
            normalization={"enum": ["euclidean", "anisotropic"]},
            p_degree={"type": "integer", "minimum": 1},
            h_degree={"type": "integer", "minimum": 0},
            norm=_PROFILE,
            budget={"type": "integer", "minimum": 50},
            bounds_scale={"type": "number", "exclusiveMinimum": 0}),
    },
    "converge": {
        "type": "object", "additionalProperties": False,
        "required": ["command", "target", "case", "resolutions"],
        "properties": dict(
            _COMMON,
            target={"enum": ["plane", "surface", "sphere-curve"]},
            case={"type": "object"},
            resolutions={"type": "array", "minItems": 2,
                         "items": {"type": "integer", "minimum": 8}}),
    },
}


def _profile_coefficients(spec: dict) -> FourierCoefficients | None:
    if "fourier" not in spec:
        return None
    four = spec["fourier"]
    cos = list(four.get("cos", []))
    sin = list(four.get("sin", []))
    width = max(len(cos), len(sin), 1)
    cos += [0.0] * (width - len(cos))
    sin += [0.0] * (width - len(sin))
    return FourierCoefficients(four["a0"], cos, sin)


def _periodic_from_config(spec: dict, n: int) -> PeriodicSamples:
    coeffs = _profile_coefficients(spec)
    if coeffs is not None:
        return coeffs.to_samples(n)
    return PeriodicSamples(np.asarray(spec["samples"], dtype=float))


def _scalar_from_config(spec: dict, n_theta: int) -> SphereScalarField:
    if "grid" in spec:
        grid = SphereGrid(spec["grid"]["n_theta"], spec["grid"]["n_phi"])
        values = np.asarray(spec["grid"]["values"], dtype=float)
        return SphereScalarField(grid, values)
    grid = SphereGrid(n_theta, 2 * n_theta)
    if "spheroid" in spec:
        a, c = spec["spheroid"]["a"], spec["spheroid"]["c"]
        if a <= 0 or c <= 0:
            raise ValidationError("spheroid semiaxes must be positive")
        vals = np.sqrt(a**2 + (c**2 - a**2) * grid.x**2)
        values = np.broadcast_to(vals[:, None], grid.shape).copy()
    elif "zonal" in spec:
        from scipy.interpolate import CubicSpline
        table_t = np.asarray(spec["zonal"]["theta"], dtype=float)
        table_v = np.asarray(spec["zonal"]["values"], dtype=float)
        if table_t.size != table_v.size:
            raise ValidationError("zonal table theta/values length mismatch")
        if np.any(np.diff(table_t) <= 0):
            raise ValidationError("zonal table colatitudes must be increasing")
        if table_t[0] > grid.theta.min() or table_t[-1] < grid.theta.max():
            raise ValidationError(
                "zonal table must cover the grid colatitudes "
                f"[{grid.theta.min():.4f}, {grid.theta.max():.4f}]")
        vals = CubicSpline(table_t, table_v)(grid.theta)
        values = np.broadcast_to(vals[:, None], grid.shape).copy()
    else:
        har = spec["harmonics"]
        values = np.full(grid.shape, float(har.get("base", 0.0)))
        for ell, m, coeff in har.get("terms", []):
            values = values + coeff * real_sph_harm(grid, int(ell), int(m)).values
    return SphereScalarField(grid, values)


def _field_from_config(spec: dict, n_theta: int) -> SupportField:
    return SupportField(_scalar_from_config(spec, n_theta))


def _curve_from_config(spec: dict, n: int) -> SphericalCurve:
    if "points" in spec:
        return SphericalCurve(np.asarray(spec["points"], dtype=float))
    gno = spec["gnomonic"]
    profile = SupportProfile(_periodic_from_config(gno["profile"], n))
    return gnomonic_lift(curve_from_support(profile), gno.get("height", 1.0))


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _dump_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    pad, pad_in = " " * indent, " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad_in}{json.dumps(str(k))}: {_dump_json(v, indent + 2)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad_in}{_dump_json(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return f"{obj:.17g}" if np.isfinite(obj) else "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    return json.dumps(str(obj))


def _write_rows(rows: list[dict], out_dir: str, fmt: str, stem: str) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []
    columns: list[str] = []
    for row in rows:
        columns += [k for k in row if k not in columns]
    if fmt in ("csv", "both"):
        path = os.path.join(out_dir, f"{stem}.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_fmt(row[k]) if k in row else "" for k in columns])
        written.append(path)
    if fmt in ("json", "both"):
        path = os.path.join(out_dir, f"{stem}.json")
        with open(path, "w") as fh:
            fh.write(_dump_json(rows) + "\n")
        written.append(path)
    return written


def _report_row(name: str, params: str, report: InequalityReport) -> dict:
    row = {"family": name, "params": params}
    row.update(report.as_dict())
    return row


def _plane_case(case: dict, n: int, tol: float) -> dict:
    p = SupportProfile(_periodic_from_config(case["p"], n))
    h_spec = case.get("h")
    if h_spec is None:
        h = NormProfile.euclidean(p.n)
        euclidean = True
    else:
        samples = _periodic_from_config(h_spec, p.n)
        h = NormProfile(samples)
        euclidean = bool(np.max(np.abs(samples.values - 1.0)) < 1e-14)
    report = reverse_iso_report(p, h, tol)
    identity = total_curvature_identity(p, h, tol)
    row = _report_row(case.get("name", "plane"), json.dumps(case, sort_keys=True), report)
    row["total_curvature_residual"] = abs(identity.margin)
    row["passed"] = bool(row["passed"] and identity.passed)
    if euclidean:
        hw = hurwitz_report(p, tol)
        row.update(hurwitz_lhs=hw.lhs, hurwitz_rhs=hw.rhs,
                   hurwitz_equality=hw.equality,
                   energy_modes_ge3=hw.functionals["energy_modes_ge3"])
        row["passed"] = bool(row["passed"] and hw.passed)
    return row


def _surface_case(case: dict, n_theta: int, tol: float) -> dict:
    h = _field_from_config(case["h"], n_theta)
    report = reverse_minkowski_report(h, tol)
    identity = deficit_identity_check(h, tol)
    row = _report_row(case.get("name", "surface"), json.dumps(case, sort_keys=True), report)
    row["deficit_identity_residual"] = abs(identity.margin)
    gauss_ok = abs(report.functionals["gauss"] - 4.0 * np.pi) <= tol * 4.0 * np.pi
    row["passed"] = bool(row["passed"] and identity.passed and gauss_ok)
    return row


def _curve_case(case: dict, n: int, tol: float) -> dict:
    curve = _curve_from_config(case["curve"], n)
    report = reverse_iso_identity_report(curve, tol)
    return _report_row(case.get("name", "sphere-curve"),
                       json.dumps(case, sort_keys=True), report)


def _poincare_case(case: dict, n: int, n_theta: int, tol: float) -> dict:
    if case["dimension"] == 1:
        f = _periodic_from_config(case["f"], n)
    else:
        f = _scalar_from_config(case["f"], n_theta)
    report = poincare_gap_check(f, case["dimension"], tol)
    return _report_row(case.get("name", "poincare"),
                       json.dumps(case, sort_keys=True), report)


_CASE_RUNNERS = {
    "plane": lambda case, n, nt, tol: _plane_case(case, n, tol),
    "surface": lambda case, n, nt, tol: _surface_case(case, nt, tol),
    "sphere-curve": lambda case, n, nt, tol: _curve_case(case, n, tol),
    "poincare": lambda case, n, nt, tol: _poincare_case(case, n, nt, tol),
}


def _run_case(packed):
    command, case, n, n_theta, tol = packed
    return _CASE_RUNNERS[command](case, n, n_theta, tol)


_CONVERGE_FUNCTIONALS = {
    "plane": ("L", "A_gamma", "A_iso", "A_evolute", "lhs", "rhs"),
    "surface": ("total_mean_curvature", "area", "tracefree", "deficit",
                "bound_tracefree", "bound_focal"),
    "sphere-curve": ("L", "A", "K_gamma", "J", "remainder", "identity_residual"),
}


def _converge(config: dict, n_default: int, nt_default: int, tol: float):
    target = config["target"]
    case = config["case"]
    jsonschema.validate(case, _SCHEMAS[target]["properties"]["cases"]["items"])
    names = _CONVERGE_FUNCTIONALS[target]
    values = {}
    for res in config["resolutions"]:
        row = _CASE_RUNNERS[target](case, res, res, tol)
        values[res] = {k: float(row[k]) for k in names}
    rows, all_ok = [], True
    resolutions = list(config["resolutions"])
    for name in names:
        seq = [values[r][name] for r in resolutions]
        diffs = [abs(b - a) for a, b in zip(seq, seq[1:])]
        floor = CONVERGE_FLOOR * max(1.0, max(abs(v) for v in seq))
        decayed = all(d2 <= max(d1, floor) for d1, d2 in zip(diffs, diffs[1:]))
        all_ok = all_ok and decayed
        for i, r in enumerate(resolutions):
            rows.append({
                "functional": name, "resolution": r, "value": seq[i],
                "difference": diffs[i - 1] if i else "",
                "decayed": decayed, "floor": floor,
            })
    return rows, all_ok


def _search(config: dict, seed: int, tol: float):
    norm = _profile_coefficients(config["norm"]) if "norm" in config else None
    space = SearchSpace(
        p_degree=config.get("p_degree", 4),
        h_degree=config.get("h_degree", 0),
        normalization=config["normalization"],
        fixed_norm=norm,
        bounds_scale=config.get("bounds_scale", 1.0),
    )
    result = maximize(space, config["budget"], seed=seed)
    ceiling_ok = (not result.feasible) or result.objective <= 1.0 + 1e-9
    row = {
        "family": "search", "params": json.dumps(config, sort_keys=True),
        "normalization": config["normalization"], "seed": seed,
        "budget": config["budget"], "evaluations": result.evaluations,
        "objective": result.objective,
        "certified_objective": result.certified_objective,
        "resolution": result.resolution,
        "certified_resolution": result.certified_resolution,
        "feasible": result.feasible,
        "point": " ".join(f"{x:.17g}" for x in result.point),
        "passed": bool(ceiling_ok),
    }
    trace_rows = [{"evaluation": int(e), "incumbent": float(v)}
                  for e, v in result.trace]
    return row, trace_rows, ceiling_ok


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="isogauge",
        description="certify reverse isoperimetric inequalities from a JSON config")
    parser.add_argument("--config", required=True, help="path to the JSON run config")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--format", choices=["csv", "json", "both"], default="csv")
    parser.add_argument("--resolution", type=int, default=None,
                        help="circle nodes / sphere colatitude nodes")
    parser.add_argument("--tolerance", type=float, default=None)
    parser.add_argument("--seed", type=int, default=None, help="64-bit sweep seed")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes (fallback: ISOGAUGE_JOBS)")
    args = parser.parse_args(argv)

    try:
        with open(args.config) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1

    command = config.get("command")
    if command not in _SCHEMAS:
        print(f"error: unknown command {command!r}; expected one of "
              f"{sorted(_SCHEMAS)}", file=sys.stderr)
        return 1
    try:
        jsonschema.validate(config, _SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        print(f"error: config field {path}: {exc.message}", file=sys.stderr)
        return 1

    n = args.resolution or config.get("resolution") or DEFAULT_PLANE_NODES
    n_theta = args.resolution or config.get("resolution") or DEFAULT_SPHERE_NODES
    tol = args.tolerance or config.get("tolerance") or DEFAULT_TOLERANCE
    seed = args.seed if args.seed is not None else config.get("seed", 0)
    jobs = args.jobs or int(os.environ.get("ISOGAUGE_JOBS", "1"))

    try:
        if command == "search":
            row, trace_rows, ok = _search(config, seed, tol)
            files = _write_rows([row], args.out, args.format, "report")
            files += _write_rows(trace_rows, args.out, "csv", "trace")
            print(f"[search] objective={row['objective']:.12g} "
                  f"evaluations={row['evaluations']} "
                  f"{'PASS' if row['passed'] else 'FAIL'}")
        elif command == "converge":
            rows, ok = _converge(config, n, n_theta, tol)
            files = _write_rows(rows, args.out, args.format, "convergence")
            for name in dict.fromkeys(r["functional"] for r in rows):
                sub = [r for r in rows if r["functional"] == name]
                print(f"[converge] {name}: "
                      f"{'PASS' if sub[0]['decayed'] else 'FAIL'}")
        else:
            packed = [(command, case, n, n_theta, tol) for case in config["cases"]]
            if jobs > 1:
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    rows = list(pool.map(_run_case, packed))
            else:
                rows = [_run_case(item) for item in packed]
            ok = all(row["passed"] for row in rows)
            files = _write_rows(rows, args.out, args.format, "report")
            for row in rows:
                print(f"[{command}] {row['family']}: "
                      f"{'PASS' if row['passed'] else 'FAIL'} "
                      f"(lhs={_fmt(row.get('lhs', ''))}, rhs={_fmt(row.get('rhs', ''))})")
    except ValidationError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 1
    except CertificationError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return 2

    for path in files:
        print(f"wrote {path}")
    if not ok:
        print("certification failed; see report rows", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
