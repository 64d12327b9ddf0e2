"""Command-line front end.

Subcommands:

    compute  --config cfg.json [--format json|csv] [--out PATH]
    sweep    --config sweep.json [--format json|csv] [--out PATH]
    compare  --config cfg.json [--format json|csv] [--out PATH]
    spectra  --config cfg.json --m-grid MIN:MAX:COUNT[:log|lin] [--u U] ...
    validate

Configs are JSON; the schema is validated up front with field-path
diagnostics and unknown keys are rejected.  Exit codes: 0 success,
2 configuration error, 3 physics-domain error, 4 numeric
non-convergence.  The only environment variable consulted is
CASFRIC_QUAD_TOL (default quadrature relative tolerance).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import comparisons, units, validation
from .dielectric import (Drude, MediumSpec, Plasma, Vacuum,
                         load_tabulated, spectral_density)
from .errors import (CasfricError, ConfigError, NonConvergenceError)
from .friction import (FrictionResult, PlateSystem, friction_dense,
                       friction_dilute, friction_drude_closed_form,
                       friction_hybrid, plane_spectral_products)
from .presets import get_preset
from .quadrature import QuadratureSpec, default_spec

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3
EXIT_NONCONV = 4

ROUTES = ("dilute", "dense-full", "drude-closed-form", "hybrid")
SWEEP_AXES = ("d", "v", "T", "damping", "plasma_energy")


# ---------------------------------------------------------------------------
# config parsing

def _fail(path, msg):
    raise ConfigError([(path, msg)])


def _expect_object(obj, path):
    if not isinstance(obj, dict):
        _fail(path, "must be an object")
    return obj


def _check_keys(obj, path, allowed):
    unknown = set(obj) - set(allowed)
    if unknown:
        _fail(path, f"unknown keys {sorted(unknown)}; allowed: {sorted(allowed)}")


def _number(obj, path, positive=False, non_negative=False):
    if not isinstance(obj, (int, float)) or isinstance(obj, bool):
        _fail(path, "must be a number")
    v = float(obj)
    if positive and not v > 0.0:
        _fail(path, "must be > 0")
    if non_negative and v < 0.0:
        _fail(path, "must be >= 0")
    return v


def parse_medium(obj, path):
    _expect_object(obj, path)
    if "preset" in obj:
        _check_keys(obj, path, {"preset", "density_per_nm3"})
        model = get_preset(obj["preset"]).model
    else:
        if "model" not in obj:
            _fail(path, "missing 'model' (or 'preset')")
        kind = obj["model"]
        if kind == "vacuum":
            _check_keys(obj, path, {"model", "density_per_nm3"})
            model = Vacuum()
        elif kind == "plasma":
            _check_keys(obj, path, {"model", "plasma_energy_ev", "density_per_nm3"})
            model = Plasma(_number(obj.get("plasma_energy_ev"),
                                   path + ".plasma_energy_ev", positive=True))
        elif kind == "drude":
            _check_keys(obj, path, {"model", "plasma_energy_ev", "damping_ev",
                                    "density_per_nm3"})
            model = Drude(_number(obj.get("plasma_energy_ev"),
                                  path + ".plasma_energy_ev", positive=True),
                          _number(obj.get("damping_ev"),
                                  path + ".damping_ev", non_negative=True))
        elif kind == "tabulated":
            _check_keys(obj, path, {"model", "path", "density_per_nm3"})
            if not isinstance(obj.get("path"), str):
                _fail(path + ".path", "must be a file path string")
            try:
                model = load_tabulated(obj["path"])
            except OSError as exc:
                _fail(path + ".path", f"cannot read table: {exc}")
        else:
            _fail(path + ".model",
                  "must be one of vacuum|plasma|drude|tabulated")
    density = obj.get("density_per_nm3")
    if density is not None:
        density = _number(density, path + ".density_per_nm3", positive=True)
    return MediumSpec(model=model, density_per_nm3=density)


def parse_quadrature(obj, path):
    if obj is None:
        return None
    _expect_object(obj, path)
    _check_keys(obj, path, {"abs_tol", "rel_tol", "max_subdivisions"})
    base = default_spec()
    abs_tol = _number(obj.get("abs_tol", base.abs_tol), path + ".abs_tol",
                      positive=True)
    rel_tol = _number(obj.get("rel_tol", base.rel_tol), path + ".rel_tol",
                      positive=True)
    max_sub = obj.get("max_subdivisions", base.max_subdivisions)
    if not isinstance(max_sub, int) or max_sub < 1:
        _fail(path + ".max_subdivisions", "must be a positive integer")
    return QuadratureSpec(abs_tol=abs_tol, rel_tol=rel_tol,
                          max_subdivisions=max_sub)


def parse_run_config(obj, path=""):
    _expect_object(obj, path or ".")
    _check_keys(obj, path or ".", {"system", "route", "denominators",
                                   "quadrature", "output"})
    route = obj.get("route")
    if route not in ROUTES:
        _fail(path + ".route", f"must be one of {ROUTES}")

    system = _expect_object(obj.get("system"), path + ".system")
    _check_keys(system, path + ".system",
                {"medium1", "medium2", "d_nm", "z0_nm", "v_m_per_s", "T_K"})
    for key in ("medium1", "medium2"):
        if key not in system:
            _fail(path + f".system.{key}", "is required")
    med1 = parse_medium(system["medium1"], path + ".system.medium1")
    med2 = parse_medium(system["medium2"], path + ".system.medium2")
    v = _number(system.get("v_m_per_s"), path + ".system.v_m_per_s",
                non_negative=True)
    t = _number(system.get("T_K"), path + ".system.T_K", positive=True)
    d_nm = system.get("d_nm")
    z0_nm = system.get("z0_nm")
    if route == "hybrid":
        if z0_nm is None:
            _fail(path + ".system.z0_nm", "is required for the hybrid route")
        z0_nm = _number(z0_nm, path + ".system.z0_nm", positive=True)
    else:
        if d_nm is None:
            _fail(path + ".system.d_nm", "is required for plate routes")
        d_nm = _number(d_nm, path + ".system.d_nm", positive=True)

    denominators = obj.get("denominators", "drop")
    if denominators not in ("drop", "keep"):
        _fail(path + ".denominators", "must be 'drop' or 'keep'")

    qspec = parse_quadrature(obj.get("quadrature"), path + ".quadrature")

    output = obj.get("output")
    out_path = None
    out_format = None
    if output is not None:
        _expect_object(output, path + ".output")
        _check_keys(output, path + ".output", {"path", "format"})
        out_path = output.get("path")
        out_format = output.get("format")
        if out_format is not None and out_format not in ("csv", "json"):
            _fail(path + ".output.format", "must be 'csv' or 'json'")

    return {"medium1": med1, "medium2": med2, "d_nm": d_nm, "z0_nm": z0_nm,
            "v_m_per_s": v, "T_K": t, "route": route,
            "denominators": denominators, "quadrature": qspec,
            "out_path": out_path, "out_format": out_format, "raw": obj}


def parse_sweep_config(obj):
    _expect_object(obj, ".")
    _check_keys(obj, ".", {"base", "axis", "values"})
    if "base" not in obj:
        _fail(".base", "is required")
    base = parse_run_config(obj["base"], ".base")
    axis = obj.get("axis")
    if axis not in SWEEP_AXES:
        _fail(".axis", f"must be one of {SWEEP_AXES}")
    values = obj.get("values")
    if isinstance(values, list):
        vals = [_number(v, f".values[{i}]") for i, v in enumerate(values)]
    elif isinstance(values, dict):
        _check_keys(values, ".values", {"min", "max", "count", "scale"})
        lo = _number(values.get("min"), ".values.min")
        hi = _number(values.get("max"), ".values.max")
        count = values.get("count")
        if not isinstance(count, int) or count < 1:
            _fail(".values.count", "must be a positive integer")
        scale = values.get("scale", "linear")
        if scale not in ("linear", "log"):
            _fail(".values.scale", "must be 'linear' or 'log'")
        if not lo < hi and count > 1:
            _fail(".values", "need min < max")
        import numpy as np
        if scale == "log":
            if not lo > 0.0:
                _fail(".values.min", "must be > 0 for log scale")
            vals = list(np.geomspace(lo, hi, count))
        else:
            vals = list(np.linspace(lo, hi, count))
    else:
        _fail(".values", "must be a list of numbers or {min,max,count,scale}")
    may_be_zero = axis in ("v", "damping")
    for i, v in enumerate(vals):
        if not (v > 0.0 or (may_be_zero and v >= 0.0)):
            _fail(f".values[{i}]", f"out of domain for axis {axis!r}")
    return {"base": base, "axis": axis, "values": vals, "raw": obj}


# ---------------------------------------------------------------------------
# execution

def _apply_axis(cfg, axis, value):
    out = dict(cfg)
    if axis == "d":
        out["d_nm"] = value
    elif axis == "v":
        out["v_m_per_s"] = value
    elif axis == "T":
        out["T_K"] = value
    else:
        field = "damping_ev" if axis == "damping" else "plasma_energy_ev"
        for key in ("medium1", "medium2"):
            med = out[key]
            model = med.model
            if not isinstance(model, (Drude, Plasma)):
                raise ConfigError([(f".system.{key}",
                                    f"axis {axis!r} needs a drude/plasma model")])
            if isinstance(model, Plasma):
                if field == "damping_ev":
                    raise ConfigError([(f".system.{key}",
                                        "axis 'damping' needs a drude model")])
                new = Plasma(value)
            else:
                new = Drude(value if field == "plasma_energy_ev"
                            else model.plasma_energy_ev,
                            value if field == "damping_ev"
                            else model.damping_ev)
            out[key] = MediumSpec(model=new,
                                  density_per_nm3=med.density_per_nm3)
    return out


def run_config(cfg) -> FrictionResult:
    route = cfg["route"]
    if route == "hybrid":
        return friction_hybrid(cfg["medium1"], cfg["medium2"].model,
                               cfg["z0_nm"], cfg["v_m_per_s"], cfg["T_K"],
                               spec=cfg["quadrature"])
    system = PlateSystem(cfg["medium1"], cfg["medium2"], cfg["d_nm"],
                         cfg["v_m_per_s"], cfg["T_K"])
    if route == "dilute":
        return friction_dilute(system, spec=cfg["quadrature"])
    if route == "dense-full":
        return friction_dense(system, denominators=cfg["denominators"],
                              spec=cfg["quadrature"])
    return friction_drude_closed_form(system)


def result_record(cfg, result: FrictionResult):
    return {
        "config": cfg["raw"],
        "result": {
            "force": result.force,
            "force_units": result.force_units,
            "direction": result.direction,
            "H0": result.h0,
            "G": result.g,
            "quadrature_error": result.quadrature_error,
            "route": result.route,
            "converged": result.converged,
            "note": result.note,
        },
    }


_RESULT_COLUMNS = ["route", "force", "force_units", "H0", "G",
                   "quadrature_error", "converged"]


def _write_payload(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _record_csv(record) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_RESULT_COLUMNS)
    res = record["result"]
    writer.writerow([res[c] for c in _RESULT_COLUMNS])
    return buf.getvalue()


def _table_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def cmd_compute(args) -> int:
    cfg = parse_run_config(_load_json(args.config))
    result = run_config(cfg)
    record = result_record(cfg, result)
    fmt = args.format or cfg["out_format"] or "json"
    out = args.out or cfg["out_path"]
    if fmt == "json":
        _write_payload(json.dumps(record, indent=2, sort_keys=True) + "\n", out)
    else:
        _write_payload(_record_csv(record), out)
    return EXIT_OK if result.converged else EXIT_NONCONV


def cmd_sweep(args) -> int:
    sweep = parse_sweep_config(_load_json(args.config))
    columns = [sweep["axis"], "force", "force_units", "H0", "G",
               "quadrature_error", "converged", "error"]
    rows = []
    any_physics = False
    any_nonconv = False
    for value in sweep["values"]:
        try:
            cfg = _apply_axis(sweep["base"], sweep["axis"], value)
            result = run_config(cfg)
            rows.append([value, result.force, result.force_units, result.h0,
                         result.g, result.quadrature_error, result.converged,
                         ""])
            any_nonconv = any_nonconv or not result.converged
        except CasfricError as exc:
            rows.append([value, "", "", "", "", "", "", str(exc)])
            any_physics = True
    fmt = args.format or "json"
    if fmt == "json":
        payload = [dict(zip(columns, row)) for row in rows]
        _write_payload(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                       args.out)
    else:
        _write_payload(_table_csv(columns, rows), args.out)
    if any_physics:
        return EXIT_PHYSICS
    if any_nonconv:
        return EXIT_NONCONV
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = parse_run_config(_load_json(args.config))
    m1, m2 = cfg["medium1"].model, cfg["medium2"].model
    if not (isinstance(m1, Drude) and isinstance(m2, Drude)):
        raise ConfigError([(".system", "compare requires drude media")])
    system = PlateSystem(cfg["medium1"], cfg["medium2"], cfg["d_nm"],
                         cfg["v_m_per_s"], cfg["T_K"])
    ours = friction_drude_closed_form(system)
    d_m = cfg["d_nm"] * units.NM_TO_M
    sigma_over_eps0 = m1.plasma_energy_ev ** 2 / (units.HBAR_EV_S * m1.damping_ev)
    pend = comparisons.pendry_force(comparisons.PendryInput(
        sigma_over_eps0, d_m, cfg["v_m_per_s"]))
    ratio = comparisons.ratio_to_pendry(cfg["T_K"], cfg["v_m_per_s"], d_m)
    vp_coeff, vp_force = comparisons.vp_friction(comparisons.VPInput(
        sigma_over_eps0, d_m, cfg["T_K"], cfg["v_m_per_s"]))
    record = {
        "config": cfg["raw"],
        "comparison": {
            "force_Pa": ours.force,
            "pendry_force_Pa": pend,
            "ratio_to_pendry": ratio,
            "vp_coefficient": vp_coeff,
            "vp_force_Pa": vp_force,
            "vp_over_ours": vp_force / ours.force if ours.force else None,
            "conductivity_over_eps0_per_s": sigma_over_eps0,
        },
    }
    fmt = args.format or "json"
    if fmt == "json":
        _write_payload(json.dumps(record, indent=2, sort_keys=True) + "\n",
                       args.out)
    else:
        cols = sorted(record["comparison"])
        _write_payload(_table_csv(cols, [[record["comparison"][c] for c in cols]]),
                       args.out)
    return EXIT_OK


def _parse_m_grid(text):
    import numpy as np
    parts = text.split(":")
    if len(parts) in (3, 4):
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
        scale = parts[3] if len(parts) == 4 else "lin"
        if scale not in ("lin", "log"):
            raise ConfigError([("--m-grid", "scale must be lin or log")])
        if count < 1 or not lo < hi or (scale == "log" and not lo > 0):
            raise ConfigError([("--m-grid", "need 0 < min < max, count >= 1")])
        return np.geomspace(lo, hi, count) if scale == "log" \
            else np.linspace(lo, hi, count)
    raise ConfigError([("--m-grid", "expected MIN:MAX:COUNT[:log|lin]")])


def cmd_spectra(args) -> int:
    import numpy as np
    cfg = parse_run_config(_load_json(args.config))
    grid = _parse_m_grid(args.m_grid)
    u = args.u
    if not u > 0.0:
        raise ConfigError([("--u", "must be > 0")])
    s1 = spectral_density(cfg["medium1"].model)
    s2 = spectral_density(cfg["medium2"].model)
    s1.require_continuous("spectra output")
    s2.require_continuous("spectra output")
    v1 = np.asarray(s1.value(grid), dtype=float)
    v2 = np.asarray(s2.value(grid), dtype=float)
    columns = ["m_ev", "spectral1", "spectral2", "product_11", "product_12"]
    s11, s22, s12 = plane_spectral_products(cfg["medium1"].model,
                                            cfg["medium2"].model, grid, u)
    rows = [[float(m), float(a), float(b), float(c11 * c22), float(c12 ** 2)]
            for m, a, b, c11, c22, c12 in zip(grid, v1, v2, s11, s22, s12)]
    fmt = args.format or "csv"
    if fmt == "json":
        payload = [dict(zip(columns, row)) for row in rows]
        _write_payload(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                       args.out)
    else:
        _write_payload(_table_csv(columns, rows), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    results = validation.run_all()
    for r in results:
        print(r.line())
    n_fail = sum(1 for r in results if not r.passed)
    known = sum(1 for r in results
                if not r.passed and r.criterion in validation.EXPECTED_FAILURES)
    print(f"{len(results) - n_fail}/{len(results)} checks passed"
          + (f" ({known} known-inconsistent benchmark figures)" if known else ""))
    return EXIT_OK if n_fail == 0 else 1


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError([("--config", f"cannot read: {exc}")])
    except json.JSONDecodeError as exc:
        raise ConfigError([("--config", f"invalid JSON: {exc}")])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casfric",
        description="Casimir friction between polarizable media")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, default_format=None):
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--format", choices=("json", "csv"),
                       default=default_format)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    add_io(sub.add_parser("compute", help="one friction evaluation"))
    add_io(sub.add_parser("sweep", help="1-D parameter sweep"))
    add_io(sub.add_parser("compare", help="benchmark comparison record"))
    sp = sub.add_parser("spectra", help="spectral densities on an m grid")
    add_io(sp, default_format="csv")
    sp.add_argument("--m-grid", required=True,
                    help="MIN:MAX:COUNT[:log|lin] in eV")
    sp.add_argument("--u", type=float, default=1.0,
                    help="transverse mode u = q*d for the channel products")
    sub.add_parser("validate", help="run the acceptance checks")
    return parser


_COMMANDS = {
    "compute": cmd_compute,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "spectra": cmd_spectra,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    except CasfricError as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS


if __name__ == "__main__":
    sys.exit(main())
