"""Command-line front end: declarative configs, validation, runs, sweeps.

A run is described by a small YAML file with sections ``model``, ``grid``,
``time``, ``signal``, ``output``, ``tolerances``, ``initial`` and optionally
``sweep``.  Unknown sections or keys are rejected by name rather than
silently ignored.  Outputs are plain CSV with floats serialized via ``repr``
(shortest round-trip decimal), so two runs of the same config produce
byte-identical files.

Exit status contract: 0 means every validator and every audit passed;
1 means a violation, a failed audit, or an aborted run; 2 means the
configuration itself was unusable.
"""

from __future__ import annotations

import argparse
import inspect
import os
import sys
from dataclasses import dataclass, field, replace

import numpy as np
import yaml

from ._backend import BACKEND
from .errors import BciphsError, ParseError, SchemaError
from .models import MODEL_BUILDERS, ModelDefinition, build_model
from .ports import assemble_Pe, pairing_defect, validate_bcphs, xi_report
from .simulator import BalanceReport, BoundarySignal, audit_energy, audit_entropy, run
from .structure import Grid, ValidationReport, validate_closure, validate_structure

_SECTION_KEYS = {
    "model": {"name", "params"},
    "grid": {"a", "b", "N"},
    "time": {"dt", "t_end", "cfl_factor"},
    "signal": None,
    "output": {"dir", "interval", "balance", "trajectory"},
    "tolerances": {"tol_scale", "energy", "entropy", "sigma_floor"},
    "initial": None,
    "sweep": {"parameter", "values"},
}


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run description with defaults applied."""

    model: ModelDefinition
    model_name: str
    params: dict
    grid: Grid
    dt: float | None
    t_end: float | None
    cfl_factor: float
    output_interval: int | None
    signal: BoundarySignal
    out_dir: str | None
    balance_file: str
    trajectory_file: str
    tol_scale: float
    tol_energy: float | None
    tol_entropy: float | None
    sigma_floor: float
    initial: dict = field(default_factory=dict)
    sweep: tuple | None = None


def _require_map(value, where: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise SchemaError(f"section '{where}' must be a mapping", key=where)
    return value


def _number(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"'{key}' must be a number, got {value!r}", key=key)
    return float(value)


def _check_keys(sec: dict, name: str) -> None:
    allowed = _SECTION_KEYS[name]
    if allowed is None:
        return
    for key in sec:
        if key not in allowed:
            raise SchemaError(f"unknown key '{name}.{key}'", key=f"{name}.{key}")


def _parse_signal(spec, r: int) -> BoundarySignal:
    if spec is None or spec == "closed":
        return BoundarySignal.closed(r)
    if isinstance(spec, dict) and set(spec) == {"constant"}:
        values = np.atleast_1d(np.asarray(spec["constant"], dtype=float))
        if values.shape != (r,):
            raise SchemaError(
                f"signal dimension {values.shape[0]} does not match the model's "
                f"port dimension {r}",
                key="signal.constant",
            )
        return BoundarySignal.constant(values)
    if isinstance(spec, dict) and set(spec) == {"table"}:
        tab = _require_map(spec["table"], "signal.table")
        for key in tab:
            if key not in {"times", "values"}:
                raise SchemaError(f"unknown key 'signal.table.{key}'", key=f"signal.table.{key}")
        try:
            times = np.asarray(tab.get("times"), dtype=float)
            values = np.atleast_2d(np.asarray(tab.get("values"), dtype=float))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"signal.table entries must be numeric: {exc}", key="signal.table")
        if values.ndim != 2 or values.shape[1] != r:
            raise SchemaError(
                f"signal dimension {values.shape[-1]} does not match the model's "
                f"port dimension {r}",
                key="signal.table.values",
            )
        try:
            return BoundarySignal.table(times, values)
        except ValueError as exc:
            raise SchemaError(f"bad signal table: {exc}", key="signal.table")
    raise SchemaError(
        "signal must be 'closed', {constant: [...]}, or {table: {times, values}}",
        key="signal",
    )


def parse_config(path: str) -> RunConfig:
    """Read and resolve a YAML config; reject anything off-schema by name."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read config file: {exc}")
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ParseError(
            exc.problem or "malformed YAML",
            line=None if mark is None else mark.line + 1,
            column=None if mark is None else mark.column + 1,
        )
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed YAML: {exc}")
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise SchemaError("config root must be a mapping of sections")
    for key in doc:
        if key not in _SECTION_KEYS:
            raise SchemaError(f"unknown section '{key}'", key=str(key))

    model_sec = _require_map(doc.get("model"), "model")
    _check_keys(model_sec, "model")
    name = model_sec.get("name")
    if not isinstance(name, str) or name not in MODEL_BUILDERS:
        raise SchemaError(
            f"model.name must be one of {sorted(MODEL_BUILDERS)}, got {name!r}",
            key="model.name",
        )
    params = _require_map(model_sec.get("params"), "model.params")
    allowed = set(inspect.signature(MODEL_BUILDERS[name]).parameters)
    for key in params:
        if key not in allowed:
            raise SchemaError(f"unknown key 'model.params.{key}'", key=f"model.params.{key}")
    try:
        model = build_model(name, **params)
    except (ValueError, BciphsError) as exc:
        raise SchemaError(f"bad model parameters: {exc}", key="model.params")

    grid_sec = _require_map(doc.get("grid"), "grid")
    _check_keys(grid_sec, "grid")
    base = model.default_grid
    try:
        grid = Grid(
            _number(grid_sec.get("a", base.a), "grid.a"),
            _number(grid_sec.get("b", base.b), "grid.b"),
            int(_number(grid_sec.get("N", base.N), "grid.N")),
        )
    except ValueError as exc:
        raise SchemaError(f"bad grid: {exc}", key="grid")

    time_sec = _require_map(doc.get("time"), "time")
    _check_keys(time_sec, "time")
    dt = time_sec.get("dt")
    if dt is not None:
        dt = _number(dt, "time.dt")
        if dt <= 0.0:
            raise SchemaError(f"time.dt must be positive, got {dt}", key="time.dt")
    t_end = time_sec.get("t_end")
    if t_end is not None:
        t_end = _number(t_end, "time.t_end")
        if t_end <= 0.0:
            raise SchemaError(f"time.t_end must be positive, got {t_end}", key="time.t_end")
    cfl_factor = _number(time_sec.get("cfl_factor", 0.25), "time.cfl_factor")
    if not 0.0 < cfl_factor <= 1.0:
        raise SchemaError(f"time.cfl_factor must lie in (0, 1], got {cfl_factor}", key="time.cfl_factor")

    signal = _parse_signal(doc.get("signal"), model.pp.r)

    out_sec = _require_map(doc.get("output"), "output")
    _check_keys(out_sec, "output")
    interval = out_sec.get("interval")
    if interval is not None:
        interval = int(_number(interval, "output.interval"))
        if interval < 1:
            raise SchemaError(f"output.interval must be >= 1, got {interval}", key="output.interval")

    tol_sec = _require_map(doc.get("tolerances"), "tolerances")
    _check_keys(tol_sec, "tolerances")
    tol_scale = _number(tol_sec.get("tol_scale", 1.0), "tolerances.tol_scale")
    if tol_scale <= 0.0:
        raise SchemaError(f"tolerances.tol_scale must be positive, got {tol_scale}", key="tolerances.tol_scale")
    tol_energy = tol_sec.get("energy")
    tol_energy = None if tol_energy is None else _number(tol_energy, "tolerances.energy")
    tol_entropy = tol_sec.get("entropy")
    tol_entropy = None if tol_entropy is None else _number(tol_entropy, "tolerances.entropy")
    sigma_floor = _number(tol_sec.get("sigma_floor", -1e-12), "tolerances.sigma_floor")

    initial = _require_map(doc.get("initial"), "initial")
    fields = set(inspect.signature(model.primitives_fn).parameters) - {"grid"}
    for key in initial:
        if key not in fields:
            raise SchemaError(
                f"unknown key 'initial.{key}' (model fields: {sorted(fields)})",
                key=f"initial.{key}",
            )

    sweep = None
    if "sweep" in doc:
        sweep_sec = _require_map(doc["sweep"], "sweep")
        _check_keys(sweep_sec, "sweep")
        parameter = sweep_sec.get("parameter")
        if parameter not in allowed:
            raise SchemaError(
                f"sweep.parameter must be a parameter of {name}, got {parameter!r}",
                key="sweep.parameter",
            )
        values = sweep_sec.get("values")
        if not isinstance(values, list) or not values:
            raise SchemaError("sweep.values must be a nonempty list", key="sweep.values")
        sweep = (parameter, tuple(_number(v, "sweep.values") for v in values))

    return RunConfig(
        model=model,
        model_name=name,
        params=dict(params),
        grid=grid,
        dt=dt,
        t_end=t_end,
        cfl_factor=cfl_factor,
        output_interval=interval,
        signal=signal,
        out_dir=out_sec.get("dir"),
        balance_file=str(out_sec.get("balance", "balance.csv")),
        trajectory_file=str(out_sec.get("trajectory", "trajectory.csv")),
        tol_scale=tol_scale,
        tol_energy=tol_energy,
        tol_entropy=tol_entropy,
        sigma_floor=sigma_floor,
        initial=dict(initial),
        sweep=sweep,
    )


# ---------------------------------------------------------------------------
# report and file helpers


def _matrix_text(A: np.ndarray) -> str:
    rows = np.atleast_2d(np.asarray(A, dtype=float))
    body = "; ".join("[" + ", ".join(repr(float(v)) for v in row) + "]" for row in rows)
    return "[" + body + "]"


def _validate_model(model: ModelDefinition, seed: int) -> ValidationReport:
    rep = ValidationReport()
    rep.merge(validate_structure(model.sm))
    rep.merge(validate_closure(model.tc, rng=np.random.default_rng(seed)))
    rep.merge(xi_report(model.pp.Xi1, model.pp.Xi2))
    return rep


def _out_dir(cfg: RunConfig, flag: str | None) -> str:
    return flag or cfg.out_dir or os.environ.get("BCIPHS_OUT_DIR") or "."


def _field_names(model: ModelDefinition) -> tuple:
    names = model.extras.get("field_names")
    if names is None:
        names = tuple(f"x{i}" for i in range(model.sm.n)) + ("s",)
    return tuple(names)


def _write_balance(path: str, reports) -> None:
    lines = [",".join(BalanceReport.COLUMNS)]
    for rep in reports:
        lines.append(",".join(repr(float(v)) for v in rep.row()))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_trajectory(path: str, model: ModelDefinition, result) -> None:
    names = _field_names(model)
    z = result.grid.nodes
    lines = [",".join(("t", "z") + names)]
    for k, t in enumerate(result.times):
        x = result.xs[k]
        s = result.ss[k]
        columns = [x[i] for i in range(x.shape[0])] + [s]
        for j in range(result.grid.N):
            lines.append(",".join(repr(float(v)) for v in [t, z[j]] + [c[j] for c in columns]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_list_models(stream=None) -> int:
    stream = stream or sys.stdout
    for name, builder in MODEL_BUILDERS.items():
        model = builder()
        print(f"{name}  (ports r = {model.pp.r})", file=stream)
        for kind in ("v", "y"):
            docs = model.port_doc.get(kind, ())
            for i, doc in enumerate(docs):
                print(f"    {kind}[{i}]: {doc}", file=stream)
    return 0


def cmd_validate(cfg: RunConfig, seed: int = 0, stream=None) -> int:
    stream = stream or sys.stdout
    model = cfg.model
    rep = _validate_model(model, seed)

    print(f"model: {cfg.model_name}  (n={model.sm.n}, m={model.sm.m}, gs={model.sm.gs})", file=stream)
    print(f"kernel backend: {BACKEND}", file=stream)
    print(f"M    = {_matrix_text(model.pp.M)}", file=stream)
    print(f"Mp   = {_matrix_text(model.pp.Mp)}", file=stream)
    print(f"Pep  = {_matrix_text(model.pp.Pep)}", file=stream)
    defect = pairing_defect(model.pp, assemble_Pe(model.sm))
    print(f"port power pairing defect: {defect:.3e}", file=stream)
    if defect > 1e-8:
        rep.add("pairing", f"boundary port pairing defect {defect:.3e} exceeds 1e-08")
    for kind in ("v", "y"):
        for i, doc in enumerate(model.port_doc.get(kind, ())):
            print(f"  {kind}[{i}]: {doc}", file=stream)
    if "reversible_WB" in model.extras:
        sub = validate_bcphs(model.extras["reversible_WB"], model.extras["reversible_WC"], model.sm.P1)
        rep.merge(sub)
        print("reversible boundary-map conditions: " + ("OK" if sub.ok else "VIOLATED"), file=stream)

    if rep.ok:
        print("validation: OK", file=stream)
        return 0
    print(str(rep), file=stream)
    return 1


def cmd_run(cfg: RunConfig, out_flag: str | None = None, tol_scale: float | None = None,
            seed: int = 0, stream=None) -> int:
    stream = stream or sys.stdout
    model = cfg.model
    rep = _validate_model(model, seed)
    if not rep.ok:
        print(str(rep), file=stream)
        return 1
    if cfg.t_end is None:
        raise SchemaError("time.t_end is required for run", key="time.t_end")

    state = model.state_from(cfg.grid, **cfg.initial) if cfg.initial else None
    result = run(
        model,
        cfg.t_end,
        dt=cfg.dt,
        signal=cfg.signal,
        grid=cfg.grid,
        state=state,
        output_interval=cfg.output_interval,
        cfl_factor=cfg.cfl_factor,
    )

    out = _out_dir(cfg, out_flag)
    os.makedirs(out, exist_ok=True)
    balance_path = os.path.join(out, cfg.balance_file)
    trajectory_path = os.path.join(out, cfg.trajectory_file)
    _write_balance(balance_path, result.reports)
    _write_trajectory(trajectory_path, model, result)
    print(f"wrote {balance_path}", file=stream)
    print(f"wrote {trajectory_path}", file=stream)

    if result.aborted:
        print(f"run aborted at t={result.times[-1]:.6g}: {result.reason}", file=stream)
        return 1

    scale = cfg.tol_scale if tol_scale is None else tol_scale
    dt_record = result.reports[1].t - result.reports[0].t if len(result.reports) > 1 else result.dt
    h_mag = max(abs(rep_.H) for rep_ in result.reports)
    s_mag = max(abs(rep_.S) for rep_ in result.reports)
    tol_e = cfg.tol_energy
    if tol_e is None:
        tol_e = model.audit_tol("energy", result.grid, dt_record, h_mag, scale)
    tol_s = cfg.tol_entropy
    if tol_s is None:
        tol_s = model.audit_tol("entropy", result.grid, dt_record, s_mag, scale)
    energy = audit_energy(result.reports, tol_e)
    entropy = audit_entropy(result.reports, tol_s, sigma_floor=cfg.sigma_floor)
    print(str(energy), file=stream)
    print(str(entropy), file=stream)
    return 0 if energy.passed and entropy.passed else 1


def cmd_sweep(cfg: RunConfig, out_flag: str | None = None, tol_scale: float | None = None,
              seed: int = 0, stream=None) -> int:
    stream = stream or sys.stdout
    if cfg.sweep is None:
        raise SchemaError("sweep subcommand needs a 'sweep' section", key="sweep")
    parameter, values = cfg.sweep
    root = _out_dir(cfg, out_flag)
    worst = 0
    for value in values:
        params = dict(cfg.params)
        params[parameter] = value
        model = build_model(cfg.model_name, **params)
        sub = replace(cfg, model=model, params=params, sweep=None, out_dir=None)
        subdir = os.path.join(root, f"{parameter}_{value!r}")
        print(f"--- {parameter} = {value!r} ---", file=stream)
        code = cmd_run(sub, out_flag=subdir, tol_scale=tol_scale, seed=seed, stream=stream)
        worst = max(worst, code)
    return worst


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bciphs",
        description="Simulate boundary-controlled irreversible port-Hamiltonian systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-models", help="list the built-in models and their port semantics")

    for name, desc in (
        ("validate", "check structure, closure, and port parametrization"),
        ("run", "integrate one configuration and write CSV outputs"),
        ("sweep", "run one configuration across a list of parameter values"),
    ):
        p = sub.add_parser(name, help=desc)
        p.add_argument("--config", required=True, help="path to the YAML run configuration")
        p.add_argument("--seed", type=int, default=0, help="seed for validator sampling")
        if name != "validate":
            p.add_argument("--out", default=None, help="output directory (overrides config and BCIPHS_OUT_DIR)")
            p.add_argument("--tol-scale", type=float, default=None, help="scale factor on audit tolerances")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "list-models":
            return cmd_list_models()
        cfg = parse_config(args.config)
        if args.command == "validate":
            return cmd_validate(cfg, seed=args.seed)
        if args.command == "run":
            return cmd_run(cfg, out_flag=args.out, tol_scale=args.tol_scale, seed=args.seed)
        return cmd_sweep(cfg, out_flag=args.out, tol_scale=args.tol_scale, seed=args.seed)
    except ParseError as exc:
        where = ""
        if exc.line is not None:
            where = f" (line {exc.line}" + ("" if exc.column is None else f", column {exc.column}") + ")"
        print(f"config error: {exc}{where}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BciphsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
