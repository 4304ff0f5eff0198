"""Batch front end: ``pairbreaker <command> --config run.yaml [--set k=v] [--out-dir d]``.

Each command reads one YAML run configuration (schema in docs/config.md),
writes CSV/JSON artifacts into the output directory and a ``run_report.json``
describing the run. Artifacts are byte-identical for identical configs.
"""

from __future__ import annotations

import argparse
import copy
import json
import math
import os
import sys
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

import numpy as np
import yaml

from . import io as pio
from .antenna import coupling_spectrum, load_impedance_table
from .core import CONST, gap_from_threshold, make_grid, threshold_from_gap
from .errors import ConfigError, PairbreakerError
from .junction import JunctionParams, QpState, steady_state_xqp
from .radiation import (BlackbodyEnvironment, EnclosureParams, baseline_parity_rate,
                        effective_temperature, parity_rate_spectrum)
from .telemetry import average_psd, fit_lorentzian, simulate_records
from .transitions import predicted_upward_spectrum
from .transmon import dispersion_scan, fit_ej_ec

COMMANDS = ("spectrum", "baseline", "telegraph", "transitions", "transmon")
DEFAULT_THRESHOLD = 92e9
# reduced quasiparticle recombination rate in aluminum, 1/s
DEFAULT_RECOMBINATION_RATE = 1 / 438e-9
REPORT_NAME = "run_report.json"


@dataclass
class RunReport:
    command: str
    config: dict
    manifest: list = field(default_factory=list)
    duration_s: float = 0.0
    warnings: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.errors


# ---------------------------------------------------------------- config

def _path_keys(command):
    return {
        "spectrum": [("transmitter", "impedance_table"), ("receiver", "impedance_table")],
        "baseline": [("receiver", "impedance_table")],
        "transitions": [("transitions", "parity_spectrum")],
        "telegraph": [],
        "transmon": [],
    }[command]


def set_dotted(cfg, dotted, value):
    keys = dotted.split(".")
    node = cfg
    for k in keys[:-1]:
        if k.isdigit() and isinstance(node, list):
            node = node[int(k)]
            continue
        node = node.setdefault(k, {})
        if not isinstance(node, (dict, list)):
            raise ConfigError(f"--set {dotted}: {k!r} is not a section")
    last = keys[-1]
    if isinstance(node, list) and last.isdigit():
        node[int(last)] = value
    else:
        node[last] = value


def load_config(path, overrides=(), command=None):
    """Load a YAML config, apply ``key.sub=value`` overrides and absolutize paths."""
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        try:
            cfg = yaml.safe_load(fh) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, raw = item.split("=", 1)
        set_dotted(cfg, key.strip(), yaml.safe_load(raw))
    base = os.path.dirname(os.path.abspath(path))
    for section, key in _path_keys(command) if command else ():
        node = cfg.get(section)
        if isinstance(node, dict) and isinstance(node.get(key), str):
            node[key] = os.path.normpath(os.path.join(base, node[key]))
    series = (cfg.get("telemetry") or {}).get("series_files")
    if isinstance(series, list):
        cfg["telemetry"]["series_files"] = [os.path.normpath(os.path.join(base, s)) for s in series]
    return cfg


def _section(cfg, name):
    node = cfg.get(name)
    if not isinstance(node, dict):
        raise ConfigError(f"missing config section {name!r}")
    return node


def _number(node, key, section, default=None, required=True):
    if key not in node or node[key] is None:
        if default is not None or not required:
            return default
        raise ConfigError(f"{section}.{key} is required")
    try:
        value = float(node[key])
    except (TypeError, ValueError):
        raise ConfigError(f"{section}.{key} must be a number, got {node[key]!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{section}.{key} must be finite")
    return value


def _integer(node, key, section, default=None):
    value = _number(node, key, section, default)
    if value != int(value):
        raise ConfigError(f"{section}.{key} must be an integer")
    return int(value)


def _load_table(node, section):
    path = node.get("impedance_table")
    if not path:
        raise ConfigError(f"{section}.impedance_table is required")
    if not os.path.isfile(path):
        raise ConfigError(f"{section}.impedance_table: file not found: {path}")
    return load_impedance_table(path)


def _delta(node, section):
    if node.get("delta") is not None:
        return _number(node, "delta", section)
    return gap_from_threshold(_number(node, "threshold_hz", section, DEFAULT_THRESHOLD))


def _junction(node, section):
    try:
        r_n = _number(node, "r_n", section)
        c_j = _number(node, "c_j", section)
        delta = _delta(node, section)
        if node.get("i0_bare") is not None:
            return JunctionParams(r_n, c_j, _number(node, "i0_bare", section), delta)
        return JunctionParams.from_resistance(r_n, c_j, delta)
    except PairbreakerError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{section}: {exc}") from None


def _qp_state(node, section):
    if node.get("x_qp") is not None:
        return QpState(_number(node, "x_qp", section))
    if node.get("generation_rate") is not None:
        return steady_state_xqp(
            _number(node, "generation_rate", section),
            _number(node, "recombination_rate", section, DEFAULT_RECOMBINATION_RATE),
        )
    return QpState(0.0)


def _threads():
    raw = os.environ.get("PAIRBREAKER_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ConfigError(f"PAIRBREAKER_THREADS must be an integer, got {raw!r}") from None
        return max(n, 1)
    return os.cpu_count() or 1


@contextmanager
def _executor():
    n = _threads()
    if n == 1:
        yield None
    else:
        with ThreadPoolExecutor(max_workers=n) as ex:
            yield ex


def _write_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return os.fspath(path)


# ---------------------------------------------------------------- commands

def cmd_spectrum(cfg, out_dir, report):
    tx_node = _section(cfg, "transmitter")
    rx_node = _section(cfg, "receiver")
    enc_node = cfg.get("enclosure") or {}
    grid_node = _section(cfg, "grid")
    tx_table = _load_table(tx_node, "transmitter")
    rx_table = _load_table(rx_node, "receiver")
    tx = _junction(tx_node, "transmitter")
    rx = _junction(rx_node, "receiver")
    qp = _qp_state(tx_node, "transmitter")
    enc = EnclosureParams(
        _number(enc_node, "sigma_wall", "enclosure", EnclosureParams.sigma_wall),
        _number(enc_node, "area_inner", "enclosure", EnclosureParams.area_inner),
        _number(enc_node, "scale_factor", "enclosure", EnclosureParams.scale_factor),
    )
    gamma_0 = _number(cfg, "gamma_0", "gamma_0", 0.0)
    grid = make_grid(_number(grid_node, "f_start", "grid"), _number(grid_node, "f_stop", "grid"),
                     _integer(grid_node, "n_points", "grid"))
    spec = parity_rate_spectrum(coupling_spectrum(tx_table, tx, grid),
                                coupling_spectrum(rx_table, rx, grid),
                                tx, qp, enc, gamma_0, grid)
    report.manifest.append(pio.write_transfer_spectrum(spec, os.path.join(out_dir, "transfer_spectrum.csv")))
    f_peak, rate_peak = spec.peak()
    report.summary.update({
        "peak_frequency_hz": f_peak,
        "peak_gamma_p_per_s": rate_peak,
        "peak_over_baseline": rate_peak / gamma_0 if gamma_0 > 0 else None,
        "x_qp": qp.x_qp,
        "i0_transmitter_a": tx.i0_bare * (1 - qp.x_qp),
    })


def cmd_baseline(cfg, out_dir, report):
    rx_node = _section(cfg, "receiver")
    env_node = _section(cfg, "environment")
    has_t = env_node.get("temperature") is not None
    has_g = env_node.get("gamma_0") is not None
    if has_t == has_g:
        raise ConfigError("environment needs exactly one of 'temperature' or 'gamma_0'")
    table = _load_table(rx_node, "receiver")
    rx = _junction(rx_node, "receiver")
    f_th = _number(env_node, "f_threshold", "environment", threshold_from_gap(rx.delta))
    f_cut = _number(env_node, "f_cutoff", "environment", 2e12)
    n_points = _integer(env_node, "n_points", "environment", 2000)
    spec = coupling_spectrum(table, rx, make_grid(f_th, f_cut, n_points))
    template = BlackbodyEnvironment(1.0, f_th, f_cut)
    if has_t:
        t = _number(env_node, "temperature", "environment")
        gamma_0 = baseline_parity_rate(spec, BlackbodyEnvironment(t, f_th, f_cut))
        result = {"mode": "forward", "temperature_k": t, "gamma_0_per_s": gamma_0}
    else:
        gamma_0 = _number(env_node, "gamma_0", "environment")
        t = effective_temperature(spec, gamma_0, template)
        result = {"mode": "inverse", "temperature_k": t, "gamma_0_per_s": gamma_0}
    result.update({"f_threshold_hz": f_th, "f_cutoff_hz": f_cut})
    report.manifest.append(_write_json(result, os.path.join(out_dir, "baseline.json")))
    report.summary.update(result)


def cmd_telegraph(cfg, out_dir, report):
    tel = _section(cfg, "telemetry")
    files = tel.get("series_files")
    if files:
        missing = [p for p in files if not os.path.isfile(p)]
        if missing:
            raise ConfigError(f"telemetry.series_files: file not found: {missing[0]}")
        records = [pio.read_parity_series(p) for p in files]
        dt = records[0].dt
    else:
        if cfg.get("seed") is None:
            raise ConfigError("simulation requires a top-level 'seed'")
        seed = _integer(cfg, "seed", "seed")
        dt = _number(tel, "dt", "telemetry", 50e-6)
        n_records = _integer(tel, "n_records", "telemetry", 9)
        with _executor() as ex:
            records = simulate_records(
                _number(tel, "gamma_p", "telemetry"), dt,
                _integer(tel, "n_samples", "telemetry", 5000),
                _number(tel, "fidelity", "telemetry", 1.0), seed, n_records, executor=ex,
            )
        for k, rec in enumerate(records):
            report.manifest.append(
                pio.write_parity_series(rec, os.path.join(out_dir, f"series_{k:03d}.csv"), k))
    psd = average_psd(records)
    report.manifest.append(pio.write_psd(psd, os.path.join(out_dir, "psd.csv")))
    fit = fit_lorentzian(psd, dt)
    result = {"gamma_p": fit.gamma_p, "fidelity": fit.fidelity, "residual": fit.residual_norm,
              "n_records": psd.n_records_averaged, "dt_s": dt}
    report.manifest.append(_write_json(result, os.path.join(out_dir, "fit.json")))
    report.summary.update(result)


def cmd_transitions(cfg, out_dir, report):
    node = _section(cfg, "transitions")
    path = node.get("parity_spectrum")
    if not path:
        raise ConfigError("transitions.parity_spectrum is required")
    if not os.path.isfile(path):
        raise ConfigError(f"transitions.parity_spectrum: file not found: {path}")
    spec = pio.read_parity_spectrum(path, _number(node, "gamma_0", "transitions", required=False))
    delta = _delta(node, "transitions")
    ej_over_ec = _number(node, "ej_over_ec", "transitions")
    up = predicted_upward_spectrum(spec, delta, ej_over_ec,
                                   include_baseline=bool(node.get("include_baseline", False)))
    report.manifest.append(pio.write_upward_spectrum(up, os.path.join(out_dir, "upward_spectrum.csv")))
    report.manifest.append(pio.write_upward_ratio(up, os.path.join(out_dir, "upward_ratio.csv")))
    report.summary.update({
        "n_rows": int(up.freqs.size),
        "ratio_min": float(np.min(up.ratio)),
        "ratio_max": float(np.max(up.ratio)),
    })


def cmd_transmon(cfg, out_dir, report):
    node = _section(cfg, "transmon")
    devices = node.get("devices")
    if not isinstance(devices, list) or not devices:
        raise ConfigError("transmon.devices must be a non-empty list")
    n_cutoff = _integer(node, "n_cutoff", "transmon", 30)
    scan_points = _integer(node, "scan_points", "transmon", 0)

    def one(item):
        k, dev = item
        name = str(dev.get("name", f"device_{k}"))
        try:
            f01 = _number(dev, "f01_hz", f"transmon.devices[{k}]")
            d = _number(dev, "two_delta_f_hz", f"transmon.devices[{k}]")
            params = fit_ej_ec(f01, d, n_cutoff=n_cutoff)
        except PairbreakerError as exc:
            return name, dev, None, str(exc)
        return name, dev, params, None

    with _executor() as ex:
        results = list(map(one, enumerate(devices)) if ex is None else ex.map(one, enumerate(devices)))

    h = CONST.h
    names, f01s, dfs, ejs, ecs, ratios, status = [], [], [], [], [], [], []
    for name, dev, params, err in results:
        names.append(name)
        f01s.append(dev.get("f01_hz"))
        dfs.append(dev.get("two_delta_f_hz"))
        if err is None:
            ejs.append(float(params.e_j / h))
            ecs.append(float(params.e_c / h))
            ratios.append(float(params.ratio))
            status.append("ok")
            report.summary[name] = {"ej_over_ec": float(params.ratio), "e_c_hz": float(params.e_c / h)}
            if scan_points > 0:
                n_g = np.linspace(0.0, 1.0, scan_points)
                even, odd = dispersion_scan(params, n_g)
                report.manifest.append(pio.write_dispersion_scan(
                    n_g, even, odd, os.path.join(out_dir, f"dispersion_{name}.csv")))
        else:
            ejs.append(float("nan"))
            ecs.append(float("nan"))
            ratios.append(float("nan"))
            status.append("error")
            report.errors.append(f"{name}: {err}")
    path = os.path.join(out_dir, "transmon_fit.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("name,f01_hz,two_delta_f_hz,e_j_hz,e_c_hz,ej_over_ec,status\n")
        for row in zip(names, f01s, dfs, ejs, ecs, ratios, status):
            cells = [row[0]] + [pio.fmt(float(v)) if v is not None else "" for v in row[1:6]] + [row[6]]
            fh.write(",".join(cells) + "\n")
    report.manifest.append(path)


HANDLERS = {
    "spectrum": cmd_spectrum,
    "baseline": cmd_baseline,
    "telegraph": cmd_telegraph,
    "transitions": cmd_transitions,
    "transmon": cmd_transmon,
}


def run(command, config, out_dir) -> RunReport:
    """Run ``command`` on an already-loaded config dict; never raises on model errors."""
    if command not in HANDLERS:
        raise ConfigError(f"unknown command {command!r}")
    os.makedirs(out_dir, exist_ok=True)
    report = RunReport(command, copy.deepcopy(config))
    start = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            HANDLERS[command](config, out_dir, report)
        except PairbreakerError as exc:
            report.errors.append(str(exc))
    report.warnings = [f"{w.category.__name__}: {w.message}" for w in caught]
    report.duration_s = time.perf_counter() - start
    _write_json(asdict(report), os.path.join(out_dir, REPORT_NAME))
    return report


def build_parser():
    parser = argparse.ArgumentParser(prog="pairbreaker", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HANDLERS[name].__name__.replace("cmd_", ""))
        p.add_argument("--config", required=True, help="YAML run configuration")
        p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config value, e.g. --set grid.n_points=801")
        p.add_argument("--out-dir", default="pairbreaker_out", help="output directory")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.overrides, args.command)
        report = run(args.command, cfg, args.out_dir)
    except PairbreakerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for key, value in report.summary.items():
        print(f"{key}: {value}")
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    for e in report.errors:
        print(f"error: {e}", file=sys.stderr)
    print(f"wrote {len(report.manifest)} file(s) to {args.out_dir}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
