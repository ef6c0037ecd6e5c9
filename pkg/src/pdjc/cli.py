"""Scenario runner for spectrum scans, evolutions and oracle validation.

Subcommands
-----------
``spectrum``   dressed-energy scan over detuning, CSV output
``evolve``     observable time series (CSV) plus a JSON summary
``validate``   closed form vs brute-force oracle, JSON report, nonzero
               exit status when any threshold is exceeded

All commands read a single JSON config (``--config``) and write into a
directory (``--out``).  Outputs are deterministic: the same config yields
byte-identical files.  The only environment variable consulted is
``PDJC_THREADS`` (worker threads for multi-block spectrum scans).

The time axis is the scaled time g*t, matching the usual weak-coupling
presentation; runs with g = 0 have no scale and require an absolute
``t_max`` instead (the first CSV column then holds absolute time).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from .algebra import CatStateParams, TruncationError, wcs_build
from .dynamics import trajectory
from .observables import observable_series
from .oracle import compare, default_n_trunc, oracle_run
from .spectrum import ModelParams, block_hamiltonian, dressed_pair, spectrum_scan

__all__ = ["RunConfig", "ConfigError", "run_spectrum", "run_evolution", "run_validate", "main"]

OBSERVABLE_CHOICES = ("inversion", "fidelity", "entropy", "mandel_q", "squeezing")

# Fixed CSV schema; requested observables select a subset, order is fixed.
CSV_COLUMNS = (
    "gt",
    "inversion",
    "fidelity",
    "entropy",
    "g_plus",
    "g_minus",
    "mandel_q",
    "s_x",
    "s_p",
    "sigma_xx",
    "sigma_pp",
    "bound",
)

_COLUMNS_PER_OBSERVABLE = {
    "inversion": ("inversion",),
    "fidelity": ("fidelity",),
    "entropy": ("entropy", "g_plus", "g_minus"),
    "mandel_q": ("mandel_q",),
    "squeezing": ("s_x", "s_p", "sigma_xx", "sigma_pp", "bound"),
}

AMPLITUDE_THRESHOLD = 1e-8
RESIDUAL_THRESHOLD = 1e-10
NORM_THRESHOLD = 1e-12


class ConfigError(ValueError):
    """A run configuration field is missing, unknown or invalid."""


@dataclass(frozen=True)
class RunConfig:
    """One scenario; defaults mirror the canonical collapse-revival run
    (|w|^2 = 30, g = 0.01, resonance)."""

    omega: float = 1.0
    omega0: float = 1.0
    g: float = 0.01
    lam: float = 0.0
    w_mod_sq: float = 30.0
    w_phase: float = 0.0
    t_max_scaled: float = 200.0
    t_max: float | None = None
    n_points: int = 2001
    tail_tol: float = 1e-12
    n_trunc_override: int | None = None
    observables: tuple = OBSERVABLE_CHOICES
    n_list: tuple = (1, 2)
    delta_start: float = -0.2
    delta_stop: float = 0.2
    delta_step: float = 0.002

    _JSON_KEYS = {
        "omega",
        "omega0",
        "delta",
        "g",
        "lambda",
        "w_mod_sq",
        "w_phase",
        "t_max_scaled",
        "t_max",
        "n_points",
        "tail_tol",
        "n_trunc_override",
        "observables",
        "n_list",
        "delta_start",
        "delta_stop",
        "delta_step",
    }

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(raw) - cls._JSON_KEYS
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        data = dict(raw)
        omega = float(data.pop("omega", 1.0))
        delta = data.pop("delta", None)
        if "omega0" in data:
            omega0 = float(data.pop("omega0"))
            if delta is not None and abs((omega - omega0) - float(delta)) > 1e-12:
                raise ConfigError("omega0 and delta are inconsistent")
        elif delta is not None:
            omega0 = omega - float(delta)
        else:
            omega0 = omega
        kwargs = {"omega": omega, "omega0": omega0}
        if "lambda" in data:
            kwargs["lam"] = float(data.pop("lambda"))
        for key in ("g", "w_mod_sq", "w_phase", "t_max_scaled", "tail_tol",
                    "delta_start", "delta_stop", "delta_step"):
            if key in data:
                kwargs[key] = float(data.pop(key))
        if "t_max" in data:
            value = data.pop("t_max")
            kwargs["t_max"] = None if value is None else float(value)
        if "n_points" in data:
            kwargs["n_points"] = int(data.pop("n_points"))
        if "n_trunc_override" in data:
            value = data.pop("n_trunc_override")
            kwargs["n_trunc_override"] = None if value is None else int(value)
        if "observables" in data:
            kwargs["observables"] = tuple(data.pop("observables"))
        if "n_list" in data:
            kwargs["n_list"] = tuple(int(n) for n in data.pop("n_list"))
        config = cls(**kwargs)
        config.validate()
        return config

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        data = asdict(self)
        data["lambda"] = data.pop("lam")
        data["observables"] = list(self.observables)
        data["n_list"] = list(self.n_list)
        return data

    def validate(self) -> None:
        for name in ("omega", "omega0", "g", "lam", "w_mod_sq", "w_phase",
                     "t_max_scaled", "tail_tol", "delta_start", "delta_stop", "delta_step"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"config field '{name}' must be finite")
        if self.n_points < 2:
            raise ConfigError("config field 'n_points' must be >= 2")
        bad = set(self.observables) - set(OBSERVABLE_CHOICES)
        if bad:
            raise ConfigError(f"config field 'observables' has unknown entries: {', '.join(sorted(bad))}")
        try:
            self.model_params()
        except ValueError as exc:
            raise ConfigError(f"invalid physical parameters: {exc}") from exc

    def model_params(self) -> ModelParams:
        return ModelParams(omega=self.omega, omega0=self.omega0, g=self.g, lam=self.lam)

    def time_grid(self):
        """(axis, absolute times); the axis is g*t, or absolute t when g = 0."""
        if self.g > 0:
            if self.t_max_scaled <= 0:
                raise ConfigError("config field 't_max_scaled' must be > 0 (grid degenerate)")
            axis = np.linspace(0.0, self.t_max_scaled, self.n_points)
            return axis, axis / self.g
        if self.t_max is None:
            raise ConfigError("config field 't_max' (absolute time) is required when g = 0")
        if self.t_max <= 0:
            raise ConfigError("config field 't_max' must be > 0 (grid degenerate)")
        axis = np.linspace(0.0, self.t_max, self.n_points)
        return axis, axis

    def field_state(self):
        return wcs_build(
            CatStateParams(modulus_sq=self.w_mod_sq, phase=self.w_phase),
            self.lam,
            tail_tol=self.tail_tol,
        )


def _format_cell(value: float) -> str:
    if math.isnan(value):
        return ""
    return f"{value:.17g}"


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_spectrum(config: RunConfig, out_dir: str) -> str:
    """Write the dressed-energy scan to ``spectrum.csv``; returns the path."""
    os.makedirs(out_dir, exist_ok=True)
    workers = int(os.environ.get("PDJC_THREADS", "1"))

    def scan_one(n):
        return spectrum_scan(
            [n], config.omega, config.g, config.lam,
            config.delta_start, config.delta_stop, config.delta_step,
        )

    if workers > 1 and len(config.n_list) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tables = list(pool.map(scan_one, config.n_list))
    else:
        tables = [scan_one(n) for n in config.n_list]

    path = os.path.join(out_dir, "spectrum.csv")
    rows = (
        (str(int(r["n"])), _format_cell(r["delta"]), _format_cell(r["e_plus"]), _format_cell(r["e_minus"]))
        for table in tables
        for r in table
    )
    _write_csv(path, ("n", "delta", "e_plus", "e_minus"), rows)
    return path


def _selected_columns(observables) -> list:
    wanted = set()
    for name in observables:
        wanted.update(_COLUMNS_PER_OBSERVABLE[name])
    return [c for c in CSV_COLUMNS if c == "gt" or c in wanted]


def run_evolution(
    config: RunConfig,
    out_dir: str,
    with_oracle: bool = False,
    observables=None,
):
    """Write ``series.csv`` and ``summary.json``; returns (csv, json) paths."""
    if observables is not None:
        config = replace(config, observables=tuple(observables))
        config.validate()
    os.makedirs(out_dir, exist_ok=True)
    axis, times = config.time_grid()
    field = config.field_state()
    params = config.model_params()
    series = observable_series(field, params, times)

    data = {
        "gt": axis,
        "inversion": series.inversion,
        "fidelity": series.fidelity,
        "entropy": series.entropy,
        "g_plus": series.g_plus,
        "g_minus": series.g_minus,
        "mandel_q": series.mandel_q,
        "s_x": series.s_x,
        "s_p": series.s_p,
        "sigma_xx": series.sigma_xx,
        "sigma_pp": series.sigma_pp,
        "bound": series.bound,
    }
    columns = _selected_columns(config.observables)
    csv_path = os.path.join(out_dir, "series.csv")
    rows = (
        tuple(_format_cell(float(data[c][i])) for c in columns) for i in range(axis.size)
    )
    _write_csv(csv_path, columns, rows)

    oracle_deviation = None
    if with_oracle:
        traj = trajectory(field, params, times)
        run = oracle_run(field, params, times, n_trunc=config.n_trunc_override)
        oracle_deviation = compare(traj, run).max_deviation

    per_observable = {}
    for column in columns:
        if column == "gt":
            continue
        values = np.asarray(data[column], dtype=float)
        finite = np.isfinite(values)
        if not finite.any():
            per_observable[column] = {"min": None, "max": None, "arg_gt_min": None, "arg_gt_max": None}
            continue
        i_min = int(np.nanargmin(values))
        i_max = int(np.nanargmax(values))
        per_observable[column] = {
            "min": float(values[i_min]),
            "max": float(values[i_max]),
            "arg_gt_min": float(axis[i_min]),
            "arg_gt_max": float(axis[i_max]),
        }
    summary = {
        "norm_defect_max": float(series.norm_defect.max()),
        "norm_defect_final": float(series.norm_defect[-1]),
        "oracle_deviation_max": oracle_deviation,
        "per_observable": per_observable,
    }
    json_path = os.path.join(out_dir, "summary.json")
    _write_json(json_path, summary)
    return csv_path, json_path


def run_validate(config: RunConfig, out_dir: str):
    """Closed form vs oracle; returns (report dict, ok flag), writes JSON."""
    os.makedirs(out_dir, exist_ok=True)
    axis, times = config.time_grid()
    field = config.field_state()
    params = config.model_params()
    n_trunc = config.n_trunc_override
    if n_trunc is None:
        n_trunc = default_n_trunc(field)

    report = {
        "thresholds": {
            "amplitude_deviation": AMPLITUDE_THRESHOLD,
            "spectrum_residual": RESIDUAL_THRESHOLD,
            "norm_defect": NORM_THRESHOLD,
        },
        "n_trunc": n_trunc,
        "n_blocks": field.amplitudes.size,
    }
    failures = []

    required = 2 * field.n_even_max + 1
    if n_trunc < required:
        failures.append("truncation_boundary_leakage")
        report.update(
            {
                "amplitude_deviation_max": None,
                "spectrum_residual_max": None,
                "norm_defect_max": None,
                "leakage_max": None,
                "detail": (
                    f"n_trunc={n_trunc} cuts through the populated blocks "
                    f"(need >= {required}); truncation-boundary leakage would corrupt the run"
                ),
            }
        )
    else:
        traj = trajectory(field, params, times)
        run = oracle_run(field, params, times, n_trunc=n_trunc)
        rep = compare(traj, run)

        residual = 0.0
        for n in range(field.amplitudes.size):
            pair = dressed_pair(n, params)
            block = block_hamiltonian(n, params)
            residual = max(
                residual,
                float(np.linalg.norm(block @ pair.v_plus - pair.e_plus * pair.v_plus)),
                float(np.linalg.norm(block @ pair.v_minus - pair.e_minus * pair.v_minus)),
            )

        closed_norms = (np.abs(traj.c_plus) ** 2 + np.abs(traj.c_minus) ** 2).sum(axis=1)
        norm_defect = max(
            float(np.abs(closed_norms + field.tail_mass - 1.0).max()),
            float(run.norm_defect.max()),
        )
        if rep.max_deviation > AMPLITUDE_THRESHOLD:
            failures.append("amplitude_deviation")
        if residual > RESIDUAL_THRESHOLD:
            failures.append("spectrum_residual")
        if norm_defect > NORM_THRESHOLD:
            failures.append("norm_defect")
        if rep.leakage_max > NORM_THRESHOLD:
            failures.append("truncation_boundary_leakage")
        report.update(
            {
                "amplitude_deviation_max": rep.max_deviation,
                "spectrum_residual_max": residual,
                "norm_defect_max": norm_defect,
                "leakage_max": rep.leakage_max,
                "worst_point": {
                    "gt": rep.time_at_max * (config.g if config.g > 0 else 1.0),
                    "block": rep.block_at_max,
                    "sector": rep.sector_at_max,
                },
            }
        )

    report["failures"] = failures
    report["pass"] = not failures
    _write_json(os.path.join(out_dir, "validation.json"), report)
    return report, not failures


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdjc",
        description="Parity-deformed Jaynes-Cummings model: spectra, dynamics, validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "dressed-energy scan over detuning (CSV)"),
        ("evolve", "observable time series (CSV + JSON summary)"),
        ("validate", "closed form vs brute-force oracle (JSON report)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON run configuration")
        p.add_argument("--out", required=True, help="output directory")
        if name == "evolve":
            p.add_argument(
                "--observables",
                help="comma-separated subset of: " + ", ".join(OBSERVABLE_CHOICES),
            )
            p.add_argument(
                "--with-oracle",
                action="store_true",
                help="also run the brute-force oracle and report the deviation",
            )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = RunConfig.from_file(args.config)
        if args.command == "spectrum":
            run_spectrum(config, args.out)
            return 0
        if args.command == "evolve":
            observables = None
            if args.observables:
                observables = tuple(s.strip() for s in args.observables.split(",") if s.strip())
            run_evolution(config, args.out, with_oracle=args.with_oracle, observables=observables)
            return 0
        report, ok = run_validate(config, args.out)
        if not ok:
            print("validation FAILED: " + ", ".join(report["failures"]), file=sys.stderr)
        return 0 if ok else 1
    except (ConfigError, TruncationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
