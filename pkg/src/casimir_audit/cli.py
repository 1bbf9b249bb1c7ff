"""Command-line front end.

    casimir-audit pressure-audit --n-max 10 --out results/
    casimir-audit fe --delta 0
    casimir-audit contour-audit --N 5 --xi 0.25 --tau 0
    casimir-audit all --format json

List-valued flags take comma-separated values. ``--config FILE`` reads a JSON
object with the same keys (dashes or underscores); flags given on the command
line win. Exit status: 0 all checks passed, 2 invalid parameters, 3 a check
failed or a row failed numerically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .report import Table, write_manifest
from .scenarios import RUNNERS, SCENARIOS, InvalidParameter, resolve
from .stress_energy import TensorKind

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3


@dataclass
class Scenario:
    name: str
    parameters: dict = field(default_factory=dict)
    output_path: str = "results"
    fmt: str = "csv"


def _float_list(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text):
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _kind_list(text):
    try:
        return [TensorKind.parse(v.strip()) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


_CONVERTERS = {
    "a": _float_list, "R_out": _float_list, "n_max": int, "kind": _kind_list,
    "N": _int_list, "xi": _float_list, "tau": _float_list, "delta": _float_list,
    "kappa": _float_list, "tol": float,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-audit",
        description="Scalar Casimir pressure-stress and contour-rotation checks.",
    )
    parser.add_argument("scenario", choices=SCENARIOS + ("all",))
    parser.add_argument("--a", type=_float_list, help="inner shell radii")
    parser.add_argument("--R-out", dest="R_out", type=_float_list,
                        help="outer shell radii (default 2a and 3a)")
    parser.add_argument("--n-max", dest="n_max", type=int, help="highest radial quantum number")
    parser.add_argument("--kind", type=_kind_list,
                        help="tensor kinds: canonical, improvement, improved")
    parser.add_argument("--N", type=_int_list, help="cutoff integers, R_c = (N + xi) pi")
    parser.add_argument("--xi", type=_float_list, help="cutoff offsets in (0, 1)")
    parser.add_argument("--tau", type=_float_list, help="oscillatory cutoff tau/a values")
    parser.add_argument("--delta", type=_float_list, help="Euclidean cutoff values")
    parser.add_argument("--kappa", type=_float_list, help="exponential cutoff values")
    parser.add_argument("--tol", type=float, help="override the scenario's check tolerance")
    parser.add_argument("--out", default=None, help="output directory (default: results)")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
    parser.add_argument("--config", help="JSON file with default values for the flags above")
    return parser


def _load_config(path):
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise InvalidParameter("config file must hold a JSON object")
    config = {}
    for key, value in raw.items():
        key = key.replace("-", "_")
        if key in ("out", "format"):
            config[key] = value
            continue
        if key not in _CONVERTERS:
            raise InvalidParameter(f"unknown config key {key!r}")
        convert = _CONVERTERS[key]
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        try:
            config[key] = convert(value)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise InvalidParameter(f"config key {key!r}: {exc}") from None
    return config


def run(scenario: Scenario, stream=sys.stdout) -> int:
    """Execute one scenario (or ``all``) and write its files; returns the exit status."""
    names = SCENARIOS if scenario.name == "all" else (scenario.name,)
    try:
        resolved = {name: resolve(name, scenario.parameters) for name in names}
    except InvalidParameter as exc:
        print(f"invalid parameter: {exc}", file=sys.stderr)
        return EXIT_INVALID

    os.makedirs(scenario.output_path, exist_ok=True)
    manifest_scenarios = {}
    plot = Table("plot-data")
    summary_lines = []
    status = EXIT_OK
    for name in names:
        outcome = RUNNERS[name](resolved[name])
        files = [t.write(scenario.output_path, scenario.fmt) for t in outcome.tables]
        for row in outcome.plot_rows:
            plot.add(*row)
        if not outcome.passed:
            status = EXIT_FAILED
        manifest_scenarios[name] = {
            "passed": outcome.passed,
            "checks": outcome.checks,
            "numerical_failures": outcome.failures,
            "summary": outcome.summary,
            "parameters": {k: _plain(v) for k, v in resolved[name].items()},
            "files": files,
        }
        verdict = "PASS" if outcome.passed else "FAIL"
        summary_lines.append(f"{name}: {verdict}")
        for check, ok in outcome.checks.items():
            summary_lines.append(f"  {check}: {'pass' if ok else 'FAIL'}")
        for failure in outcome.failures:
            summary_lines.append(f"  numerical failure: {failure}")

    plot_file = plot.write(scenario.output_path, scenario.fmt)
    for entry in manifest_scenarios.values():
        entry["plot_data"] = plot_file
    write_manifest(
        scenario.output_path,
        manifest_scenarios,
        {name: resolved[name]["tol"] for name in names},
        status,
    )
    text = "\n".join(summary_lines) + "\n"
    with open(os.path.join(scenario.output_path, "summary.txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    stream.write(text)
    return status


def _plain(value):
    if isinstance(value, list):
        return [_plain(v) for v in value]
    if isinstance(value, TensorKind):
        return value.value
    return value


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config) if args.config else {}
    except (OSError, json.JSONDecodeError, InvalidParameter) as exc:
        print(f"invalid parameter: {exc}", file=sys.stderr)
        return EXIT_INVALID

    params = {key: config.get(key) for key in _CONVERTERS}
    for key in _CONVERTERS:
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    scenario = Scenario(
        name=args.scenario,
        parameters=params,
        output_path=args.out or config.get("out") or "results",
        fmt=args.fmt or config.get("format") or "csv",
    )
    if scenario.fmt not in ("csv", "json"):
        print(f"invalid parameter: format must be csv or json, got {scenario.fmt!r}", file=sys.stderr)
        return EXIT_INVALID
    return run(scenario)


if __name__ == "__main__":
    sys.exit(main())
