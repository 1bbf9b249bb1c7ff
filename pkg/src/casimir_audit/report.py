"""Result tables, file writers and the run manifest."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .contour_audit import ARC_NOTE
from .shell_modes import NORMALIZATION_NOTE
from .stress_energy import PAPER_UNITS

SCHEMAS = {
    "pressure-audit": (
        "kind", "n", "a", "R_out", "p_fd", "p_closed", "trr_a",
        "defect", "defect_paper_units", "relation_holds",
    ),
    "contour-audit": (
        "N", "xi", "tau_over_a", "pv_re", "pole_sum", "total_re",
        "closed_form", "abs_err", "pass",
    ),
    "divergence": ("N", "xi", "tau_over_a", "total_re", "gap"),
    "fe": ("delta", "value", "target", "abs_err", "pass"),
    "arc-sweep": ("N", "xi", "tau_over_a", "arc_re", "arc_im", "arc_abs"),
    "exp-cutoff": ("kappa", "total", "target", "abs_err"),
    "plot-data": ("scenario", "series", "x", "y"),
}

CONVENTIONS = {
    "normalization": NORMALIZATION_NOTE,
    "paper_units_multiplier": PAPER_UNITS,
    "paper_units_note": "stresses, pressures and energies x 4 pi give the printed normalization",
    "arc_continuation": ARC_NOTE,
    "cutoff_radius": "R_c = (N + xi) pi, distinct from the shell outer radius R_out",
}


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def _json_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        return format(value, ".17g")
    if isinstance(value, int):
        return str(value)
    return json.dumps(str(value))


@dataclass
class Table:
    name: str
    rows: list = field(default_factory=list)

    @property
    def columns(self):
        return SCHEMAS[self.name]

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name} row needs {len(self.columns)} values, got {len(values)}")
        self.rows.append(tuple(values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    def to_json(self, manifest_name: str) -> str:
        lines = ["{", f'  "table": {json.dumps(self.name)},', f'  "manifest": {json.dumps(manifest_name)},']
        lines.append('  "columns": [' + ", ".join(json.dumps(c) for c in self.columns) + "],")
        body = ",\n".join(
            "    [" + ", ".join(_json_value(v) for v in row) + "]" for row in self.rows
        )
        lines.append('  "rows": [' + ("\n" + body + "\n  " if body else "") + "]")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def write(self, directory: str, fmt: str = "csv", manifest_name: str = "manifest.json") -> str:
        filename = self.name.replace("-", "_") + "." + fmt
        path = os.path.join(directory, filename)
        text = self.to_csv() if fmt == "csv" else self.to_json(manifest_name)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return filename


def write_manifest(directory: str, scenarios: dict, tolerances: dict, exit_status: int,
                   name: str = "manifest.json") -> str:
    manifest = {
        "tool": "casimir-audit",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "conventions": CONVENTIONS,
        "tolerances": tolerances,
        "scenarios": scenarios,
        "exit_status": exit_status,
    }
    with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
        json.dump(_clean(manifest), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")
    return name


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return str(obj)
