"""Pressure-stress defect ``p + T^rr(r=a)`` for each tensor kind."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import NumericalError
from .quadrature import DEFAULT_CONFIG, QuadConfig
from .shell_modes import ShellGeometry, make_mode
from .stress_energy import (
    PAPER_UNITS,
    TensorKind,
    energy,
    pressure_closed,
    pressure_fd,
    trr,
)

VERDICT_TOL = 1e-8

DEFAULT_GEOMETRIES = tuple(
    ShellGeometry(a, factor * a) for a in (0.5, 1.0, 2.0) for factor in (2.0, 3.0)
)
DEFAULT_NS = tuple(range(1, 11))


@dataclass(frozen=True)
class PressureAuditRow:
    kind: TensorKind
    n: int
    a: float
    R_out: float
    p_fd: float
    p_closed: float
    trr_a: float
    defect: float
    defect_fd: float
    relation_holds: bool
    status: str  # "holds", "fails", "indeterminate" or "error"
    quadrature_error: float = 0.0
    message: str = ""

    @property
    def scale(self) -> float:
        return max(abs(self.p_closed), abs(self.trr_a))

    @property
    def defect_paper_units(self) -> float:
        return PAPER_UNITS * self.defect


def expected_defect(kind: TensorKind, a: float, n: int) -> float:
    """Closed-form defect in internal units: +-1/(4 n pi^2 a^4), zero for the sum."""
    magnitude = 1.0 / (4 * n * math.pi**2 * a**4)
    return {
        TensorKind.CANONICAL: magnitude,
        TensorKind.IMPROVEMENT: -magnitude,
        TensorKind.IMPROVED: 0.0,
    }[kind]


def audit(
    kind: TensorKind,
    geom: ShellGeometry,
    n: int,
    tol: float = VERDICT_TOL,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> PressureAuditRow:
    mode = make_mode(geom, n)
    p_closed = pressure_closed(kind, geom, n)
    stress = float(trr(kind, geom, mode, geom.a))
    p_fd = pressure_fd(kind, geom, n, cfg=cfg)
    quad_err = energy(kind, geom, n, cfg).quadrature_error

    defect = p_closed + stress
    scale = max(abs(p_closed), abs(stress))
    holds = abs(defect) <= tol * scale
    if holds:
        status = "holds"
    elif quad_err > 0.1 * abs(defect):
        status = "indeterminate"
    else:
        status = "fails"
    return PressureAuditRow(
        kind=kind,
        n=n,
        a=geom.a,
        R_out=geom.R_out,
        p_fd=p_fd,
        p_closed=p_closed,
        trr_a=stress,
        defect=defect,
        defect_fd=p_fd + stress,
        relation_holds=holds,
        status=status,
        quadrature_error=quad_err,
    )


def _error_row(kind, geom, n, exc):
    nan = float("nan")
    return PressureAuditRow(
        kind, n, geom.a, geom.R_out, nan, nan, nan, nan, nan, False, "error", nan, str(exc)
    )


def audit_grid(
    geoms: Sequence[ShellGeometry] = DEFAULT_GEOMETRIES,
    ns: Iterable[int] = DEFAULT_NS,
    tol: float = VERDICT_TOL,
    kinds: Sequence[TensorKind] = tuple(TensorKind),
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> list[PressureAuditRow]:
    """Sweep kinds x geometries x n, in that nesting order.

    A numerical failure in one row is recorded as a row with status "error"
    and the sweep continues.
    """
    ns = list(ns)
    rows = []
    for kind, geom, n in product(kinds, geoms, ns):
        try:
            rows.append(audit(kind, geom, n, tol, cfg))
        except NumericalError as exc:
            rows.append(_error_row(kind, geom, n, exc))
    return rows


def row_matches_expectation(row: PressureAuditRow, rel_tol: float = 1e-8) -> bool:
    """Canonical/improvement rows fail with the closed-form defect; improved rows hold."""
    if row.status == "error":
        return False
    expected = expected_defect(row.kind, row.a, row.n)
    if row.kind is TensorKind.IMPROVED:
        return row.relation_holds and abs(row.defect) <= 1e-10 * row.scale
    return (not row.relation_holds) and abs(row.defect - expected) <= rel_tol * abs(expected)
