import math

import pytest

from casimir_audit import pressure_audit as pa
from casimir_audit.errors import NonConvergence
from casimir_audit.shell_modes import ShellGeometry
from casimir_audit.stress_energy import PAPER_UNITS, TensorKind

C, IMP, SUM = TensorKind.CANONICAL, TensorKind.IMPROVEMENT, TensorKind.IMPROVED


@pytest.fixture(scope="module")
def grid():
    return pa.audit_grid()


def test_unit_shell_rows():
    g = ShellGeometry(1.0, 2.0)
    canon = pa.audit(C, g, 1)
    assert canon.defect == pytest.approx(1 / (4 * math.pi**2), rel=1e-10)
    assert canon.defect_paper_units == pytest.approx(1 / math.pi, rel=1e-10)
    assert canon.status == "fails"
    impr = pa.audit(IMP, g, 1)
    assert impr.defect == pytest.approx(-1 / (4 * math.pi**2), rel=1e-10)
    assert impr.status == "fails"
    total = pa.audit(SUM, g, 1)
    assert total.relation_holds and total.status == "holds"


def test_grid_shape_and_order(grid):
    assert len(grid) == 3 * 6 * 10
    keys = [(r.kind, r.a, r.R_out, r.n) for r in grid]
    expected = [(k, g.a, g.R_out, n) for k in TensorKind for g in pa.DEFAULT_GEOMETRIES for n in pa.DEFAULT_NS]
    assert keys == expected


def test_grid_verdicts(grid):
    for row in grid:
        assert pa.row_matches_expectation(row), row
        if row.kind is SUM:
            assert abs(row.defect) <= 1e-10 * row.scale
        else:
            assert abs(abs(row.defect) - 1 / (4 * row.n * math.pi**2 * row.a**4)) <= 1e-8 * abs(row.defect)


def test_defects_cancel(grid):
    by_key = {(r.kind, r.a, r.R_out, r.n): r for r in grid}
    for (kind, a, R, n), row in by_key.items():
        if kind is C:
            other = by_key[(IMP, a, R, n)]
            assert abs(row.defect + other.defect) <= 1e-10 * max(row.scale, other.scale)


def test_defect_independent_of_outer_radius(grid):
    by_key = {(r.kind, r.a, r.R_out, r.n): r for r in grid}
    for a in (0.5, 1.0, 2.0):
        for n in pa.DEFAULT_NS:
            for kind in (C, IMP):
                d2 = by_key[(kind, a, 2 * a, n)].defect
                d3 = by_key[(kind, a, 3 * a, n)].defect
                assert d2 == pytest.approx(d3, rel=1e-10)


def test_fd_defect_tracks_closed(grid):
    for row in grid:
        assert abs(row.p_fd - row.p_closed) <= 1e-7 * abs(row.p_closed)


def test_expected_defect_paper_units():
    assert PAPER_UNITS * pa.expected_defect(C, 1.0, 1) == pytest.approx(1 / math.pi)


def test_empty_ns():
    assert pa.audit_grid(ns=[]) == []


def test_filtered_sweep():
    rows = pa.audit_grid(geoms=[ShellGeometry(1.0, 3.0)], ns=[2], kinds=[IMP])
    assert len(rows) == 1 and rows[0].kind is IMP and rows[0].n == 2


def test_error_row_recorded(monkeypatch):
    real = pa.pressure_fd

    def flaky(kind, geom, n, **kw):
        if n == 2:
            raise NonConvergence("forced")
        return real(kind, geom, n, **kw)

    monkeypatch.setattr(pa, "pressure_fd", flaky)
    rows = pa.audit_grid(geoms=[ShellGeometry(1.0, 2.0)], ns=[1, 2, 3], kinds=[C])
    assert [r.status for r in rows] == ["fails", "error", "fails"]
    assert "forced" in rows[1].message
    assert not pa.row_matches_expectation(rows[1])


def test_indeterminate_when_quadrature_error_large(monkeypatch):
    real = pa.energy

    def noisy(kind, geom, n, cfg):
        res = real(kind, geom, n, cfg)
        return type(res)(res.kind, res.numeric, res.closed_form, 1.0)

    monkeypatch.setattr(pa, "energy", noisy)
    row = pa.audit(C, ShellGeometry(1.0, 2.0), 1)
    assert row.status == "indeterminate"


def test_strict_tolerance_still_holds_for_improved():
    row = pa.audit(SUM, ShellGeometry(2.0, 6.0), 7, tol=1e-12)
    assert row.relation_holds
