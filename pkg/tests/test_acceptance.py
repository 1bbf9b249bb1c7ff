"""The nine acceptance criteria, each at its stated tolerance and time budget.

Every test records one PASS/FAIL line; the lines are printed together at the
end of the run by the hook in conftest.py.
"""

import math
import time

import numpy as np
import pytest

from casimir_audit.bessel_reduction import BesselKind, series_logderiv, z_logderiv
from casimir_audit.cli import main
from casimir_audit.contour_audit import (
    ContourParams,
    arc_integral,
    damped_f,
    divergence_sweep,
    evaluate_fE,
    exp_cutoff_f,
    extrapolate_to_zero,
    re_f,
)
from casimir_audit.pressure_audit import DEFAULT_GEOMETRIES, DEFAULT_NS, audit_grid
from casimir_audit.stress_energy import TensorKind, energy, pressure_fd

from .oracles import PRINTED_ENERGY, a_sym, n_sym, R_sym, symbolic_pressure

F_E = -math.pi**2 / 12
RESULTS = []


def record(number, ok, detail):
    RESULTS.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_fE(tmp_path):
    start = time.perf_counter()
    code = main(["fe", "--delta", "0", "--out", str(tmp_path)])
    cli_time = time.perf_counter() - start
    t0 = time.perf_counter()
    value = evaluate_fE(0.0)
    elapsed = time.perf_counter() - t0
    err = abs(value - F_E)
    ok = code == 0 and err <= 1e-10 and elapsed < 0.1
    record(1, ok, f"|f_E + pi^2/12| = {err:.2e}, evaluation {elapsed:.4f} s, "
                  f"cli run {cli_time:.2f} s, exit {code}")


def test_criterion_2_tau_zero_identity():
    start = time.perf_counter()
    worst = 0.0
    for xi in (0.1, 0.25, 0.5, 0.75, 0.9):
        for N in range(1, 51):
            r = re_f(ContourParams(N, xi))
            exact = 0.5 * math.pi**2 * (N * (1 - 2 * xi) - xi**2)
            worst = max(worst, abs(r.total_re - exact) / abs(exact))
            worst = max(worst, abs(r.closed_form - exact) / abs(exact))
    elapsed = time.perf_counter() - start
    record(2, worst <= 1e-8 and elapsed < 10, f"worst relative error {worst:.2e}, {elapsed:.2f} s")


def test_criterion_3_small_tau():
    taus = (1e-2, 1e-3, 1e-4)
    worst_ratio = 0.0
    for N in (5, 10, 20):
        gaps = [re_f(ContourParams(N, 0.25, t)).abs_err for t in taus]
        for (t0, g0), (t1, g1) in zip(zip(taus, gaps), zip(taus[1:], gaps[1:])):
            # shrink at least proportionally: g1/g0 <= t1/t0
            worst_ratio = max(worst_ratio, (g1 / g0) / (t1 / t0))
    record(3, worst_ratio <= 1.0, f"max (gap ratio)/(tau ratio) = {worst_ratio:.3e}")


def test_criterion_4_non_convergence():
    rows = divergence_sweep(0.25, 0.0, [5, 10, 20, 40])
    Ns = np.array([r[0] for r in rows], dtype=float)
    gaps = np.array([r[2] for r in rows])
    increasing = bool(np.all(np.diff(gaps) > 0))
    slope = np.polyfit(Ns, gaps, 1)[0]
    target = 0.5 * math.pi**2 * 0.5
    rel = abs(slope - target) / target
    record(4, increasing and rel <= 0.02, f"strictly increasing={increasing}, slope {slope:.6f} vs {target:.6f} ({rel:.1e})")


def test_criterion_5_arcs():
    smallest = math.inf
    worst_closure = 0.0
    for N in (5, 10, 20):
        R_c = (N + 0.25) * math.pi
        for tau in (0.0, 1e-2):
            smallest = min(smallest, abs(arc_integral(R_c, tau)))
        tau = 1e-2
        arcs = arc_integral(R_c, tau)
        total = re_f(ContourParams(N, 0.25, tau)).total_re
        worst_closure = max(worst_closure, abs(total + arcs.real - damped_f(tau)))
    ok = smallest > 1 and worst_closure <= 1e-6
    record(5, ok, f"min |arc sum| = {smallest:.3f}, worst closure residual {worst_closure:.2e}")


def test_criterion_6_exp_cutoff():
    kappas = [0.2, 0.1, 0.05, 0.025]
    value = extrapolate_to_zero(kappas, [exp_cutoff_f(k) for k in kappas], power=2)
    err = abs(value - F_E)
    record(6, err <= 1e-6, f"extrapolated {value:.12f}, error {err:.2e}")


@pytest.fixture(scope="module")
def grid_rows():
    start = time.perf_counter()
    rows = audit_grid()
    return rows, time.perf_counter() - start


def test_criterion_7_pressure_verdicts(grid_rows):
    rows, elapsed = grid_rows
    by_key = {(r.kind, r.a, r.R_out, r.n): r for r in rows}
    worst_defect = worst_improved = worst_cancel = 0.0
    for (kind, a, R, n), row in by_key.items():
        if kind is TensorKind.IMPROVED:
            worst_improved = max(worst_improved, abs(row.defect) / row.scale)
            continue
        expected = 1 / (4 * n * math.pi**2 * a**4)
        worst_defect = max(worst_defect, abs(abs(row.defect) - expected) / expected)
        if kind is TensorKind.CANONICAL:
            other = by_key[(TensorKind.IMPROVEMENT, a, R, n)]
            scale = max(row.scale, other.scale)
            worst_cancel = max(worst_cancel, abs(row.defect + other.defect) / scale)
    ok = (
        len(rows) == 180
        and worst_defect <= 1e-8
        and worst_improved <= 1e-10
        and worst_cancel <= 1e-10
        and elapsed < 20
    )
    record(7, ok, f"defect rel {worst_defect:.1e}, improved {worst_improved:.1e}, "
                  f"cancellation {worst_cancel:.1e}, {elapsed:.2f} s")


def test_criterion_8_closed_forms():
    worst_energy = worst_pressure = 0.0
    for g in DEFAULT_GEOMETRIES:
        for n in DEFAULT_NS:
            subs = {a_sym: g.a, R_sym: g.R_out, n_sym: n}
            for kind in TensorKind:
                printed = float(PRINTED_ENERGY[kind.value].subs(subs))
                worst_energy = max(worst_energy, abs(energy(kind, g, n).numeric - printed))
                analytic = symbolic_pressure(kind.value, g.a, g.R_out, n)
                fd = pressure_fd(kind, g, n)
                worst_pressure = max(worst_pressure, abs(fd - analytic) / abs(analytic))
    ok = worst_energy <= 1e-9 and worst_pressure <= 1e-7
    record(8, ok, f"energy abs {worst_energy:.1e}, FD pressure rel {worst_pressure:.1e}")


def test_criterion_9_bessel():
    real = np.linspace(0.1, 20.0, 200)
    grids = {
        BesselKind.J_HALF: [z for z in real if abs(math.sin(z)) > 1e-3],
        BesselKind.I_HALF: list(real),
        BesselKind.K_HALF: list(real),
        BesselKind.H1_HALF: list(real) + [t * np.exp(0.25j * math.pi) for t in real[::4]],
    }
    worst = 0.0
    for kind, grid in grids.items():
        for z in grid:
            ref = series_logderiv(kind, z)
            worst = max(worst, abs(z_logderiv(kind, z) - ref) / max(1.0, abs(ref)))
    record(9, worst <= 1e-10, f"worst closed-form vs series error {worst:.1e}")
