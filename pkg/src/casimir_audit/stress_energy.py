"""Single-mode expectation values of the scalar stress tensor on the shell.

Three tensors are handled: the canonical tensor, the improvement term
``(1/6)[g d^2 - d d] phi^2`` and their (traceless) sum. For the static mode
profile the relevant components reduce to

    canonical    T00 = T^rr = (omega^2 phi^2 + phi'^2) / 2
    improvement  T00 = -(1/6) laplacian(phi^2)
                 T^rr = (1/(3 r)) d(phi^2)/dr

Energies and stresses are in "internal" units fixed by the Klein-Gordon
normalization; multiply by ``PAPER_UNITS`` (4 pi) to get the customary
printed normalization of energies per 4 pi, stresses and pressures.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .quadrature import DEFAULT_CONFIG, QuadConfig, derivative, integrate
from .shell_modes import ShellGeometry, dphi_dr, d2phi_dr2, make_mode, phi

PAPER_UNITS = 4 * math.pi


class TensorKind(enum.Enum):
    CANONICAL = "canonical"
    IMPROVEMENT = "improvement"
    IMPROVED = "improved"

    @classmethod
    def parse(cls, text: str) -> "TensorKind":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(
                f"unknown tensor kind {text!r}; expected one of {[k.value for k in cls]}"
            ) from None


@dataclass(frozen=True)
class EnergyResult:
    kind: TensorKind
    numeric: float
    closed_form: float
    quadrature_error: float


def _profile(geom, mode, r):
    return phi(geom, mode, r), dphi_dr(geom, mode, r)


def t00(kind: TensorKind, geom: ShellGeometry, mode, r):
    if kind is TensorKind.IMPROVED:
        return t00(TensorKind.CANONICAL, geom, mode, r) + t00(TensorKind.IMPROVEMENT, geom, mode, r)
    f, df = _profile(geom, mode, r)
    if kind is TensorKind.CANONICAL:
        return 0.5 * (mode.omega**2 * f**2 + df**2)
    d2f = d2phi_dr2(geom, mode, r)
    # laplacian(phi^2) = (phi^2)'' + (2/r)(phi^2)'
    laplacian = 2 * df**2 + 2 * f * d2f + 4 * f * df / r
    return -laplacian / 6.0


def trr(kind: TensorKind, geom: ShellGeometry, mode, r):
    if kind is TensorKind.IMPROVED:
        return trr(TensorKind.CANONICAL, geom, mode, r) + trr(TensorKind.IMPROVEMENT, geom, mode, r)
    f, df = _profile(geom, mode, r)
    if kind is TensorKind.CANONICAL:
        return 0.5 * (mode.omega**2 * f**2 + df**2)
    return 2 * f * df / (3 * r)


def energy_closed(kind: TensorKind, geom: ShellGeometry, n: int) -> float:
    inverse_gap = 1 / geom.a - 1 / geom.R_out
    if kind is TensorKind.CANONICAL:
        return n * math.pi / (2 * geom.width) + inverse_gap / (2 * n * math.pi)
    if kind is TensorKind.IMPROVEMENT:
        return -inverse_gap / (3 * n * math.pi)
    return energy_closed(TensorKind.CANONICAL, geom, n) + energy_closed(
        TensorKind.IMPROVEMENT, geom, n
    )


def energy(
    kind: TensorKind, geom: ShellGeometry, n: int, cfg: QuadConfig = DEFAULT_CONFIG
) -> EnergyResult:
    """Mode energy ``4 pi int T00 r^2 dr`` by quadrature, with its closed form."""
    mode = make_mode(geom, n)
    est = integrate(
        lambda r: 4 * math.pi * r**2 * t00(kind, geom, mode, r), geom.a, geom.R_out, cfg
    )
    return EnergyResult(kind, float(est.value), energy_closed(kind, geom, n), est.error_estimate)


def _denergy_da(kind, geom, n):
    a, width = geom.a, geom.width
    if kind is TensorKind.CANONICAL:
        return n * math.pi / (2 * width**2) - 1 / (2 * n * math.pi * a**2)
    if kind is TensorKind.IMPROVEMENT:
        return 1 / (3 * n * math.pi * a**2)
    return _denergy_da(TensorKind.CANONICAL, geom, n) + _denergy_da(
        TensorKind.IMPROVEMENT, geom, n
    )


def pressure_closed(kind: TensorKind, geom: ShellGeometry, n: int) -> float:
    """``-(1/(4 pi a^2)) dE/da`` at fixed R_out and n, from the closed-form energy."""
    return -_denergy_da(kind, geom, n) / (4 * math.pi * geom.a**2)


def pressure_fd(
    kind: TensorKind,
    geom: ShellGeometry,
    n: int,
    h0: float | None = None,
    levels: int = 4,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> float:
    """Pressure from a Richardson finite difference of the quadrature energy.

    The mode is rebuilt (frequency and amplitude) at every displaced inner
    radius. Default step is ``1e-3 * (R_out - a)``.
    """
    if h0 is None:
        h0 = 1e-3 * geom.width
    if not 0 < h0 < geom.width / 10:
        raise ValueError(f"h0 must lie in (0, (R_out - a)/10), got {h0}")

    def shell_energy(a):
        return energy(kind, ShellGeometry(a, geom.R_out), n, cfg).numeric

    dE = derivative(shell_energy, geom.a, h0, levels)
    return -dE / (4 * math.pi * geom.a**2)
