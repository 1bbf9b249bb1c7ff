"""l = 0 contour integral f versus its rotated (Euclidean) counterpart.

With the order-1/2 reductions,

    f   = (i/2) int_C dx exp(i|x| - i x tau/a) x / sin x
    f_E = int_0^inf dy [-cos(delta y) 2y / (exp(2y) - 1)]   (= -pi^2/12 at delta = 0)

C runs just above the real axis for x > 0 and just below it for x < 0. Cut
off at R_c = (N + xi) pi, Re f splits into a principal value over the real
axis plus the half-residue contributions of the poles at +-m pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .bessel_reduction import fE_integrand
from .errors import ArcThroughPole
from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    integrate,
    integrate_semi_infinite,
    principal_value,
)

F_EUCLIDEAN = -math.pi**2 / 12

ARC_NOTE = (
    "first-quadrant arc continues (i/2) e^{iz(1-tau/a)} z/sin z over theta 0 -> pi/2; "
    "third-quadrant arc continues the x<0 branch (i/2) e^{-iz(1+tau/a)} z/sin z over "
    "theta 3pi/2 -> pi, the orientation that closes the contour with the real axis"
)


@dataclass(frozen=True)
class ContourParams:
    N: int
    xi: float
    tau_over_a: float = 0.0
    cfg: QuadConfig = field(default=DEFAULT_CONFIG)

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if not 0 < self.xi < 1:
            raise ValueError(f"xi must lie in (0, 1), got {self.xi}")
        if self.tau_over_a < 0:
            raise ValueError(f"tau_over_a must be >= 0, got {self.tau_over_a}")
        gap = math.pi * min(self.xi, 1 - self.xi)
        if gap <= self.cfg.pv_excision_halfwidth:
            raise ValueError(
                f"cutoff radius ({self.N}+{self.xi})pi lies within "
                f"{self.cfg.pv_excision_halfwidth} of a pole"
            )

    @property
    def R_c(self) -> float:
        return (self.N + self.xi) * math.pi


@dataclass(frozen=True)
class ContourResult:
    N: int
    xi: float
    tau_over_a: float
    pv_re: float
    pole_sum: float
    total_re: float
    closed_form: float
    abs_err: float


# -- Euclidean side ----------------------------------------------------------

def evaluate_fE(delta: float = 0.0, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    est = integrate_semi_infinite(lambda y: fE_integrand(y, delta), 0.0, 0.5, cfg)
    return float(est.value)


def fE_series(delta: float, terms: int = 200_000) -> float:
    """Term-by-term value of f_E: ``-sum_k 2((2k)^2 - delta^2) / ((2k)^2 + delta^2)^2``.

    Each term is ``int_0^inf 2y cos(delta y) exp(-2ky) dy``; the tail beyond
    ``terms`` is added from its exact antiderivative at the half-integer point.
    """
    k = np.arange(1, terms + 1, dtype=float)
    four_k2 = 4 * k * k
    d2 = delta * delta
    head = math.fsum(2 * (four_k2 - d2) / (four_k2 + d2) ** 2)
    edge = terms + 0.5
    tail = 2 * edge / (4 * edge * edge + d2)
    return -(head + tail)


# -- Minkowski side, real-axis decomposition ---------------------------------

def pole_contributions(N: int, tau_over_a: float) -> float:
    """``pi^2 sum_{m=1}^{N} m cos(m pi tau/a)``.

    Passing above the pole at +m pi picks up -i pi Res and passing below -m pi
    picks up +i pi Res; each pair contributes ``pi^2 m cos(m pi tau/a)`` to the
    real part and cancels in the imaginary part.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    m = np.arange(1, N + 1, dtype=float)
    return math.pi**2 * math.fsum(m * np.cos(m * math.pi * tau_over_a))


def pole_registry(
    N: int, tau_over_a: float, part: str = "re", unit: float = math.pi
) -> list[tuple[float, float]]:
    """Poles of the real (or imaginary) integrand at ``+-m*unit`` with their residues.

    Residues are those of the integrand in x; they are unchanged under the
    rescaling x = pi u, so ``unit=1`` gives the registry in u.
    """
    if part not in ("re", "im"):
        raise ValueError(f"part must be 're' or 'im', got {part!r}")
    poles = []
    for m in range(1, N + 1):
        x0 = m * math.pi
        if part == "re":
            res = 0.5 * x0 * math.sin(x0 * tau_over_a)
            poles += [(-m * unit, res), (m * unit, res)]
        else:
            res = 0.5 * x0 * math.cos(x0 * tau_over_a)
            poles += [(-m * unit, -res), (m * unit, res)]
    return poles


def _sincospi(u):
    # sin(pi u), cos(pi u) with exact zeros at integers / half-integers
    k = np.round(u)
    r = u - k
    sign = np.where(np.mod(k, 2) == 0, 1.0, -1.0)
    return sign * np.sin(np.pi * r), sign * np.cos(np.pi * r)


def _pv_integrand_u(u, tau, part):
    """The real or imaginary f integrand as a function of u = x/pi, times dx/du.

    Uses ``sin(x(1 -+ tau)) = sin x cos(tau x) -+ cos x sin(tau x)`` so that the
    only singular factor is ``cot x``, evaluated with exact integer poles in u.
    """
    u = np.asarray(u, dtype=float)
    x = np.pi * u
    s, c = _sincospi(u)
    with np.errstate(divide="ignore", invalid="ignore"):
        xcot = np.where(u == 0, 1.0, x * c / np.where(u == 0, 1.0, s))
    if part == "re":
        value = -0.5 * np.abs(x) * np.cos(tau * x) + 0.5 * xcot * np.sin(tau * x)
    else:
        value = 0.5 * xcot * np.cos(tau * x) + 0.5 * np.abs(x) * np.sin(tau * x)
    return np.pi * value


def _pv(params: ContourParams, part: str) -> float:
    tau = params.tau_over_a
    cfg_u = replace(params.cfg, pv_excision_halfwidth=params.cfg.pv_excision_halfwidth / math.pi)
    edge = params.R_c / math.pi
    poles = pole_registry(params.N, tau, part, unit=1.0)
    pieces = []
    for lo, hi, side in ((-edge, 0.0, -1), (0.0, edge, 1)):
        est = principal_value(
            lambda u: _pv_integrand_u(u, tau, part),
            lo,
            hi,
            [p for p in poles if p[0] * side > 0],
            cfg_u,
        )
        pieces.append(est.value)
    return math.fsum(pieces)


def pv_part(params: ContourParams) -> float:
    """Re PV int_{-R_c}^{R_c} of the f integrand."""
    return _pv(params, "re")


def pv_part_im(params: ContourParams) -> float:
    """Im PV int_{-R_c}^{R_c}; reported only, there is no closed form to test it against."""
    return _pv(params, "im")


def closed_form_re_f(N: int, xi: float, tau_over_a: float) -> float:
    """Small-tau closed form for Re f at cutoff (N + xi) pi."""
    bracket = N * (1 - 2 * xi) - xi**2 + 1 / 6
    return F_EUCLIDEAN + 0.5 * math.pi**2 * math.cos(N * math.pi * tau_over_a) * bracket


def re_f(params: ContourParams) -> ContourResult:
    pv = pv_part(params)
    poles = pole_contributions(params.N, params.tau_over_a)
    total = pv + poles
    closed = closed_form_re_f(params.N, params.xi, params.tau_over_a)
    return ContourResult(
        N=params.N,
        xi=params.xi,
        tau_over_a=params.tau_over_a,
        pv_re=pv,
        pole_sum=poles,
        total_re=total,
        closed_form=closed,
        abs_err=abs(total - closed),
    )


def divergence_sweep(
    xi: float, tau_over_a: float, Ns: Iterable[int], cfg: QuadConfig = DEFAULT_CONFIG
) -> list[tuple[int, float, float]]:
    """Rows ``(N, total_re, |total_re - f_E|)`` in increasing N."""
    rows = []
    for N in sorted(Ns):
        result = re_f(ContourParams(N, xi, tau_over_a, cfg))
        rows.append((N, result.total_re, abs(result.total_re - F_EUCLIDEAN)))
    return rows


# -- closing the contour -----------------------------------------------------

def _upper_branch(z, tau):
    # (i/2) e^{iz(1-tau)} z / sin z, written to stay finite for Im z >= 0
    e2 = np.exp(2j * z)
    return -z * np.exp(1j * z * (2 - tau)) / (e2 - 1)


def _lower_branch(z, tau):
    # (i/2) e^{-iz(1+tau)} z / sin z, written to stay finite for Im z <= 0
    em2 = np.exp(-2j * z)
    return -z * np.exp(-1j * z * (2 + tau)) / (1 - em2)


def _check_arc(z):
    with np.errstate(over="ignore", invalid="ignore"):
        s = np.abs(np.sin(z))
    if np.any(s < 1e-10):
        raise ArcThroughPole(f"|sin z| < 1e-10 on the arc near z={z[np.argmin(s)]!r}")


def arc_integrand(theta, R_arc: float, tau_over_a: float, quadrant: int = 1):
    """Integrand in theta for ``z = R_arc e^{i theta}``, including ``dz/dtheta``."""
    z = R_arc * np.exp(1j * np.asarray(theta, dtype=float))
    _check_arc(np.atleast_1d(z))
    branch = _upper_branch if quadrant == 1 else _lower_branch
    return branch(z, tau_over_a) * 1j * z


def arc_integral(R_arc: float, tau_over_a: float, cfg: QuadConfig = DEFAULT_CONFIG) -> complex:
    """Sum of the first- and third-quadrant quarter-circle integrals at radius R_arc.

    The first arc runs from the positive real axis to the positive imaginary
    axis; the third runs from the negative imaginary axis to the negative real
    axis. With these orientations ``f(R) + arcs = f_rotated`` up to the
    exponentially small imaginary-axis tail beyond R.
    """
    if not R_arc > 0:
        raise ValueError(f"R_arc must be positive, got {R_arc}")
    _check_arc(np.array([R_arc + 0j, -R_arc + 0j]))
    first = integrate(
        lambda t: arc_integrand(t, R_arc, tau_over_a, 1), 0.0, math.pi / 2, cfg
    )
    third = integrate(
        lambda t: arc_integrand(t, R_arc, tau_over_a, 3), math.pi, 1.5 * math.pi, cfg
    )
    return complex(first.value) - complex(third.value)


def rotated_f(tau_over_a: float, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """f evaluated along the imaginary axis, where both branches decay.

    ``-int_0^inf y e^{-y} cosh(tau y) / sinh y dy``; equals f_E at tau = 0.
    Requires ``tau/a < 1``.
    """
    if not 0 <= tau_over_a < 1:
        raise ValueError(f"need 0 <= tau_over_a < 1, got {tau_over_a}")
    tau = tau_over_a

    def integrand(y):
        y = np.asarray(y, dtype=float)
        safe = np.where(y == 0, 1.0, y)
        bose = np.where(y == 0, 0.5, safe / -np.expm1(-2 * safe))
        return -bose * (np.exp(-y * (2 - tau)) + np.exp(-y * (2 + tau)))

    return float(integrate_semi_infinite(integrand, 0.0, 1 / (2 - tau), cfg).value)


def damped_f(tau_over_a: float) -> float:
    """Abel-damped real-axis value, ``lim_{eps->0}`` of Re f with ``e^{-eps|x|}``.

    Closed form ``a^2/tau^2 - pi^2 / (4 sin^2(pi tau / 2a))``.
    """
    t = tau_over_a
    if t == 0:
        return F_EUCLIDEAN
    if abs(t) < 1e-2:
        # series avoids cancelling 1/t^2 terms
        t2 = t * t
        return F_EUCLIDEAN - t2 * (math.pi**4 / 240 + t2 * (math.pi**6 / 6048 + t2 * math.pi**8 / 172800))
    return 1 / t**2 - math.pi**2 / (4 * math.sin(math.pi * t / 2) ** 2)


# -- exponential cutoff ------------------------------------------------------

def exp_cutoff_pv(kappa: float, cfg: QuadConfig | None = None) -> float:
    """Real principal-value part ``-int_0^inf x e^{-kappa x} dx``.

    Closed form ``-1/kappa^2``; with ``cfg`` it is integrated numerically instead.
    """
    if cfg is None:
        return -1.0 / kappa**2
    return -float(integrate_semi_infinite(lambda x: x * np.exp(-kappa * x), 0.0, 1 / kappa, cfg).value)


def exp_cutoff_pole_sum(kappa: float, method: str = "series") -> float:
    """``pi^2 sum_m m e^{-kappa m pi}``, by direct summation or geometric closed form."""
    q = math.exp(-kappa * math.pi)
    if method == "closed":
        return math.pi**2 * q / (1 - q) ** 2
    if method != "series":
        raise ValueError(f"method must be 'series' or 'closed', got {method!r}")
    terms = []
    m = 1
    while True:
        term = m * q**m
        terms.append(term)
        if term < 1e-16 * terms[0] and m > 1:
            break
        m += 1
    return math.pi**2 * math.fsum(terms)


def exp_cutoff_f(kappa: float, cfg: QuadConfig | None = None) -> float:
    """Re f with ``e^{-kappa|x|}`` damping in place of the oscillatory cutoff."""
    if kappa < 1e-4:
        raise ValueError(f"kappa must be >= 1e-4, got {kappa}")
    return exp_cutoff_pv(kappa, cfg) + exp_cutoff_pole_sum(kappa, "series")


def extrapolate_to_zero(hs: Sequence[float], values: Sequence[float], power: int = 2) -> float:
    """Neville extrapolation to h = 0 of a series in ``h**power``."""
    if len(hs) != len(values) or not hs:
        raise ValueError("need equally many, and at least one, step sizes and values")
    xs = [h**power for h in hs]
    table = list(map(float, values))
    for k in range(1, len(xs)):
        for i in range(len(xs) - k):
            table[i] = (xs[i + k] * table[i] - xs[i] * table[i + 1]) / (xs[i + k] - xs[i])
    return table[0]
