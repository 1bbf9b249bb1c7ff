"""One-dimensional quadrature and numerical differentiation.

Everything here is deterministic and panel-local: a global adaptive
Gauss-Kronrod (10/21 point) scheme with bisection, a principal-value driver
that removes simple poles by analytic subtraction, a truncating wrapper for
exponentially decaying integrands on a half-line, and Richardson-extrapolated
central differences.

Integrands are called with a numpy array of abscissae and should return an
array of the same shape. Scalar-only callables are detected and evaluated
point by point.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NonConvergence, PoleOnBoundary, PolesTooClose, StepUnderflow

__all__ = [
    "QuadConfig",
    "IntegralEstimate",
    "DEFAULT_CONFIG",
    "integrate",
    "integrate_semi_infinite",
    "principal_value",
    "derivative",
    "gk21_rule",
]

# Kronrod abscissae (positive half, descending) and weights for the 21-point
# rule; every other abscissa starting at index 1 is a 10-point Gauss node.
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525452218,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_K_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_G_WEIGHTS = np.zeros(21)
_G_WEIGHTS[1:10:2] = _WG
_G_WEIGHTS[11:20:2] = _WG[::-1]


def gk21_rule():
    """Return (nodes, kronrod_weights, gauss_weights) on [-1, 1]."""
    return _NODES.copy(), _K_WEIGHTS.copy(), _G_WEIGHTS.copy()


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    pv_excision_halfwidth: float = 0.25

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be a positive integer, got {self.max_subdivisions}")
        if not 0 < self.pv_excision_halfwidth < 1:
            raise ValueError(
                f"pv_excision_halfwidth must lie in (0, 1), got {self.pv_excision_halfwidth}"
            )


DEFAULT_CONFIG = QuadConfig()


@dataclass(frozen=True)
class IntegralEstimate:
    value: float | complex
    error_estimate: float
    subdivisions_used: int
    abs_tol: float = DEFAULT_CONFIG.abs_tol
    rel_tol: float = DEFAULT_CONFIG.rel_tol

    @property
    def converged(self) -> bool:
        return self.error_estimate <= max(self.abs_tol, self.rel_tol * abs(self.value))

    def __float__(self):
        return float(self.value)


def _evaluate(f, x):
    try:
        y = np.asarray(f(x))
    except (TypeError, ValueError):
        y = None
    if y is None or y.shape != x.shape:
        y = np.array([f(float(xi)) for xi in x])
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise ValueError(f"integrand is not finite at x={bad!r}")
    return y


def _panel(f, a, b):
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    y = _evaluate(f, centre + half * _NODES)
    kronrod = half * np.dot(_K_WEIGHTS, y)
    gauss = half * np.dot(_G_WEIGHTS, y)
    return kronrod, float(abs(kronrod - gauss))


def _fsum(values):
    values = list(values)
    if any(isinstance(v, complex) or np.iscomplexobj(v) for v in values):
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return math.fsum(float(v) for v in values)


def integrate(
    f: Callable,
    lo: float,
    hi: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
    breakpoints: Sequence[float] = (),
) -> IntegralEstimate:
    """Globally adaptive Gauss-Kronrod integral of ``f`` over ``[lo, hi]``.

    The panel with the largest error estimate is bisected until the summed
    estimate drops below ``max(abs_tol, rel_tol*|value|)``. ``breakpoints``
    seed the initial panel set (use them at kinks).

    Raises NonConvergence when ``cfg.max_subdivisions`` bisections are not
    enough.
    """
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise ValueError(f"need lo < hi, got lo={lo}, hi={hi}")
    edges = [lo] + sorted(float(p) for p in breakpoints if lo < p < hi) + [hi]

    heap = []
    counter = 0
    for a, b in zip(edges[:-1], edges[1:]):
        val, err = _panel(f, a, b)
        heap.append((-err, counter, a, b, val))
        counter += 1
    heapq.heapify(heap)

    subdivisions = 0
    while True:
        value = _fsum(item[4] for item in heap)
        error = math.fsum(-item[0] for item in heap)
        if error <= max(cfg.abs_tol, cfg.rel_tol * abs(value)):
            break
        if subdivisions >= cfg.max_subdivisions:
            raise NonConvergence(
                f"no convergence on [{lo}, {hi}] after {subdivisions} subdivisions "
                f"(value={value!r}, error estimate={error:.3e})"
            )
        neg_err, _, a, b, _ = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            raise NonConvergence(
                f"panel [{a}, {b}] cannot be bisected further; error estimate {-neg_err:.3e} "
                "is limited by round-off"
            )
        for left, right in ((a, mid), (mid, b)):
            val, err = _panel(f, left, right)
            heapq.heappush(heap, (-err, counter, left, right, val))
            counter += 1
        subdivisions += 1

    return IntegralEstimate(value, error, subdivisions, cfg.abs_tol, cfg.rel_tol)


def integrate_semi_infinite(
    f: Callable,
    lo: float,
    decay_scale: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> IntegralEstimate:
    """Integral of ``f`` over ``[lo, inf)`` for ``|f(x)| <= C exp(-(x-lo)/decay_scale)``.

    C is estimated as the largest value of ``|f(x)| exp((x-lo)/decay_scale)``
    sampled on ``[lo, lo + 40*decay_scale]``. The integral is truncated where
    the tail bound ``C*decay_scale*exp(-(x-lo)/decay_scale)`` falls to
    ``1e-3*abs_tol``, and that bound is added to the error estimate.
    """
    if not decay_scale > 0:
        raise ValueError(f"decay_scale must be positive, got {decay_scale}")
    lo = float(lo)
    samples = lo + decay_scale * np.linspace(0.0, 40.0, 81)
    growth = np.exp((samples - lo) / decay_scale)
    envelope = float(np.max(np.abs(_evaluate(f, samples)) * growth))

    tail_target = 1e-3 * cfg.abs_tol
    if envelope * decay_scale > tail_target:
        x_trunc = lo + decay_scale * math.log(envelope * decay_scale / tail_target)
        tail = tail_target
    else:
        x_trunc = lo + decay_scale
        tail = envelope * decay_scale * math.exp(-1.0)

    est = integrate(f, lo, x_trunc, cfg)
    return IntegralEstimate(
        est.value, est.error_estimate + tail, est.subdivisions_used, cfg.abs_tol, cfg.rel_tol
    )


def principal_value(
    f: Callable,
    lo: float,
    hi: float,
    poles: Sequence[tuple[float, float]],
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> IntegralEstimate:
    """Cauchy principal value of ``f`` over ``[lo, hi]`` across simple poles.

    ``poles`` is a list of ``(location, residue)``. Inside the window
    ``|x - x0| < w`` (``w = cfg.pv_excision_halfwidth``) the term
    ``residue/(x - x0)`` is subtracted; its principal value over a symmetric
    window is zero, so the regular remainder is integrated directly. Poles
    with zero residue are treated as removable points.
    """
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise ValueError(f"need lo < hi, got lo={lo}, hi={hi}")
    w = cfg.pv_excision_halfwidth
    poles = sorted((float(x0), float(res)) for x0, res in poles)
    for x0, _ in poles:
        if not (lo + w < x0 < hi - w):
            raise PoleOnBoundary(
                f"pole at {x0} lies within {w} of the integration limits [{lo}, {hi}]"
            )
    for (x_left, _), (x_right, _) in zip(poles[:-1], poles[1:]):
        if x_right - x_left <= 2 * w:
            raise PolesTooClose(
                f"poles at {x_left} and {x_right} are closer than 2*{w}"
            )

    pieces = []
    cursor = lo
    for x0, res in poles:
        if res == 0.0:
            continue
        pieces.append((f, cursor, x0 - w))

        def regular(x, x0=x0, res=res):
            return f(x) - res / (x - x0)

        pieces.append((regular, x0 - w, x0))
        pieces.append((regular, x0, x0 + w))
        cursor = x0 + w
    pieces.append((f, cursor, hi))

    estimates = [integrate(g, a, b, cfg) for g, a, b in pieces if a < b]
    return IntegralEstimate(
        _fsum(e.value for e in estimates),
        math.fsum(e.error_estimate for e in estimates),
        sum(e.subdivisions_used for e in estimates),
        cfg.abs_tol,
        cfg.rel_tol,
    )


def derivative(g: Callable[[float], float], x0: float, h0: float, levels: int = 4) -> float:
    """Richardson-extrapolated central difference of ``g`` at ``x0``.

    Central differences with steps ``h0 / 2**j`` for ``j = 0..levels`` are
    combined in a Richardson tableau (even powers of h); the diagonal entry
    of highest order is returned.
    """
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    h0 = abs(float(h0))
    h_min = h0 / 2**levels
    if h_min <= np.finfo(float).eps * max(1.0, abs(x0)):
        raise StepUnderflow(
            f"smallest step {h_min:.3e} is below the resolution of x0={x0}"
        )
    table = []
    for j in range(levels + 1):
        h = h0 / 2**j
        row = [(g(x0 + h) - g(x0 - h)) / (2.0 * h)]
        for k in range(1, j + 1):
            factor = 4.0**k
            row.append(row[k - 1] + (row[k - 1] - table[j - 1][k - 1]) / (factor - 1.0))
        table.append(row)
    return float(table[levels][levels])
