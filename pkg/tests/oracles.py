"""Independent reference computations used only by the tests.

None of these share code paths with the package: integrals go through
scipy.integrate.quad, derivatives through sympy.
"""

import math
import warnings

import numpy as np
import sympy as sp
from scipy import integrate as sci


def quad(f, lo, hi, **kw):
    kw.setdefault("epsabs", 1e-14)
    kw.setdefault("epsrel", 1e-13)
    kw.setdefault("limit", 500)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sci.IntegrationWarning)
        value, _ = sci.quad(f, lo, hi, **kw)
    return value


def excised_integral(f, lo, hi, poles, eps):
    """Integral of f over [lo, hi] with (x0 - eps, x0 + eps) removed around each pole."""
    edges = [lo]
    for x0 in sorted(poles):
        edges += [x0 - eps, x0 + eps]
    edges.append(hi)
    return math.fsum(quad(f, a, b) for a, b in zip(edges[::2], edges[1::2]))


def excision_limit(f, lo, hi, poles, eps0=0.05, levels=5):
    """Principal value as the eps -> 0 limit of symmetric excision.

    The excision error is odd in eps, so the Richardson table removes
    eps, eps^3, eps^5, ... in turn.
    """
    table = []
    for j in range(levels):
        eps = eps0 / 2**j
        row = [excised_integral(f, lo, hi, poles, eps)]
        for k in range(1, j + 1):
            factor = 2.0 ** (2 * k - 1)
            row.append((factor * row[k - 1] - table[j - 1][k - 1]) / (factor - 1))
        table.append(row)
    return table[-1][-1]


def zeta2_half():
    """sum 1/(2k^2) = pi^2/12 by direct summation with an integral tail."""
    k = np.arange(1, 2_000_001, dtype=float)
    head = math.fsum(0.5 / k**2)
    edge = 2_000_000.5
    return head + 0.5 / edge


a_sym, R_sym, n_sym = sp.symbols("a R n", positive=True)

PRINTED_ENERGY = {
    # printed (1/4pi) E closed forms
    "canonical": n_sym * sp.pi / (2 * (R_sym - a_sym)) + (1 / a_sym - 1 / R_sym) / (2 * n_sym * sp.pi),
    "improvement": -(1 / a_sym - 1 / R_sym) / (3 * n_sym * sp.pi),
}
PRINTED_ENERGY["improved"] = PRINTED_ENERGY["canonical"] + PRINTED_ENERGY["improvement"]

PRINTED_TRR = {
    # printed T^rr(r = a), 4 pi times the internal units
    "canonical": n_sym * sp.pi / (2 * a_sym**2 * (R_sym - a_sym) ** 2) + 1 / (2 * n_sym * sp.pi * a_sym**4),
    "improvement": -2 / (3 * n_sym * sp.pi * a_sym**4),
}
PRINTED_TRR["improved"] = PRINTED_TRR["canonical"] + PRINTED_TRR["improvement"]


def symbolic_pressure(kind, a, R, n):
    """-(1/(4 pi a^2)) dE/da of the printed bracket, by symbolic differentiation."""
    expr = -sp.diff(PRINTED_ENERGY[kind], a_sym) / (4 * sp.pi * a_sym**2)
    return float(expr.subs({a_sym: a, R_sym: R, n_sym: n}))


def printed_trr(kind, a, R, n):
    return float(PRINTED_TRR[kind].subs({a_sym: a, R_sym: R, n_sym: n}))


def indentation_contribution(g, x0, above, rho=1e-4):
    """Integral of complex g over a small semicircle around x0 (clockwise above, counter-clockwise below).

    Returns the value, which tends to -i pi Res (above) or +i pi Res (below).
    """
    if above:
        thetas = (math.pi, 0.0)  # from x0 - rho over the top to x0 + rho
    else:
        thetas = (math.pi, 2 * math.pi)  # from x0 - rho under the bottom to x0 + rho

    def part(theta, which):
        z = x0 + rho * np.exp(1j * theta)
        val = g(z) * 1j * rho * np.exp(1j * theta)
        return val.real if which == 0 else val.imag

    start, stop = thetas
    return complex(quad(lambda t: part(t, 0), start, stop), quad(lambda t: part(t, 1), start, stop))
