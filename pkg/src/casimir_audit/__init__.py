"""Numerical checks of two scalar-field Casimir counterexamples.

* the pressure-stress relation ``p = -T^rr(a)`` on a spherical shell, which
  fails separately for the canonical tensor and the improvement term but
  holds for their traceless sum;
* the l = 0 contour integral f, whose cutoff-dependent real part has no
  limit and so differs from the rotated Euclidean value -pi^2/12.
"""

__version__ = "0.1.0"
