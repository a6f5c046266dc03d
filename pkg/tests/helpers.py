"""Independent oracles and sampling utilities for the test suite.

The quadrature oracles here deliberately avoid the library's adaptive
Gauss-Legendre machinery: Simpson's rule on a uniform parameter grid and
plain central differences, so derived expectations are checked through a
second route.
"""

import math

import numpy as np


def simpson_path_integral(field, path, n: int = 4096) -> float:
    """Simpson's rule for the work integral of field along path.

    n must be even; uses the path map and velocity on a uniform grid,
    independent of the library's panel-doubling Gauss quadrature.
    """
    if n % 2:
        raise ValueError("n must be even")
    ts = np.linspace(0.0, 1.0, n + 1)
    vals = np.array([float(np.dot(field(path.point_at(float(t))),
                                  path.velocity_at(float(t)))) for t in ts])
    h = 1.0 / n
    return h / 3.0 * (vals[0] + vals[-1]
                      + 4.0 * vals[1:-1:2].sum() + 2.0 * vals[2:-1:2].sum())


def fd_gradient(scalar, p, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of a scalar callable of (x, y, z)."""
    p = np.asarray(p, dtype=float)
    out = np.zeros(3)
    for axis in range(3):
        e = np.zeros(3)
        e[axis] = h
        out[axis] = (scalar(p + e) - scalar(p - e)) / (2 * h)
    return out


def fd_curl(field, p, h: float = 1e-5) -> np.ndarray:
    """Central-difference curl, independent of the calculus module."""
    p = np.asarray(p, dtype=float)
    cols = []
    for axis in range(3):
        e = np.zeros(3)
        e[axis] = h
        cols.append((np.asarray(field(p + e)) - np.asarray(field(p - e))) / (2 * h))
    j = np.column_stack(cols)
    return np.array([j[2, 1] - j[1, 2], j[0, 2] - j[2, 0], j[1, 0] - j[0, 1]])


def cylinder_points(rng, n, rho_range, z_range=(-1.0, 1.0), avoid_shell=None,
                    shell_margin=0.02, phi_range=(-math.pi, math.pi)):
    """Random points with uniform (rho, phi, z), optionally off the shell."""
    pts = []
    while len(pts) < n:
        rho = rng.uniform(*rho_range)
        if avoid_shell is not None and abs(rho - avoid_shell) < shell_margin:
            continue
        phi = rng.uniform(*phi_range)
        z = rng.uniform(*z_range)
        pts.append(np.array([rho * math.cos(phi), rho * math.sin(phi), z]))
    return pts


def random_polynomial_gauge(rng, max_degree: int = 3, n_terms: int = 4):
    """Random smooth polynomial gauge with bounded coefficients.

    Degree stays at or below 3 so second-order stencils differentiate the
    gradient exactly up to rounding.
    """
    from abgauge import PolynomialGauge
    terms = []
    for _ in range(n_terms):
        while True:
            i, j, k = (int(rng.integers(0, max_degree + 1)) for _ in range(3))
            if 0 < i + j + k <= max_degree:
                break
        terms.append((i, j, k, float(rng.uniform(-1.0, 1.0))))
    return PolynomialGauge(tuple(terms), name="random")
