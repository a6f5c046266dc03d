"""Numerical differential operators, line and flux quadrature, and checks.

Line integrals use composite Gauss-Legendre along the path parameter with
panel doubling; disc fluxes use a polar product rule with radial splits at
known breakpoints; shrinking-loop circulations extrapolate in the squared
loop radius.  Delta-supported sources never enter any stencil or quadrature;
their integrated contributions are added from their analytic accessors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .analytic_fields import FieldExpr, StringField
from .errors import DomainViolation, NoConvergence, NoLimit
from .extrapolation import neville_to_zero
from .geometry import DiscSpec, LoopSpec, PathSpec, as_xyz


@dataclass(frozen=True)
class DiffConfig:
    """Finite-difference step and stencil order for curl/divergence."""

    h: float = 1e-4
    order: int = 2

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("step must be positive")
        if self.order not in (2, 4):
            raise ValueError("order must be 2 or 4")


@dataclass(frozen=True)
class CirculationReport:
    value: float
    n_points: int
    error_estimate: float

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error estimate must be nonnegative")


@dataclass(frozen=True)
class HelmholtzReport:
    max_abs_div: float
    max_abs_curl: float
    classification: str
    notes: tuple = ()


@dataclass(frozen=True)
class ShrinkingLoopReport:
    """Circulations on shrinking circles and their radius -> 0 limit."""

    value: float
    eps_values: tuple
    circulations: tuple
    error_estimate: float


# ---------------------------------------------------------------------------
# Finite differences
# ---------------------------------------------------------------------------

def _stencil_margin(cfg: DiffConfig) -> float:
    reach = 2 if cfg.order == 4 else 1
    return reach * cfg.h * 1.0001


def _jacobian(f: FieldExpr, p, cfg: DiffConfig) -> np.ndarray:
    """J[i, j] = d f_i / d x_j by central differences."""
    base = as_xyz(p)
    if not f.domain_ok(base, margin=_stencil_margin(cfg)):
        raise DomainViolation("finite-difference stencil leaves the field's domain")
    h = cfg.h
    cols = []
    for axis in range(3):
        e = np.zeros(3)
        e[axis] = 1.0
        if cfg.order == 2:
            col = (f(base + h * e) - f(base - h * e)) / (2 * h)
        else:
            col = (8.0 * (f(base + h * e) - f(base - h * e))
                   - (f(base + 2 * h * e) - f(base - 2 * h * e))) / (12 * h)
        cols.append(col)
    return np.column_stack(cols)


def numeric_curl(f: FieldExpr, p, cfg: DiffConfig = DiffConfig()) -> np.ndarray:
    j = _jacobian(f, p, cfg)
    return np.array([j[2, 1] - j[1, 2], j[0, 2] - j[2, 0], j[1, 0] - j[0, 1]])


def numeric_divergence(f: FieldExpr, p, cfg: DiffConfig = DiffConfig()) -> float:
    j = _jacobian(f, p, cfg)
    return float(j[0, 0] + j[1, 1] + j[2, 2])


@dataclass(frozen=True)
class NumericCurlField(FieldExpr):
    """Curl of another field, evaluated by finite differences on demand."""

    base: FieldExpr = None
    cfg: DiffConfig = DiffConfig()

    @property
    def radial_breakpoints(self) -> tuple:
        return self.base.radial_breakpoints

    def __call__(self, p) -> np.ndarray:
        return numeric_curl(self.base, p, self.cfg)

    def domain_ok(self, p, margin: float = 0.0) -> bool:
        return self.base.domain_ok(p, margin + _stencil_margin(self.cfg))


# ---------------------------------------------------------------------------
# Line integrals
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _gl01(order: int):
    """Gauss-Legendre nodes/weights mapped to the unit interval."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def _composite(g, panels: int, order: int) -> float:
    nodes, weights = _gl01(order)
    width = 1.0 / panels
    terms = []
    for k in range(panels):
        a = k * width
        for u, w in zip(nodes, weights):
            t = a + width * u
            terms.append(w * width * g(t))
    return math.fsum(terms)


def _adaptive_integral(g, tol: float, order: int, max_doublings: int,
                       start_panels: int = 2):
    prev = None
    panels = start_panels
    for _ in range(max_doublings + 1):
        val = _composite(g, panels, order)
        if prev is not None and abs(val - prev) < tol:
            return val, abs(val - prev), panels * order
        prev = val
        panels *= 2
    raise NoConvergence(
        f"line quadrature did not reach tol={tol:g} within {max_doublings} doublings")


def _domain_precheck(f: FieldExpr, path: PathSpec, n: int = 129) -> None:
    for pt in path.sample(n):
        if not f.domain_ok(pt):
            raise DomainViolation(
                f"path point {tuple(np.round(pt, 6))} is outside the field's domain")


def line_integral(f: FieldExpr, path: PathSpec, tol: float = 1e-9,
                  order: int = 8, max_doublings: int = 16) -> CirculationReport:
    """Work integral of f along the path, refined until |I_2n - I_n| < tol.

    A reversed path is integrated as its forward twin on the same quadrature
    nodes and negated, so orientation reversal is exactly antisymmetric.
    Concatenations and polylines integrate piecewise so panel boundaries
    align with their kinks.
    """
    if path.is_reversed:
        rep = line_integral(f, path.reverse(), tol, order, max_doublings)
        return CirculationReport(-rep.value, rep.n_points, rep.error_estimate)

    if path.kind == "concat":
        parts = [line_integral(f, c, tol / len(path.children), order, max_doublings)
                 for c in path.children]
        return CirculationReport(math.fsum(r.value for r in parts),
                                 sum(r.n_points for r in parts),
                                 math.fsum(r.error_estimate for r in parts))

    if path.kind == "polyline":
        verts = [np.asarray(v) for v in path.vertices]
        nseg = len(verts) - 1
        _domain_precheck(f, path, n=max(129, 8 * nseg + 1))
        vals, errs, pts = [], [], 0
        for a, b in zip(verts, verts[1:]):
            d = b - a

            def g(t, a=a, d=d):
                return float(np.dot(f(a + t * d), d))

            v, e, n = _adaptive_integral(g, tol / nseg, order, max_doublings,
                                         start_panels=1)
            vals.append(v)
            errs.append(e)
            pts += n
        return CirculationReport(math.fsum(vals), pts, math.fsum(errs))

    _domain_precheck(f, path)

    def g(t):
        return float(np.dot(f(path._point(t)), path._velocity(t)))

    val, err, n = _adaptive_integral(g, tol, order, max_doublings, start_panels=2)
    return CirculationReport(val, n, err)


# ---------------------------------------------------------------------------
# Disc fluxes
# ---------------------------------------------------------------------------

def _polar_flux_level(f: FieldExpr, disc: DiscSpec, redges, level: int,
                      r_order: int, t_order: int) -> float:
    r_nodes, r_weights = _gl01(r_order)
    t_nodes, t_weights = _gl01(t_order)
    cx, cy, cz = disc.center.x, disc.center.y, disc.center.z
    two_pi = 2.0 * math.pi
    rad_panels = 2 ** level
    ang_panels = 2 ** (level + 1)
    terms = []
    for lo, hi in zip(redges, redges[1:]):
        pw = (hi - lo) / rad_panels
        for k in range(rad_panels):
            a = lo + k * pw
            for ru, rw in zip(r_nodes, r_weights):
                r = a + pw * ru
                wr = rw * pw * r
                for m in range(ang_panels):
                    t0 = two_pi * m / ang_panels
                    tw_width = two_pi / ang_panels
                    for tu, tw in zip(t_nodes, t_weights):
                        theta = t0 + tw_width * tu
                        pt = np.array([cx + r * math.cos(theta),
                                       cy + r * math.sin(theta), cz])
                        terms.append(wr * tw * tw_width * float(f(pt)[2]))
    return math.fsum(terms)


def disc_flux(f: FieldExpr, disc: DiscSpec, deltas: Sequence = (),
              tol: float = 1e-9, order: int = 10,
              max_doublings: int = 8) -> float:
    """Flux of the smooth field through the disc plus enclosed delta fluxes.

    The smooth part uses a polar Gauss product rule; when the disc is
    centered on the axis the radial integration is split at the field's
    radial breakpoints so discontinuities sit on panel edges.  Enclosed
    string fields contribute their analytic flux; current-type descriptors
    carry no flux.
    """
    centered = math.hypot(disc.center.x, disc.center.y) <= 1e-12
    cuts = []
    if centered:
        cuts = sorted(b for b in f.radial_breakpoints if 0.0 < b < disc.radius)
    redges = [0.0, *cuts, disc.radius]

    prev = None
    smooth = None
    for level in range(max_doublings + 1):
        val = _polar_flux_level(f, disc, redges, level, order, order)
        if prev is not None and abs(val - prev) < tol:
            smooth = val
            break
        prev = val
    if smooth is None:
        raise NoConvergence(f"disc flux did not reach tol={tol:g}")

    total = smooth * disc.orientation
    for d in deltas:
        if isinstance(d, StringField):
            total += d.flux_through(disc)
    return total


def stokes_residual(f: FieldExpr, loop: LoopSpec, disc: DiscSpec,
                    cfg: DiffConfig = DiffConfig(), tol: float = 1e-8) -> float:
    """|circulation along the loop - flux of the numeric curl through the disc|.

    The loop must be the rim of the disc; both sides are computed
    independently (quadrature against finite-difference curl quadrature).
    """
    for t in np.linspace(0.0, 1.0, 17):
        pt = loop.path.point_at(float(t))
        rim = math.hypot(pt[0] - disc.center.x, pt[1] - disc.center.y)
        if abs(rim - disc.radius) > 1e-9 or abs(pt[2] - disc.center.z) > 1e-9:
            raise DomainViolation("loop is not the boundary of the disc")
    circ = line_integral(f, loop.path, tol=tol * 1e-2)
    flux = disc_flux(NumericCurlField(f, cfg), disc, tol=tol)
    return abs(circ.value - flux)


# ---------------------------------------------------------------------------
# Shrinking loops and field classification
# ---------------------------------------------------------------------------

def shrinking_loop_circulation(f: FieldExpr, center,
                               eps_list: Sequence[float] = (1e-1, 1e-2, 1e-3),
                               tol: float = 1e-11,
                               cauchy_tol: float = 1e-6) -> ShrinkingLoopReport:
    """Circulations around shrinking circles and their extrapolated limit.

    eps_list must be strictly descending.  The limit comes from a
    polynomial fit in eps**2 through the last three radii (the smooth
    remainder of the probed fields is quadratic in the loop radius); a
    nonzero limit signals distributional curl at the center.
    """
    eps = [float(e) for e in eps_list]
    if len(eps) < 2:
        raise ValueError("need at least two radii")
    if any(b >= a for a, b in zip(eps, eps[1:])) or eps[-1] <= 0:
        raise ValueError("radii must be strictly descending and positive")

    c = as_xyz(center)
    circs = []
    quad_err = 0.0
    for e in eps:
        rep = line_integral(f, PathSpec.circle(c, e), tol=tol)
        circs.append(rep.value)
        quad_err = max(quad_err, rep.error_estimate)

    xs = [e * e for e in eps]
    main, _ = neville_to_zero(xs[-3:], circs[-3:])
    if len(eps) >= 4:
        prev, _ = neville_to_zero(xs[-4:-1], circs[-4:-1])
    else:
        prev, _ = neville_to_zero(xs[-2:], circs[-2:])
    spread = abs(float(main) - float(prev))
    if spread > cauchy_tol:
        raise NoLimit(
            f"shrinking-loop extrapolants differ by {spread:.3e}; no limit")
    return ShrinkingLoopReport(value=float(main), eps_values=tuple(eps),
                               circulations=tuple(circs),
                               error_estimate=max(spread, quad_err))


def helmholtz_classify(f: FieldExpr, sample_points, cfg: DiffConfig = DiffConfig(),
                       threshold: float = 1e-6) -> HelmholtzReport:
    """Classify a field as transverse/longitudinal from sampled div and curl.

    A field below threshold on both measures is reported as "both"; when it
    is not the zero field this is the harmonic case (curl-free on the
    sampled region yet divergence-free), flagged in the notes.
    """
    max_div = 0.0
    max_curl = 0.0
    max_mag = 0.0
    for p in sample_points:
        j = _jacobian(f, p, cfg)
        div = abs(float(j[0, 0] + j[1, 1] + j[2, 2]))
        curl = float(np.max(np.abs([j[2, 1] - j[1, 2],
                                    j[0, 2] - j[2, 0],
                                    j[1, 0] - j[0, 1]])))
        max_div = max(max_div, div)
        max_curl = max(max_curl, curl)
        max_mag = max(max_mag, float(np.max(np.abs(f(p)))))

    if max_div < threshold and max_curl < threshold:
        classification = "both"
        notes = ("harmonic",) if max_mag >= threshold else ("zero",)
    elif max_div < threshold:
        classification = "transverse"
        notes = ()
    elif max_curl < threshold:
        classification = "longitudinal"
        notes = ()
    else:
        classification = "neither"
        notes = ()
    return HelmholtzReport(max_abs_div=max_div, max_abs_curl=max_curl,
                           classification=classification, notes=notes)
