"""Points, paths, loops, and discs, with continuous-azimuth bookkeeping.

All values are immutable after construction and safe to share between
threads.  Azimuth unwrapping is sample based: principal angles on a uniform
parameter grid are continued onto the nearest branch, and callers that need
a certified winding count double the sample count until the result
stabilizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AxisCrossing, NoConvergence, NotClosed

AXIS_CUTOFF = 1e-9
CLOSURE_TOL = 1e-12

# Step for the numeric fallback of parametric-path velocities.
_VELOCITY_H = 1e-7


def as_xyz(point) -> np.ndarray:
    """Coerce a Point or length-3 sequence to a float64 array (x, y, z)."""
    if isinstance(point, Point):
        return point.as_array()
    arr = np.asarray(point, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class Point:
    """Cartesian point in desk units, with cylindrical accessors."""

    x: float
    y: float
    z: float

    @classmethod
    def from_cylindrical(cls, rho: float, phi: float, z: float) -> "Point":
        return cls(rho * math.cos(phi), rho * math.sin(phi), z)

    @classmethod
    def from_array(cls, arr) -> "Point":
        x, y, z = np.asarray(arr, dtype=float)
        return cls(float(x), float(y), float(z))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @property
    def rho(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        """Principal azimuth in (-pi, pi]."""
        return math.atan2(self.y, self.x)


@dataclass(frozen=True)
class PathSpec:
    """Oriented curve over the unit parameter interval.

    Three storage kinds: a parametric map (optionally with an analytic
    derivative), a polyline over explicit vertices, or a concatenation of
    sub-paths.  Reversal is a flag, so that integrators can evaluate the
    underlying forward curve on identical quadrature nodes and negate.
    """

    kind: str
    fn: Optional[Callable[[float], np.ndarray]] = None
    dfn: Optional[Callable[[float], np.ndarray]] = None
    vertices: Optional[tuple] = None
    children: Optional[tuple] = None
    is_reversed: bool = False

    # -- constructors --------------------------------------------------

    @classmethod
    def parametric(cls, fn, derivative=None) -> "PathSpec":
        return cls(kind="parametric", fn=fn, dfn=derivative)

    @classmethod
    def polyline(cls, points: Sequence) -> "PathSpec":
        verts = tuple(tuple(float(c) for c in as_xyz(p)) for p in points)
        if len(verts) < 2:
            raise ValueError("polyline needs at least 2 vertices")
        return cls(kind="polyline", vertices=verts)

    @classmethod
    def segment(cls, a, b) -> "PathSpec":
        return cls.polyline([a, b])

    @classmethod
    def circle(cls, center, radius: float, turns: int = 1,
               start_phase: float = 0.0) -> "PathSpec":
        """z-normal circle; positive turns wind counterclockwise."""
        if radius <= 0:
            raise ValueError("circle radius must be positive")
        if turns == 0:
            raise ValueError("circle needs a nonzero turn count")
        c = as_xyz(center)
        sweep = 2.0 * math.pi * turns

        def fn(t, c=c, r=radius, p0=start_phase, sw=sweep):
            a = p0 + sw * t
            return np.array([c[0] + r * math.cos(a), c[1] + r * math.sin(a), c[2]])

        def dfn(t, c=c, r=radius, p0=start_phase, sw=sweep):
            a = p0 + sw * t
            return np.array([-r * sw * math.sin(a), r * sw * math.cos(a), 0.0])

        return cls(kind="parametric", fn=fn, dfn=dfn)

    @classmethod
    def arc(cls, center, radius: float, phi0: float, phi1: float) -> "PathSpec":
        """z-normal circular arc swept from azimuth phi0 to phi1."""
        if radius <= 0:
            raise ValueError("arc radius must be positive")
        c = as_xyz(center)
        sweep = phi1 - phi0

        def fn(t, c=c, r=radius, p0=phi0, sw=sweep):
            a = p0 + sw * t
            return np.array([c[0] + r * math.cos(a), c[1] + r * math.sin(a), c[2]])

        def dfn(t, c=c, r=radius, p0=phi0, sw=sweep):
            a = p0 + sw * t
            return np.array([-r * sw * math.sin(a), r * sw * math.cos(a), 0.0])

        return cls(kind="parametric", fn=fn, dfn=dfn)

    @classmethod
    def concat(cls, *paths: "PathSpec") -> "PathSpec":
        if len(paths) < 2:
            raise ValueError("concat needs at least two paths")
        for a, b in zip(paths, paths[1:]):
            if np.max(np.abs(a.end - b.start)) > CLOSURE_TOL:
                raise ValueError("concatenated paths do not join at endpoints")
        return cls(kind="concat", children=tuple(paths))

    # -- evaluation ----------------------------------------------------

    def point_at(self, t: float) -> np.ndarray:
        tt = 1.0 - t if self.is_reversed else t
        return self._point(tt)

    def velocity_at(self, t: float) -> np.ndarray:
        tt = 1.0 - t if self.is_reversed else t
        v = self._velocity(tt)
        return -v if self.is_reversed else v

    def _point(self, t: float) -> np.ndarray:
        if self.kind == "parametric":
            return np.asarray(self.fn(t), dtype=float)
        if self.kind == "polyline":
            verts = self.vertices
            nseg = len(verts) - 1
            s = min(max(t, 0.0), 1.0) * nseg
            i = min(int(s), nseg - 1)
            u = s - i
            a = np.asarray(verts[i])
            b = np.asarray(verts[i + 1])
            return a + u * (b - a)
        if self.kind == "concat":
            m = len(self.children)
            s = min(max(t, 0.0), 1.0) * m
            i = min(int(s), m - 1)
            return self.children[i].point_at(s - i)
        raise ValueError(f"unknown path kind {self.kind!r}")

    def _velocity(self, t: float) -> np.ndarray:
        if self.kind == "parametric":
            if self.dfn is not None:
                return np.asarray(self.dfn(t), dtype=float)
            h = _VELOCITY_H
            if t < h:
                return (-3.0 * self._point(t) + 4.0 * self._point(t + h)
                        - self._point(t + 2 * h)) / (2 * h)
            if t > 1.0 - h:
                return (3.0 * self._point(t) - 4.0 * self._point(t - h)
                        + self._point(t - 2 * h)) / (2 * h)
            return (self._point(t + h) - self._point(t - h)) / (2 * h)
        if self.kind == "polyline":
            verts = self.vertices
            nseg = len(verts) - 1
            s = min(max(t, 0.0), 1.0) * nseg
            i = min(int(s), nseg - 1)
            a = np.asarray(verts[i])
            b = np.asarray(verts[i + 1])
            return (b - a) * nseg
        if self.kind == "concat":
            m = len(self.children)
            s = min(max(t, 0.0), 1.0) * m
            i = min(int(s), m - 1)
            return self.children[i].velocity_at(s - i) * m
        raise ValueError(f"unknown path kind {self.kind!r}")

    # -- structure -----------------------------------------------------

    def reverse(self) -> "PathSpec":
        return replace(self, is_reversed=not self.is_reversed)

    @property
    def start(self) -> np.ndarray:
        return self.point_at(0.0)

    @property
    def end(self) -> np.ndarray:
        return self.point_at(1.0)

    @property
    def is_closed(self) -> bool:
        return bool(np.max(np.abs(self.start - self.end)) <= CLOSURE_TOL)

    def sample(self, n: int) -> np.ndarray:
        """n points along the path at uniform parameter values.

        A reversed path samples its forward twin and flips the array, so
        forward and reversed samples are bitwise mirrors of each other.
        """
        if n < 2:
            raise ValueError("need at least 2 samples")
        if self.is_reversed:
            forward = replace(self, is_reversed=False)
            return forward.sample(n)[::-1].copy()
        ts = np.linspace(0.0, 1.0, n)
        return np.array([self._point(float(t)) for t in ts])

    def check_sampled_continuity(self, n: int = 4096) -> bool:
        """True when no sampled gap exceeds 10x the mean gap."""
        pts = self.sample(n)
        gaps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        mean = float(gaps.mean())
        return bool(float(gaps.max()) <= 10.0 * mean) if mean > 0 else True


def _wrap_to_pi(deltas: np.ndarray) -> np.ndarray:
    """Map angle increments onto the nearest branch, |delta| <= pi."""
    return deltas - 2.0 * math.pi * np.round(deltas / (2.0 * math.pi))


def _raw_azimuths(path: PathSpec, n_samples: int) -> np.ndarray:
    pts = path.sample(n_samples)
    rho = np.hypot(pts[:, 0], pts[:, 1])
    if np.any(rho < AXIS_CUTOFF):
        raise AxisCrossing(
            f"path passes within {AXIS_CUTOFF} of the z-axis; azimuth undefined")
    return np.arctan2(pts[:, 1], pts[:, 0])


def continuous_azimuth(path: PathSpec, n_samples: int = 4096) -> np.ndarray:
    """Unwrapped azimuth along the path, one value per sample.

    The first entry is the principal azimuth of the start point; later
    entries continue it so consecutive jumps stay below pi.
    """
    raw = _raw_azimuths(path, n_samples)
    deltas = _wrap_to_pi(np.diff(raw))
    out = np.empty_like(raw)
    out[0] = raw[0]
    out[1:] = raw[0] + np.cumsum(deltas)
    return out

def azimuth_change(path: PathSpec, n_samples: int = 4096) -> float:
    """Total unwrapped azimuth change phi(1) - phi(0).

    Accumulated with exact (fsum) summation, so reversing the path negates
    the result bitwise.
    """
    raw = _raw_azimuths(path, n_samples)
    deltas = _wrap_to_pi(np.diff(raw))
    return math.fsum(deltas.tolist())


def stable_azimuth_change(path: PathSpec, n_samples: int = 4096,
                          max_doublings: int = 8, tol: float = 1e-9) -> float:
    """Azimuth change with the sample count doubled until two runs agree."""
    prev = None
    n = n_samples
    for _ in range(max_doublings + 1):
        cur = azimuth_change(path, n)
        if prev is not None and abs(cur - prev) <= tol * (1.0 + abs(cur)):
            return cur
        prev = cur
        n *= 2
    raise NoConvergence("azimuth change did not stabilize under sample doubling")


def endpoint_azimuths(path: PathSpec, n_samples: int = 4096) -> tuple:
    """(start, end) azimuths on the branch continued along the path."""
    start = float(_raw_azimuths(path, 2)[0])
    return start, start + stable_azimuth_change(path, n_samples)


@dataclass(frozen=True)
class LoopSpec:
    """A closed PathSpec plus winding bookkeeping around the z-axis."""

    path: PathSpec

    def __post_init__(self):
        gap = float(np.max(np.abs(self.path.start - self.path.end)))
        if gap > CLOSURE_TOL:
            raise NotClosed(f"loop endpoints differ by {gap:.3e}")

    @classmethod
    def circle(cls, center, radius: float, turns: int = 1) -> "LoopSpec":
        return cls(PathSpec.circle(center, radius, turns=turns))

    def reverse(self) -> "LoopSpec":
        return LoopSpec(self.path.reverse())

    def winding_number(self, n_samples: int = 4096) -> int:
        return winding_number(self, n_samples)


def winding_number(loop: LoopSpec, n_samples: int = 4096,
                   max_doublings: int = 8) -> int:
    """Signed number of revolutions of a closed path around the z-axis.

    Sample count doubles until two successive integer counts agree and the
    unwrapped change is an integer multiple of 2*pi to 1e-6.
    """
    prev = None
    n = n_samples
    for _ in range(max_doublings + 1):
        turns = azimuth_change(loop.path, n) / (2.0 * math.pi)
        w = int(round(turns))
        if abs(turns - w) <= 1e-6 and prev == w:
            return w
        prev = w
        n *= 2
    raise NoConvergence("winding count did not stabilize under sample doubling")


@dataclass(frozen=True)
class DiscSpec:
    """Flat z-normal disc used for flux integrals."""

    center: Point
    radius: float
    normal: tuple = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("disc radius must be positive")
        n = np.asarray(self.normal, dtype=float)
        if abs(np.linalg.norm(n) - 1.0) > 1e-12:
            raise ValueError("disc normal must be a unit vector")
        if abs(n[0]) > 1e-12 or abs(n[1]) > 1e-12:
            raise ValueError("only z-normal discs are supported")

    @property
    def orientation(self) -> float:
        """+1 for normal along +z, -1 for -z."""
        return 1.0 if self.normal[2] > 0 else -1.0

    def contains_axis(self) -> bool:
        return math.hypot(self.center.x, self.center.y) < self.radius

    def point_on(self, r: float, theta: float) -> np.ndarray:
        return np.array([self.center.x + r * math.cos(theta),
                         self.center.y + r * math.sin(theta),
                         self.center.z])

    def boundary(self) -> LoopSpec:
        """Rim loop oriented by the right-hand rule around the normal."""
        turns = 1 if self.orientation > 0 else -1
        return LoopSpec.circle(self.center.as_array(), self.radius, turns=turns)
