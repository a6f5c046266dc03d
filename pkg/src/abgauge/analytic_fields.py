"""Closed-form potentials, gauge functions, and delta-source descriptors.

Covers the infinitely long ideal solenoid (transverse potential, interior
field, singular azimuthal gauge, gauge-transformed potential) and the
uniform-field Landau system (symmetric gauge, the two Landau gauges, the
Bawin-Burnel gauge, and the scalar functions linking them).

All vectors are returned in Cartesian components; the local cylindrical
frame is resolved at the evaluation point.  Multi-valued gauge functions
take the continued azimuth as an explicit argument so that evaluation stays
pure and branch tracking lives with path geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import AxisCrossing, OnShell
from .geometry import AXIS_CUTOFF, as_xyz

SHELL_TOL = 1e-12


@dataclass(frozen=True)
class SolenoidSpec:
    """Ideal solenoid along the z-axis: radius R, interior field B.

    The azimuthal surface-current sheet at rho = R has strength B per unit
    length, so B is both the current density scale and the uniform interior
    field.  flux is the total through the cross-section, pi * R**2 * B.
    """

    R: float = 1.0
    B: float = 1.0

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("solenoid radius must be positive")

    @property
    def flux(self) -> float:
        return math.pi * self.R ** 2 * self.B


# ---------------------------------------------------------------------------
# Closed-form solenoid fields
# ---------------------------------------------------------------------------

def solenoid_transverse_potential(p, s: SolenoidSpec) -> np.ndarray:
    """Divergence-free potential sourced by the solenoid current alone.

    (flux / 2 pi) * (rho / R^2) e_phi inside, (flux / 2 pi) / rho e_phi
    outside; both branches meet at rho = R.  Continuous everywhere,
    including the axis, where it vanishes.
    """
    x, y, z = as_xyz(p)
    rho2 = x * x + y * y
    if rho2 < s.R ** 2:
        pref = s.flux / (2.0 * math.pi * s.R ** 2)
    else:
        pref = s.flux / (2.0 * math.pi * rho2)
    return np.array([-pref * y, pref * x, 0.0])


def solenoid_b_field(p, s: SolenoidSpec) -> np.ndarray:
    """Uniform B e_z inside the shell, zero outside, undefined on it."""
    x, y, z = as_xyz(p)
    rho = math.hypot(x, y)
    if abs(rho - s.R) < SHELL_TOL:
        raise OnShell("magnetic field has no value on the current shell")
    if rho < s.R:
        return np.array([0.0, 0.0, s.B])
    return np.zeros(3)


def transformed_potential(p, s: SolenoidSpec) -> np.ndarray:
    """Potential after the singular azimuthal gauge transformation.

    Identically zero outside the solenoid; inside it keeps the uniform
    curl but picks up a 1/rho piece, so the axis is excluded.
    """
    x, y, z = as_xyz(p)
    rho2 = x * x + y * y
    if rho2 < AXIS_CUTOFF ** 2:
        raise AxisCrossing("transformed potential is singular on the axis")
    if rho2 >= s.R ** 2:
        return np.zeros(3)
    pref = s.flux / (2.0 * math.pi) * (1.0 / s.R ** 2 - 1.0 / rho2)
    return np.array([-pref * y, pref * x, 0.0])


def string_flux(s: SolenoidSpec) -> float:
    """Analytic flux of the axis string field through any disc holding the axis.

    The singular gauge deposits a delta-supported field of flux -flux on
    the axis, cancelling the solenoid's net flux.
    """
    return -s.flux


# ---------------------------------------------------------------------------
# Gauge functions
# ---------------------------------------------------------------------------

def _principal_azimuth(x: float, y: float) -> float:
    return math.atan2(y, x)


@dataclass(frozen=True)
class PolynomialGauge:
    """Single-valued gauge function sum_k c_k x^i y^j z^k.

    coefficients holds (i, j, k, c) monomial entries.  Smooth everywhere,
    so the gradient is an exact closed form and its curl vanishes.
    """

    coefficients: tuple
    name: str = "custom"
    multi_valued = False
    branch_dependent_gradient = False

    @property
    def label(self) -> str:
        return self.name

    def value(self, p, azimuth: Optional[float] = None) -> float:
        x, y, z = as_xyz(p)
        return math.fsum(c * x ** i * y ** j * z ** k
                         for (i, j, k, c) in self.coefficients)

    def gradient(self, p, azimuth: Optional[float] = None) -> np.ndarray:
        x, y, z = as_xyz(p)
        gx = math.fsum(c * i * x ** (i - 1) * y ** j * z ** k
                       for (i, j, k, c) in self.coefficients if i > 0)
        gy = math.fsum(c * j * x ** i * y ** (j - 1) * z ** k
                       for (i, j, k, c) in self.coefficients if j > 0)
        gz = math.fsum(c * k * x ** i * y ** j * z ** (k - 1)
                       for (i, j, k, c) in self.coefficients if k > 0)
        return np.array([gx, gy, gz])


def landau_link1(B: float = 1.0) -> PolynomialGauge:
    """chi1 = +B x y / 2, carrying the first Landau gauge into the symmetric one."""
    return PolynomialGauge(((1, 1, 0, 0.5 * B),), name="chi1")


def landau_link2(B: float = 1.0) -> PolynomialGauge:
    """chi2 = -B x y / 2, carrying the second Landau gauge into the symmetric one."""
    return PolynomialGauge(((1, 1, 0, -0.5 * B),), name="chi2")


@dataclass(frozen=True)
class SingularSolenoidGauge:
    """Multi-valued azimuthal gauge -(flux / 2 pi) * phi for the solenoid.

    Its gradient is single valued off the axis, but one full winding shifts
    the value by -flux: the axis carries a string of distributional curl.
    """

    solenoid: SolenoidSpec
    multi_valued = True
    branch_dependent_gradient = False
    label = "sing"

    def value(self, p, azimuth: Optional[float] = None) -> float:
        x, y, z = as_xyz(p)
        if math.hypot(x, y) < AXIS_CUTOFF:
            raise AxisCrossing("singular gauge undefined on the axis")
        az = _principal_azimuth(x, y) if azimuth is None else azimuth
        return -self.solenoid.flux / (2.0 * math.pi) * az

    def gradient(self, p, azimuth: Optional[float] = None) -> np.ndarray:
        x, y, z = as_xyz(p)
        rho2 = x * x + y * y
        if rho2 < AXIS_CUTOFF ** 2:
            raise AxisCrossing("singular gauge gradient undefined on the axis")
        pref = -self.solenoid.flux / (2.0 * math.pi * rho2)
        return np.array([-pref * y, pref * x, 0.0])


@dataclass(frozen=True)
class BawinBurnelGauge:
    """Multi-valued Landau-system gauge -B r^2 phi / 2.

    Unlike the solenoid's singular gauge, its gradient itself depends on the
    azimuth branch, so gradient evaluation also takes the continued azimuth.
    """

    B: float = 1.0
    multi_valued = True
    branch_dependent_gradient = True
    label = "chitilde"

    def value(self, p, azimuth: Optional[float] = None) -> float:
        x, y, z = as_xyz(p)
        if math.hypot(x, y) < AXIS_CUTOFF:
            raise AxisCrossing("Bawin-Burnel gauge undefined on the axis")
        az = _principal_azimuth(x, y) if azimuth is None else azimuth
        return -0.5 * self.B * (x * x + y * y) * az

    def gradient(self, p, azimuth: Optional[float] = None) -> np.ndarray:
        # -B r phi e_r - (B r / 2) e_phi, written out in Cartesian components.
        x, y, z = as_xyz(p)
        if math.hypot(x, y) < AXIS_CUTOFF:
            raise AxisCrossing("Bawin-Burnel gradient undefined on the axis")
        az = _principal_azimuth(x, y) if azimuth is None else azimuth
        return np.array([-self.B * az * x + 0.5 * self.B * y,
                         -self.B * az * y - 0.5 * self.B * x,
                         0.0])


GaugeChoice = Union[PolynomialGauge, SingularSolenoidGauge, BawinBurnelGauge]


def gauge_value(gauge: GaugeChoice, p, azimuth: Optional[float] = None) -> float:
    """Scalar gauge function at p.

    Multi-valued gauges use the supplied continued azimuth (falling back to
    the principal branch); single-valued gauges ignore it.
    """
    return gauge.value(p, azimuth)


def gauge_gradient(gauge: GaugeChoice, p, azimuth: Optional[float] = None) -> np.ndarray:
    """Closed-form gradient of the gauge function at p.

    The azimuth argument only matters for gauges whose gradient is itself
    branch dependent (Bawin-Burnel).
    """
    return gauge.gradient(p, azimuth)


def gauge_label(gauge: Optional[GaugeChoice]) -> str:
    return "none" if gauge is None else gauge.label


# ---------------------------------------------------------------------------
# Landau-system potentials
# ---------------------------------------------------------------------------

LANDAU_VARIANTS = ("S", "L1", "L2", "BB")


def landau_potential(variant: str, p, B: float = 1.0,
                     azimuth: Optional[float] = None) -> np.ndarray:
    """Uniform-field potential in one of the standard gauges.

    S: (-B y / 2, B x / 2, 0); L1: (-B y, 0, 0); L2: (0, B x, 0);
    BB: -B r phi e_r, which needs the continued azimuth and excludes the axis.
    """
    x, y, z = as_xyz(p)
    if variant == "S":
        return np.array([-0.5 * B * y, 0.5 * B * x, 0.0])
    if variant == "L1":
        return np.array([-B * y, 0.0, 0.0])
    if variant == "L2":
        return np.array([0.0, B * x, 0.0])
    if variant == "BB":
        if math.hypot(x, y) < AXIS_CUTOFF:
            raise AxisCrossing("Bawin-Burnel potential undefined on the axis")
        az = _principal_azimuth(x, y) if azimuth is None else azimuth
        return np.array([-B * az * x, -B * az * y, 0.0])
    raise ValueError(f"unknown Landau variant {variant!r}")


# ---------------------------------------------------------------------------
# Field expressions
# ---------------------------------------------------------------------------

class FieldExpr:
    """Evaluable vector field with domain metadata.

    Instances are immutable and evaluation is pure, so concurrent use is
    fine.  Metadata drives the numerical layers: excluded axis for singular
    gauges, radial breakpoints where smoothness fails, and the principal
    branch cut for azimuth-dependent fields.
    """

    excludes_axis: bool = False
    branch_cut: bool = False

    @property
    def radial_breakpoints(self) -> tuple:
        return ()

    def __call__(self, p) -> np.ndarray:
        raise NotImplementedError

    def domain_ok(self, p, margin: float = 0.0) -> bool:
        x, y, z = as_xyz(p)
        rho = math.hypot(x, y)
        if self.excludes_axis and rho <= AXIS_CUTOFF + margin:
            return False
        if self.branch_cut and x < margin and abs(y) <= margin:
            return False
        return self._extra_domain_ok(rho, margin)

    def _extra_domain_ok(self, rho: float, margin: float) -> bool:
        return True

    def __add__(self, other: "FieldExpr") -> "FieldExpr":
        return SumField((self, other))

    def __neg__(self) -> "FieldExpr":
        return ScaledField(self, -1.0)

    def __mul__(self, factor: float) -> "FieldExpr":
        return ScaledField(self, float(factor))

    __rmul__ = __mul__


@dataclass(frozen=True)
class SolenoidTransverseField(FieldExpr):
    solenoid: SolenoidSpec = SolenoidSpec()

    @property
    def radial_breakpoints(self) -> tuple:
        return (self.solenoid.R,)

    def __call__(self, p) -> np.ndarray:
        return solenoid_transverse_potential(p, self.solenoid)


@dataclass(frozen=True)
class SolenoidBField(FieldExpr):
    solenoid: SolenoidSpec = SolenoidSpec()

    @property
    def radial_breakpoints(self) -> tuple:
        return (self.solenoid.R,)

    def __call__(self, p) -> np.ndarray:
        return solenoid_b_field(p, self.solenoid)

    def _extra_domain_ok(self, rho: float, margin: float) -> bool:
        return abs(rho - self.solenoid.R) > SHELL_TOL + margin


@dataclass(frozen=True)
class TransformedPotentialField(FieldExpr):
    solenoid: SolenoidSpec = SolenoidSpec()
    excludes_axis = True

    @property
    def radial_breakpoints(self) -> tuple:
        return (self.solenoid.R,)

    def __call__(self, p) -> np.ndarray:
        return transformed_potential(p, self.solenoid)


@dataclass(frozen=True)
class GaugeGradientField(FieldExpr):
    gauge: GaugeChoice = None

    @property
    def excludes_axis(self) -> bool:  # type: ignore[override]
        return bool(self.gauge.multi_valued)

    @property
    def branch_cut(self) -> bool:  # type: ignore[override]
        return bool(self.gauge.branch_dependent_gradient)

    def __call__(self, p) -> np.ndarray:
        return gauge_gradient(self.gauge, p)


@dataclass(frozen=True)
class LandauField(FieldExpr):
    variant: str = "S"
    B: float = 1.0

    def __post_init__(self):
        if self.variant not in LANDAU_VARIANTS:
            raise ValueError(f"unknown Landau variant {self.variant!r}")

    @property
    def excludes_axis(self) -> bool:  # type: ignore[override]
        return self.variant == "BB"

    @property
    def branch_cut(self) -> bool:  # type: ignore[override]
        return self.variant == "BB"

    def __call__(self, p) -> np.ndarray:
        return landau_potential(self.variant, p, self.B)


@dataclass(frozen=True)
class SumField(FieldExpr):
    terms: tuple = ()

    @property
    def excludes_axis(self) -> bool:  # type: ignore[override]
        return any(t.excludes_axis for t in self.terms)

    @property
    def branch_cut(self) -> bool:  # type: ignore[override]
        return any(t.branch_cut for t in self.terms)

    @property
    def radial_breakpoints(self) -> tuple:
        cuts = sorted({b for t in self.terms for b in t.radial_breakpoints})
        return tuple(cuts)

    def __call__(self, p) -> np.ndarray:
        total = np.zeros(3)
        for t in self.terms:
            total = total + t(p)
        return total

    def domain_ok(self, p, margin: float = 0.0) -> bool:
        return all(t.domain_ok(p, margin) for t in self.terms)


@dataclass(frozen=True)
class ScaledField(FieldExpr):
    base: FieldExpr = None
    factor: float = 1.0

    @property
    def excludes_axis(self) -> bool:  # type: ignore[override]
        return self.base.excludes_axis

    @property
    def branch_cut(self) -> bool:  # type: ignore[override]
        return self.base.branch_cut

    @property
    def radial_breakpoints(self) -> tuple:
        return self.base.radial_breakpoints

    def __call__(self, p) -> np.ndarray:
        return self.factor * self.base(p)

    def domain_ok(self, p, margin: float = 0.0) -> bool:
        return self.base.domain_ok(p, margin)


@dataclass(frozen=True)
class CallableField(FieldExpr):
    """Wrap an arbitrary (x, y, z) -> vector callable as a field expression."""

    fn: object = None

    def __call__(self, p) -> np.ndarray:
        return np.asarray(self.fn(as_xyz(p)), dtype=float)


# ---------------------------------------------------------------------------
# Delta-supported source descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceCurrent:
    """Azimuthal current sheet of strength B on the shell rho = R.

    Never evaluated pointwise; it is the source term of the solenoid system
    and the right-hand side of its circuital law.
    """

    solenoid: SolenoidSpec


@dataclass(frozen=True)
class StringField:
    """Delta-supported axial field of flux -flux left behind by the singular gauge."""

    solenoid: SolenoidSpec

    @property
    def flux(self) -> float:
        return string_flux(self.solenoid)

    def flux_through(self, disc) -> float:
        """Analytic flux through a disc; nonzero only when the axis pierces it."""
        if disc.contains_axis():
            return self.flux * disc.orientation
        return 0.0


@dataclass(frozen=True)
class StringCurrent:
    """Axis-supported current descriptor induced by the string field.

    Its presence marks the transformed system's circuital law as differing
    from the original one; it has no pointwise values and no flux.
    """

    solenoid: SolenoidSpec


DeltaSource = Union[SurfaceCurrent, StringField, StringCurrent]


def system_delta_sources(s: SolenoidSpec, gauge_transformed: bool = False) -> tuple:
    """Delta-supported objects present in each description of the solenoid.

    The original system carries only the surface current.  After the
    singular gauge transformation the ledger also contains the axis string
    field and its induced string current.
    """
    if gauge_transformed:
        return (SurfaceCurrent(s), StringField(s), StringCurrent(s))
    return (SurfaceCurrent(s),)
