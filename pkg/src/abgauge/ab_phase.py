"""Phase functionals for a charge moving past the solenoid.

The phase along a path is the charge times the work integral of the vector
potential, in natural units with no extra factor.  Every report splits the
phase into the transverse part (the current-sourced potential alone) and
the gauge part (endpoint difference of the gauge function, branch tracked
for multi-valued gauges); the two routes are computed independently and
must recombine to the total.

Also houses the two closed-form interaction-energy models for a charge at
constant velocity and their exact cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .analytic_fields import (FieldExpr, GaugeChoice, GaugeGradientField,
                              SolenoidSpec, SolenoidTransverseField,
                              gauge_label, gauge_value,
                              solenoid_transverse_potential)
from .calculus import line_integral
from .errors import EndpointMismatch
from .geometry import LoopSpec, PathSpec, Point, endpoint_azimuths

PHASE_TOL = 1e-12


@dataclass(frozen=True)
class PhaseProbe:
    """Charge, gauge choice, and base potential for phase measurements.

    gauge = None means the bare transverse potential.  base_field overrides
    the solenoid potential (for uniform-field systems); by default the
    probe uses the solenoid's transverse potential.
    """

    solenoid: SolenoidSpec = SolenoidSpec()
    gauge: Optional[GaugeChoice] = None
    e: float = 1.0
    base_field: Optional[FieldExpr] = None

    def __post_init__(self):
        if self.e == 0:
            raise ValueError("charge must be nonzero")

    def transverse_field(self) -> FieldExpr:
        if self.base_field is not None:
            return self.base_field
        return SolenoidTransverseField(self.solenoid)

    def total_field(self) -> FieldExpr:
        base = self.transverse_field()
        if self.gauge is None:
            return base
        return base + GaugeGradientField(self.gauge)


@dataclass(frozen=True)
class PhaseReport:
    """Phase value with its transverse/gauge split.

    phase - transverse_part - gauge_part is a genuine consistency residual:
    the total comes from integrating the full potential, the parts from the
    split routes.  Construction rejects reports where the two routes drift
    apart by more than 1e-10.
    """

    phase: float
    transverse_part: float
    gauge_part: float
    error_estimate: float
    winding: Optional[int] = None
    singular_gauge: bool = False
    notes: tuple = ()

    def __post_init__(self):
        residual = abs(self.phase - self.transverse_part - self.gauge_part)
        if residual >= 1e-10:
            raise ValueError(
                f"phase split inconsistent: residual {residual:.3e} >= 1e-10")


@dataclass(frozen=True)
class VelocitySample:
    """Charge velocity and position for the interaction-energy formulas."""

    v: tuple
    position: Point

    def __post_init__(self):
        vv = tuple(float(c) for c in self.v)
        if math.hypot(*vv) >= 1.0:
            raise ValueError("speed must stay below 1 in natural units")
        object.__setattr__(self, "v", vv)


def _gauge_endpoint_difference(gauge: GaugeChoice, path: PathSpec) -> float:
    start = path.point_at(0.0)
    end = path.point_at(1.0)
    if gauge.multi_valued:
        az_i, az_f = endpoint_azimuths(path)
        return gauge_value(gauge, end, az_f) - gauge_value(gauge, start, az_i)
    return gauge_value(gauge, end) - gauge_value(gauge, start)


def open_path_phase(probe: PhaseProbe, path: PathSpec,
                    tol: float = PHASE_TOL) -> PhaseReport:
    """Phase along an open path, split into transverse and gauge parts."""
    rep_t = line_integral(probe.transverse_field(), path, tol=tol)
    transverse = probe.e * rep_t.value
    if probe.gauge is None:
        return PhaseReport(phase=transverse, transverse_part=transverse,
                           gauge_part=0.0,
                           error_estimate=abs(probe.e) * rep_t.error_estimate)
    rep_total = line_integral(probe.total_field(), path, tol=tol)
    gauge_part = probe.e * _gauge_endpoint_difference(probe.gauge, path)
    singular = bool(probe.gauge.multi_valued)
    notes = ("multi-valued gauge: endpoint values taken on the branch "
             "continued along the path",) if singular else ()
    return PhaseReport(phase=probe.e * rep_total.value,
                       transverse_part=transverse,
                       gauge_part=gauge_part,
                       error_estimate=abs(probe.e) * (rep_t.error_estimate
                                                      + rep_total.error_estimate),
                       singular_gauge=singular,
                       notes=notes)


def loop_phase(probe: PhaseProbe, loop: LoopSpec,
               tol: float = PHASE_TOL) -> PhaseReport:
    """Phase around a closed loop.

    With any single-valued gauge this equals charge * winding * flux; the
    gauge part collapses to zero because the endpoints coincide.  With the
    singular solenoid gauge the gauge part removes one flux quantum per
    winding and the exterior loop phase vanishes: that gauge moves the
    enclosed flux into the axis string, so the report is flagged.
    """
    rep_total = line_integral(probe.total_field(), loop.path, tol=tol)
    err = abs(probe.e) * rep_total.error_estimate
    if probe.gauge is None:
        transverse = probe.e * rep_total.value
        gauge_part = 0.0
        singular = False
    else:
        rep_t = line_integral(probe.transverse_field(), loop.path, tol=tol)
        transverse = probe.e * rep_t.value
        gauge_part = probe.e * _gauge_endpoint_difference(probe.gauge, loop.path)
        err += abs(probe.e) * rep_t.error_estimate
        singular = bool(probe.gauge.multi_valued)
    try:
        w = loop.winding_number()
    except Exception:
        w = None
    notes = ()
    if singular:
        notes = ("singular gauge: the loop integral excludes the axis string, "
                 "so the net enclosed flux it sees is zero",)
    return PhaseReport(phase=probe.e * rep_total.value,
                       transverse_part=transverse,
                       gauge_part=gauge_part,
                       error_estimate=err,
                       winding=w,
                       singular_gauge=singular,
                       notes=notes)


def interference_shift(probe: PhaseProbe, c1: PathSpec, c2: PathSpec,
                       tol: float = PHASE_TOL) -> PhaseReport:
    """Observable phase difference between two arms sharing endpoints.

    Equals the loop phase around the first arm followed by the reversed
    second arm; single-valued gauge parts cancel between the arms.
    """
    if (np.max(np.abs(c1.start - c2.start)) > 1e-12
            or np.max(np.abs(c1.end - c2.end)) > 1e-12):
        raise EndpointMismatch("interference arms must share both endpoints")
    r1 = open_path_phase(probe, c1, tol=tol)
    r2 = open_path_phase(probe, c2, tol=tol)
    return PhaseReport(phase=r1.phase - r2.phase,
                       transverse_part=r1.transverse_part - r2.transverse_part,
                       gauge_part=r1.gauge_part - r2.gauge_part,
                       error_estimate=r1.error_estimate + r2.error_estimate,
                       singular_gauge=r1.singular_gauge or r2.singular_gauge)


@dataclass(frozen=True)
class GaugeScanRow:
    gauge_id: str
    phase: float
    transverse_part: float
    gauge_part: float


def gauge_dependence_scan(path: PathSpec, gauges: Sequence[Optional[GaugeChoice]],
                          probe: PhaseProbe = PhaseProbe(),
                          tol: float = PHASE_TOL) -> tuple:
    """Open-path phase for each gauge choice over the same path.

    Returns one row per gauge.  The transverse part is identical across
    rows and pairwise phase differences equal the charge times the endpoint
    difference of the gauge-function difference; both facts are verified
    before returning.
    """
    if path.is_closed:
        raise ValueError("gauge dependence scan expects an open path")
    rows = []
    endpoint_diffs = []
    for g in gauges:
        rep = open_path_phase(replace(probe, gauge=g), path, tol=tol)
        rows.append(GaugeScanRow(gauge_id=gauge_label(g), phase=rep.phase,
                                 transverse_part=rep.transverse_part,
                                 gauge_part=rep.gauge_part))
        endpoint_diffs.append(0.0 if g is None
                              else _gauge_endpoint_difference(g, path))

    tps = [r.transverse_part for r in rows]
    assert max(tps) - min(tps) < 1e-10, "transverse parts must agree across gauges"
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            expected = probe.e * (endpoint_diffs[i] - endpoint_diffs[j])
            assert abs((rows[i].phase - rows[j].phase) - expected) < 1e-8, \
                "phase differences must match gauge endpoint shifts"
    return tuple(rows)


# ---------------------------------------------------------------------------
# Interaction energies
# ---------------------------------------------------------------------------

INTERACTION_MODELS = ("boyer", "virtual_photon")


def interaction_energy(model: str, sample: VelocitySample, s: SolenoidSpec,
                       e: float = 1.0) -> float:
    """Interaction energy of a moving charge with the solenoid current.

    The magnetostatic overlap route gives +e v . A at the charge's position;
    the photon-exchange route gives the same magnitude with opposite sign.
    """
    a = solenoid_transverse_potential(sample.position, s)
    base = e * float(np.dot(np.asarray(sample.v), a))
    if model == "boyer":
        return base
    if model == "virtual_photon":
        return -base
    raise ValueError(f"unknown interaction model {model!r}; "
                     f"expected one of {INTERACTION_MODELS}")


def energy_cancellation(sample: VelocitySample, s: SolenoidSpec,
                        e: float = 1.0) -> float:
    """Sum of the two interaction energies; identically zero."""
    return (interaction_energy("boyer", sample, s, e)
            + interaction_energy("virtual_photon", sample, s, e))
