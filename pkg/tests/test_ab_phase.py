import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abgauge import (LandauField, LoopSpec, PathSpec, PhaseProbe, Point,
                     PolynomialGauge, SingularSolenoidGauge, SolenoidSpec,
                     SolenoidTransverseField, VelocitySample,
                     energy_cancellation, gauge_dependence_scan, gauge_value,
                     interaction_energy, interference_shift, landau_link1,
                     landau_link2, loop_phase, open_path_phase)
from abgauge.errors import EndpointMismatch

from helpers import random_polynomial_gauge, simpson_path_integral

S = SolenoidSpec(1.0, 1.0)
PI = math.pi
HALF_CIRCLE = PathSpec.arc((0, 0, 0), 2.0, 0.0, PI)


def assert_split_consistent(report):
    assert abs(report.phase - report.transverse_part - report.gauge_part) < 1e-10


class TestOpenPathPhase:
    def test_bare_half_circle_transverse(self):
        # Oracle: Simpson quadrature of the transverse potential on the arc.
        probe = PhaseProbe(solenoid=S)
        rep = open_path_phase(probe, HALF_CIRCLE)
        oracle = simpson_path_integral(SolenoidTransverseField(S), HALF_CIRCLE)
        assert oracle == pytest.approx(PI / 2, abs=1e-9)
        assert rep.transverse_part == pytest.approx(PI / 2, abs=1e-8)
        assert_split_consistent(rep)

    def test_regular_gauge_endpoint_values(self):
        probe = PhaseProbe(solenoid=S, gauge=PolynomialGauge(((1, 1, 0, 1.0),),
                                                             name="xy"))
        rep = open_path_phase(probe, HALF_CIRCLE)
        # chi = x y vanishes at both endpoints of the half circle.
        assert rep.gauge_part == pytest.approx(0.0, abs=1e-12)
        assert rep.phase == pytest.approx(rep.transverse_part, abs=1e-9)
        assert_split_consistent(rep)

    def test_singular_gauge_cancels_exterior_phase(self):
        probe = PhaseProbe(solenoid=S, gauge=SingularSolenoidGauge(S))
        rep = open_path_phase(probe, HALF_CIRCLE)
        assert rep.gauge_part == pytest.approx(-PI / 2, abs=1e-10)
        assert rep.phase == pytest.approx(0.0, abs=1e-8)
        assert rep.singular_gauge
        assert_split_consistent(rep)

    def test_charge_scales_phase(self):
        probe = PhaseProbe(solenoid=S, e=-2.0)
        rep = open_path_phase(probe, HALF_CIRCLE)
        assert rep.phase == pytest.approx(-PI, abs=1e-8)


class TestLoopPhase:
    def test_bare_loop(self):
        rep = loop_phase(PhaseProbe(solenoid=S), LoopSpec.circle((0, 0, 0), 2.0))
        assert rep.phase == pytest.approx(PI, abs=1e-8)
        assert rep.winding == 1

    def test_regular_gauge_leaves_loop_phase(self):
        probe = PhaseProbe(solenoid=S, gauge=PolynomialGauge(((2, 1, 0, 1.0),),
                                                             name="x2y"))
        rep = loop_phase(probe, LoopSpec.circle((0, 0, 0), 2.0))
        assert rep.phase == pytest.approx(PI, abs=1e-8)
        assert rep.gauge_part == pytest.approx(0.0, abs=1e-10)
        assert_split_consistent(rep)

    def test_singular_gauge_expels_loop_phase(self):
        probe = PhaseProbe(solenoid=S, gauge=SingularSolenoidGauge(S))
        rep = loop_phase(probe, LoopSpec.circle((0, 0, 0), 2.0))
        assert rep.phase == pytest.approx(0.0, abs=1e-8)
        assert rep.singular_gauge
        assert rep.notes
        assert rep.gauge_part == pytest.approx(-PI, abs=1e-10)
        assert_split_consistent(rep)

    def test_winding_two(self):
        rep = loop_phase(PhaseProbe(solenoid=S),
                         LoopSpec.circle((0, 0, 0), 2.0, turns=2))
        assert rep.phase == pytest.approx(2 * PI, abs=1e-8)
        assert rep.winding == 2

    def test_gauge_invariance_random_gauges_and_windings(self, rng):
        # 10 random smooth gauges, loops of winding -2..2.
        gauges = [random_polynomial_gauge(rng) for _ in range(10)]
        for w in (-2, -1, 1, 2):
            loop = LoopSpec.circle((0, 0, 0), 2.0, turns=w)
            for g in gauges[:3] if w != 1 else gauges:
                rep = loop_phase(PhaseProbe(solenoid=S, gauge=g), loop)
                assert abs(rep.phase - w * PI) < 1e-7

    def test_landau_base_field_loop(self):
        square = LoopSpec(PathSpec.polyline([(0, 0, 0), (1, 0, 0), (1, 1, 0),
                                             (0, 1, 0), (0, 0, 0)]))
        phases = []
        for variant in ("S", "L1", "L2"):
            probe = PhaseProbe(base_field=LandauField(variant, 1.0))
            phases.append(loop_phase(probe, square).phase)
        assert all(p == pytest.approx(1.0, abs=1e-8) for p in phases)
        assert max(phases) - min(phases) < 1e-8


class TestInterference:
    def test_upper_minus_lower_encloses_flux(self):
        c1 = PathSpec.arc((0, 0, 0), 2.0, 0.0, PI)
        c2 = PathSpec.arc((0, 0, 0), 2.0, 0.0, -PI)
        rep = interference_shift(PhaseProbe(solenoid=S), c1, c2)
        assert rep.phase == pytest.approx(PI, abs=1e-8)

    def test_matches_loop_over_difference(self):
        c1 = PathSpec.arc((0, 0, 0), 2.0, 0.0, PI)
        c2 = PathSpec.arc((0, 0, 0), 2.0, 0.0, -PI)
        shift = interference_shift(PhaseProbe(solenoid=S), c1, c2).phase
        loop = LoopSpec(PathSpec.concat(c1, c2.reverse()))
        assert shift == pytest.approx(loop_phase(PhaseProbe(solenoid=S), loop).phase,
                                      abs=1e-9)

    def test_identical_arms_cancel_exactly(self):
        c = PathSpec.arc((0, 0, 0), 2.0, 0.0, 1.0)
        rep = interference_shift(PhaseProbe(solenoid=S), c, c)
        assert rep.phase == 0.0

    def test_non_enclosing_arms(self):
        # Both arms stay in the half-plane x > 1.5 where the potential is
        # curl free; oracle: Simpson quadrature of both arms.
        a = PathSpec.segment((2, -1, 0), (2, 1, 0))
        b = PathSpec.polyline([(2, -1, 0), (3, 0, 0), (2, 1, 0)])
        rep = interference_shift(PhaseProbe(solenoid=S), a, b)
        f = SolenoidTransverseField(S)
        oracle = simpson_path_integral(f, a) - simpson_path_integral(f, b)
        assert oracle == pytest.approx(0.0, abs=1e-9)
        assert rep.phase == pytest.approx(0.0, abs=1e-8)

    def test_gauge_part_cancels_for_regular_gauge(self):
        g = PolynomialGauge(((1, 0, 0, 0.6), (0, 1, 1, -0.3)), name="mix")
        c1 = PathSpec.arc((0, 0, 0), 2.0, 0.0, PI)
        c2 = PathSpec.arc((0, 0, 0), 2.0, 0.0, -PI)
        rep = interference_shift(PhaseProbe(solenoid=S, gauge=g), c1, c2)
        assert rep.gauge_part == pytest.approx(0.0, abs=1e-10)

    def test_endpoint_mismatch_rejected(self):
        c1 = PathSpec.segment((2, 0, 0), (3, 0, 0))
        c2 = PathSpec.segment((2, 0, 0), (3, 0.5, 0))
        with pytest.raises(EndpointMismatch):
            interference_shift(PhaseProbe(solenoid=S), c1, c2)


class TestGaugeScan:
    def test_segment_scan_matches_endpoint_arithmetic(self):
        path = PathSpec.segment((2, 0, 0), (3, 0, 0))
        gauges = [None,
                  PolynomialGauge(((1, 1, 0, 1.0),), name="xy"),
                  PolynomialGauge(((1, 0, 0, 1.0),), name="x")]
        rows = gauge_dependence_scan(path, gauges, PhaseProbe(solenoid=S))
        assert [r.gauge_id for r in rows] == ["none", "xy", "x"]
        assert rows[0].phase == pytest.approx(0.0, abs=1e-10)
        assert rows[1].phase == pytest.approx(0.0, abs=1e-10)
        assert rows[2].phase == pytest.approx(1.0, abs=1e-8)

    def test_single_gauge_row(self):
        rows = gauge_dependence_scan(PathSpec.segment((2, 0, 0), (2, 1, 0)),
                                     [None], PhaseProbe(solenoid=S))
        assert len(rows) == 1

    def test_exterior_arc_with_singular_gauge(self):
        arc = PathSpec.arc((0, 0, 0), 2.0, 0.0, PI / 4)
        rows = gauge_dependence_scan(arc, [None, SingularSolenoidGauge(S)],
                                     PhaseProbe(solenoid=S))
        assert rows[1].phase - rows[0].phase == pytest.approx(-PI / 8, abs=1e-8)
        assert abs(rows[1].transverse_part - rows[0].transverse_part) < 1e-10

    def test_closed_path_rejected(self):
        with pytest.raises(ValueError):
            gauge_dependence_scan(PathSpec.circle((0, 0, 0), 2.0), [None],
                                  PhaseProbe(solenoid=S))

    def test_pairwise_differences_for_random_gauges(self, rng):
        path = PathSpec.polyline([(2, 0, 0), (2.5, 1, 0.5), (1.5, 2, 0)])
        gauges = [random_polynomial_gauge(rng) for _ in range(4)]
        rows = gauge_dependence_scan(path, gauges, PhaseProbe(solenoid=S))
        start, end = path.point_at(0.0), path.point_at(1.0)
        for i in range(4):
            for j in range(4):
                expected = ((gauge_value(gauges[i], end) - gauge_value(gauges[i], start))
                            - (gauge_value(gauges[j], end) - gauge_value(gauges[j], start)))
                assert rows[i].phase - rows[j].phase == pytest.approx(expected, abs=1e-8)


class TestReparametrization:
    def test_phase_ignores_traversal_speed(self):
        base = PathSpec.arc((0, 0, 0), 2.0, 0.0, 2.2)
        cubed = PathSpec.parametric(
            lambda t: base.point_at(t ** 3),
            lambda t: 3.0 * t ** 2 * base.velocity_at(t ** 3))
        probe = PhaseProbe(solenoid=S)
        p1 = open_path_phase(probe, base, tol=1e-12)
        p2 = open_path_phase(probe, cubed, tol=1e-12)
        assert p1.phase == pytest.approx(p2.phase, abs=1e-9)


class TestLandauCrossCheck:
    def test_open_phases_differ_by_link_endpoint_shifts(self):
        path = PathSpec.segment((0.2, 0.1, 0), (1.4, 0.9, 0))
        start, end = path.point_at(0.0), path.point_at(1.0)
        rep_s = open_path_phase(PhaseProbe(base_field=LandauField("S", 1.0)), path)
        rep_1 = open_path_phase(PhaseProbe(base_field=LandauField("L1", 1.0)), path)
        rep_2 = open_path_phase(PhaseProbe(base_field=LandauField("L2", 1.0)), path)
        chi1, chi2 = landau_link1(1.0), landau_link2(1.0)
        d1 = gauge_value(chi1, end) - gauge_value(chi1, start)
        d2 = gauge_value(chi2, end) - gauge_value(chi2, start)
        assert rep_s.phase - rep_1.phase == pytest.approx(d1, abs=1e-9)
        assert rep_s.phase - rep_2.phase == pytest.approx(d2, abs=1e-9)


class TestInteractionEnergy:
    def test_spot_values(self):
        sample = VelocitySample((0, 0.1, 0), Point(2, 0, 0))
        assert interaction_energy("boyer", sample, S) == pytest.approx(0.025)
        assert interaction_energy("virtual_photon", sample, S) == pytest.approx(-0.025)

    def test_radial_velocity_orthogonal(self):
        sample = VelocitySample((0.1, 0, 0), Point(2, 0, 0))
        assert interaction_energy("boyer", sample, S) == 0.0
        assert interaction_energy("virtual_photon", sample, S) == 0.0

    def test_cancellation_exact(self):
        for v, x in [((0, 0.1, 0), (2, 0, 0)),
                     ((0.05, 0.05, 0), (1.3, 0.7, 2)),
                     ((-0.2, 0.1, 0.3), (0.4, -0.8, 1))]:
            sample = VelocitySample(v, Point(*x))
            assert energy_cancellation(sample, S) == 0.0
            assert energy_cancellation(sample, S, e=-1.0) == 0.0

    @given(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5),
           st.floats(0.2, 4), st.floats(-3, 3))
    def test_cancellation_property(self, vx, vy, x, z):
        sample = VelocitySample((vx, vy, 0.0), Point(x, 0.4, z))
        assert energy_cancellation(sample, S) == 0.0

    def test_unknown_model(self):
        with pytest.raises(ValueError):
            interaction_energy("classical", VelocitySample((0, 0, 0), Point(1, 0, 0)), S)

    def test_speed_limit(self):
        with pytest.raises(ValueError):
            VelocitySample((1.5, 0, 0), Point(1, 0, 0))

    def test_charge_required_nonzero(self):
        with pytest.raises(ValueError):
            PhaseProbe(solenoid=S, e=0.0)
