import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abgauge import (BawinBurnelGauge, GaugeGradientField, LandauField,
                     SingularSolenoidGauge, SolenoidSpec,
                     SolenoidTransverseField, StringCurrent, StringField,
                     SurfaceCurrent, gauge_gradient, gauge_value, landau_link1,
                     landau_potential, solenoid_b_field,
                     solenoid_transverse_potential, string_flux,
                     system_delta_sources, transformed_potential)
from abgauge.errors import AxisCrossing, OnShell

from helpers import fd_gradient

S = SolenoidSpec(R=1.0, B=1.0)
PI = math.pi


class TestSolenoidSpec:
    def test_flux_identity(self):
        assert SolenoidSpec(2.0, 3.0).flux == pytest.approx(12 * PI, rel=1e-15)

    def test_radius_validation(self):
        with pytest.raises(ValueError):
            SolenoidSpec(R=-1.0)


class TestTransversePotential:
    def test_interior_branch(self):
        assert np.allclose(solenoid_transverse_potential((0.5, 0, 0), S),
                           (0, 0.25, 0), atol=1e-15)

    def test_exterior_branch(self):
        assert np.allclose(solenoid_transverse_potential((2, 0, 0), S),
                           (0, 0.25, 0), atol=1e-15)

    def test_on_axis(self):
        assert np.allclose(solenoid_transverse_potential((0, 0, 5), S),
                           (0, 0, 0), atol=1e-15)

    def test_branches_meet_on_shell(self):
        inner = S.flux / (2 * PI) * (1.0 - 1e-14) / S.R ** 2
        outer = S.flux / (2 * PI) / (1.0 + 1e-14)
        assert inner == pytest.approx(outer, abs=1e-12)

    @given(st.floats(0.05, 5).filter(lambda r: abs(r - 1) > 1e-3),
           st.floats(-math.pi, math.pi), st.floats(-3, 3))
    def test_azimuthal_direction(self, rho, phi, z):
        p = (rho * math.cos(phi), rho * math.sin(phi), z)
        a = solenoid_transverse_potential(p, S)
        # Tangential: no radial or axial component.
        assert abs(a[0] * p[0] + a[1] * p[1]) < 1e-12
        assert a[2] == 0.0


class TestBField:
    def test_inside(self):
        assert np.allclose(solenoid_b_field((0.5, 0, 0), S), (0, 0, 1))

    def test_outside(self):
        assert np.allclose(solenoid_b_field((2, 0, 0), S), (0, 0, 0))

    def test_z_translation_invariance(self):
        assert np.allclose(solenoid_b_field((0, 0, -3), S), (0, 0, 1))

    def test_on_shell_rejected(self):
        with pytest.raises(OnShell):
            solenoid_b_field((1.0, 0, 0), S)


class TestGaugeValues:
    def test_singular_zero_azimuth(self):
        g = SingularSolenoidGauge(S)
        assert gauge_value(g, (1, 0, 0), azimuth=0.0) == 0.0

    def test_singular_full_winding(self):
        g = SingularSolenoidGauge(S)
        assert gauge_value(g, (1, 0, 0), azimuth=2 * PI) == pytest.approx(-PI, abs=1e-15)

    def test_landau_link1_value(self):
        assert gauge_value(landau_link1(1.0), (3, 2, 0)) == pytest.approx(3.0)

    def test_singular_axis_rejected(self):
        with pytest.raises(AxisCrossing):
            gauge_value(SingularSolenoidGauge(S), (0, 0, 0))


class TestGaugeGradients:
    def test_singular_gradient(self):
        g = SingularSolenoidGauge(S)
        assert np.allclose(gauge_gradient(g, (2, 0, 0)), (0, -0.25, 0), atol=1e-15)

    def test_landau_link1_gradient(self):
        assert np.allclose(gauge_gradient(landau_link1(1.0), (3, 2, 0)),
                           (1.0, 1.5, 0.0), atol=1e-15)

    def test_bawin_burnel_gradient_against_fd_oracle(self):
        # Oracle: central differences of the gauge value with the branch
        # frozen by passing the continued azimuth explicitly.
        bb = BawinBurnelGauge(1.0)
        p = np.array([1.0, 0.0, 0.0])

        def chi(q):
            return gauge_value(bb, q, azimuth=math.atan2(q[1], q[0]))

        oracle = fd_gradient(chi, p, h=1e-6)
        closed = gauge_gradient(bb, p, azimuth=0.0)
        assert np.allclose(closed, oracle, atol=1e-9)
        assert np.allclose(closed, (0.0, -0.5, 0.0), atol=1e-12)

    def test_bawin_burnel_gradient_off_zero_azimuth(self):
        bb = BawinBurnelGauge(0.7)
        p = np.array([0.8, 1.1, 0.4])
        az = math.atan2(p[1], p[0])

        def chi(q):
            return gauge_value(bb, q, azimuth=math.atan2(q[1], q[0]))

        assert np.allclose(gauge_gradient(bb, p, azimuth=az),
                           fd_gradient(chi, p, h=1e-6), atol=1e-8)

    def test_singular_gradient_matches_fd_of_branch(self):
        g = SingularSolenoidGauge(S)
        p = np.array([0.4, 0.9, -1.0])

        def chi(q):
            return gauge_value(g, q, azimuth=math.atan2(q[1], q[0]))

        assert np.allclose(gauge_gradient(g, p), fd_gradient(chi, p, h=1e-6),
                           atol=1e-9)


class TestTransformedPotential:
    def test_exterior_vanishes_exactly(self):
        assert np.all(transformed_potential((2, 0, 0), S) == 0.0)

    def test_interior_value(self):
        assert np.allclose(transformed_potential((0.5, 0, 0), S),
                           (0, -0.75, 0), atol=1e-15)

    def test_equals_sum_of_potential_and_gradient(self):
        p = (0.3, 0.4, 1.0)
        direct = transformed_potential(p, S)
        summed = (solenoid_transverse_potential(p, S)
                  + gauge_gradient(SingularSolenoidGauge(S), p))
        assert np.allclose(direct, summed, atol=1e-12)

    def test_axis_rejected(self):
        with pytest.raises(AxisCrossing):
            transformed_potential((0, 0, 0), S)


class TestLandauPotentials:
    def test_l1(self):
        assert np.allclose(landau_potential("L1", (3, 2, 0)), (-2, 0, 0))

    def test_symmetric(self):
        assert np.allclose(landau_potential("S", (3, 2, 0)), (-1, 1.5, 0))

    def test_l2(self):
        assert np.allclose(landau_potential("L2", (3, 2, 0)), (0, 3, 0))

    def test_gauge_link_identity_at_point(self):
        p = (3, 2, 0)
        diff = landau_potential("S", p) - landau_potential("L1", p)
        assert np.allclose(diff, gauge_gradient(landau_link1(1.0), p), atol=1e-15)

    def test_bawin_burnel_from_symmetric(self):
        p = np.array([0.9, 0.4, 0.0])
        az = math.atan2(p[1], p[0])
        built = (landau_potential("S", p)
                 + gauge_gradient(BawinBurnelGauge(1.0), p, azimuth=az))
        assert np.allclose(built, landau_potential("BB", p, azimuth=az), atol=1e-14)

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            landau_potential("L3", (1, 0, 0))


class TestStringDescriptors:
    def test_string_flux_default(self):
        assert string_flux(S) == pytest.approx(-PI, abs=1e-15)

    def test_string_flux_scales_with_geometry(self):
        assert string_flux(SolenoidSpec(2, 3)) == pytest.approx(-12 * PI)

    @given(st.floats(0.1, 5))
    def test_string_flux_linear_in_strength(self, b):
        assert string_flux(SolenoidSpec(1.0, 2 * b)) == pytest.approx(
            2 * string_flux(SolenoidSpec(1.0, b)), rel=1e-12)

    def test_delta_ledgers(self):
        original = system_delta_sources(S, gauge_transformed=False)
        transformed = system_delta_sources(S, gauge_transformed=True)
        assert any(isinstance(d, SurfaceCurrent) for d in original)
        assert not any(isinstance(d, StringCurrent) for d in original)
        assert not any(isinstance(d, StringField) for d in original)
        assert any(isinstance(d, StringCurrent) for d in transformed)
        assert any(isinstance(d, StringField) for d in transformed)


class TestFieldExprAlgebra:
    def test_sum_and_scale(self):
        f = SolenoidTransverseField(S)
        g = 2.0 * f + (-1.0) * f
        p = (0.7, 0.2, 0.1)
        assert np.allclose(g(p), f(p), atol=1e-15)

    def test_domain_metadata_propagates(self):
        f = SolenoidTransverseField(S) + GaugeGradientField(SingularSolenoidGauge(S))
        assert f.excludes_axis
        assert not f.domain_ok((0, 0, 0))
        assert f.domain_ok((2, 0, 0))

    def test_branch_cut_metadata(self):
        bb = LandauField("BB", 1.0)
        assert bb.branch_cut
        assert not bb.domain_ok((-1.0, 0.0, 0.0), margin=1e-6)
        assert bb.domain_ok((1.0, 0.0, 0.0))
