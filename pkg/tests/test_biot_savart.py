import math

import numpy as np
import pytest

from abgauge import (NumericBiotSavartField, QuadratureConfig, SolenoidSpec,
                     line_integral, numeric_b_field, numeric_potential,
                     solenoid_transverse_potential)
from abgauge.errors import NonConvergent, TooCloseToShell
from abgauge.geometry import PathSpec

S = SolenoidSpec(1.0, 1.0)
CFG = QuadratureConfig(n_phi=64, n_z=64, half_lengths=(8, 16, 32, 64))


def rel_error(value, exact):
    return float(np.max(np.abs(value - exact)) / np.max(np.abs(exact)))


class TestConfig:
    def test_order_floor(self):
        with pytest.raises(ValueError):
            QuadratureConfig(n_phi=4)

    def test_half_lengths_ascending(self):
        with pytest.raises(ValueError):
            QuadratureConfig(half_lengths=(16, 8))

    def test_half_lengths_minimum(self):
        with pytest.raises(ValueError):
            QuadratureConfig(half_lengths=(2, 8))

    def test_extrapolation_values(self):
        with pytest.raises(ValueError):
            QuadratureConfig(extrapolation="pade")


class TestNumericPotential:
    def test_exterior_point_matches_closed_form(self):
        r = numeric_potential((2, 0, 0), S, CFG)
        assert rel_error(r.value, (0, 0.25, 0)) < 1e-4

    def test_interior_point_matches_closed_form(self):
        r = numeric_potential((0.5, 0, 0), S, CFG)
        assert rel_error(r.value, (0, 0.25, 0)) < 1e-4

    def test_on_axis_vanishes(self):
        r = numeric_potential((0, 0, 7), S, CFG)
        assert float(np.max(np.abs(r.value))) < 1e-6

    def test_transverse_components_vanish(self):
        # Radial and axial components are zero up to the error estimate.
        r = numeric_potential((1.7, 0.9, 0.4), S, CFG)
        rho_hat = np.array([1.7, 0.9, 0.0]) / math.hypot(1.7, 0.9)
        assert abs(float(np.dot(r.value, rho_hat))) <= max(r.error_estimate, 1e-9)
        assert r.value[2] == 0.0

    def test_error_estimate_brackets_true_error(self):
        p = (2, 0, 0.3)
        exact = solenoid_transverse_potential(p, S)
        r = numeric_potential(p, S, CFG)
        assert float(np.max(np.abs(r.value - exact))) < 10 * r.error_estimate + 1e-12

    def test_shell_band_rejected(self):
        with pytest.raises(TooCloseToShell):
            numeric_potential((1.0005, 0, 0), S, CFG)

    def test_per_length_values_recorded(self):
        r = numeric_potential((2, 0, 0), S, CFG)
        assert len(r.per_length) == 4
        assert r.half_lengths == (8, 16, 32, 64)

    def test_monotone_guard_triggers_on_corrupted_sequence(self):
        from abgauge.biot_savart import _check_monotone_approach
        good = [np.array([0.0, 0.1, 0.0]), np.array([0.0, 0.01, 0.0])]
        _check_monotone_approach(good, np.zeros(3))
        bad = [np.array([0.0, 0.01, 0.0]), np.array([0.0, 0.1, 0.0])]
        with pytest.raises(NonConvergent):
            _check_monotone_approach(bad, np.zeros(3))

    def test_extrapolation_none_returns_last(self):
        cfg = QuadratureConfig(n_phi=32, n_z=32, half_lengths=(8, 16),
                               extrapolation="none")
        r = numeric_potential((2, 0, 0), S, cfg)
        assert np.all(r.value == r.per_length[-1])


class TestTruncationDecay:
    def test_truncation_error_scales_as_inverse_square(self):
        # Distances to the closed form should drop ~4x per half-length doubling.
        p = (2, 0, 0)
        exact = solenoid_transverse_potential(p, S)
        r = numeric_potential(p, S, CFG)
        dists = [float(np.max(np.abs(v - exact))) for v in r.per_length]
        for a, b in zip(dists, dists[1:]):
            assert 3.0 < a / b < 5.0

    def test_quadrature_order_convergence(self):
        # At fixed truncation, doubling both orders cuts the quadrature error
        # at least 4x until the truncation floor for that half-length.
        p = (1.1, 0, 0.3)
        exact = solenoid_transverse_potential(p, S)
        errs = {}
        for n in (8, 16, 32, 64):
            cfg = QuadratureConfig(n_phi=n, n_z=n, half_lengths=(64.0,),
                                   extrapolation="none")
            v = numeric_potential(p, S, cfg).per_length[0]
            errs[n] = float(np.max(np.abs(v - exact)))
        floor = errs[64]
        for n in (8, 16, 32):
            assert errs[2 * n] <= max(errs[n] / 4.0, floor * 1.05)
        # The first doubling must show a real quadrature improvement.
        assert errs[8] > floor * 1.05

    def test_pure_quadrature_error_cascade(self):
        p = (1.1, 0, 0.3)
        ref_cfg = QuadratureConfig(n_phi=128, n_z=128, half_lengths=(16.0,),
                                   extrapolation="none")
        ref = numeric_potential(p, S, ref_cfg).per_length[0]
        prev = None
        for n in (8, 16, 32):
            cfg = QuadratureConfig(n_phi=n, n_z=n, half_lengths=(16.0,),
                                   extrapolation="none")
            err = float(np.max(np.abs(numeric_potential(p, S, cfg).per_length[0] - ref)))
            if prev is not None and prev > 1e-13:
                assert err <= prev / 4.0 or err < 1e-13
            prev = err


class TestAzimuthalSymmetry:
    def test_rotated_points_related_by_rotation(self):
        delta = 0.7
        a = numeric_potential((3.0, 0, 0.2), S, CFG).value
        b = numeric_potential((3.0 * math.cos(delta), 3.0 * math.sin(delta), 0.2),
                              S, CFG).value
        rot = np.array([[math.cos(delta), -math.sin(delta), 0],
                        [math.sin(delta), math.cos(delta), 0],
                        [0, 0, 1]])
        assert np.allclose(rot @ a, b, atol=1e-10)


class TestNumericBField:
    def test_interior_field(self):
        b = numeric_b_field((0.5, 0, 0), S, CFG, h=1e-2)
        assert np.allclose(b, (0, 0, 1), atol=1e-3)

    def test_exterior_field(self):
        b = numeric_b_field((3, 0, 0), S, CFG, h=1e-2)
        assert np.allclose(b, (0, 0, 0), atol=1e-3)

    def test_z_invariance(self):
        b1 = numeric_b_field((0.5, 0, 0), S, CFG, h=1e-2)
        b2 = numeric_b_field((0.5, 0, 4), S, CFG, h=1e-2)
        assert np.allclose(b1, b2, atol=2e-3)

    def test_stencil_near_shell_rejected(self):
        with pytest.raises(TooCloseToShell):
            numeric_b_field((1.02, 0, 0), S, CFG, h=1e-2)


class TestGaugeInvariantChain:
    def test_circulation_of_numeric_potential_equals_flux(self):
        # Quadrature output alone, integrated around an enclosing loop,
        # reproduces the flux without touching the closed form.
        cfg = QuadratureConfig(n_phi=32, n_z=32, half_lengths=(8, 16, 32))
        f = NumericBiotSavartField(S, cfg)
        rep = line_integral(f, PathSpec.circle((0, 0, 0), 2.0), tol=1e-4)
        assert abs(rep.value - math.pi) / math.pi < 1e-3
