"""Profile construction, evaluation, windows and shape geometry."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qscatter import (
    NumericsConfig,
    PotentialProfile,
    ProfileShape,
    delta_as_rectangle,
    effective_barrier_height,
    evaluate,
    free_profile,
    integration_window,
    mirror,
)
from qscatter.errors import NonEvaluableProfileError, WindowCapError

CFG = NumericsConfig()


def composite(v_w=10.0, d=5.0, w_w=5.0, kind="rectangular", v_b=11.5):
    well = ProfileShape(kind, w_w) if v_w > 0 else None
    return PotentialProfile(
        family="finite_composite", v_w=v_w, v_b=v_b, d=d,
        well_shape=well, barrier_shape="x_gauss",
    )


class TestEvaluate:
    def test_rectangular_well_center(self):
        p = composite()
        assert evaluate(p, -7.5) == pytest.approx(-10.0, abs=0.0)

    def test_continuous_is_zero_at_origin(self):
        p = PotentialProfile(family="continuous_joined", v_w=7.0, v_b=3.0,
                             barrier_shape="x_gauss")
        assert evaluate(p, 0.0) == 0.0

    def test_single_smooth_at_origin(self):
        p = PotentialProfile(family="single_smooth", v_w=1.0, v_b=5.0, d=3.0,
                             barrier_shape="gauss")
        assert evaluate(p, 0.0) == pytest.approx(5.0 - math.exp(-9.0), rel=1e-12)

    def test_delta_pair_not_evaluable(self):
        p = PotentialProfile(family="delta_pair", v_w=1.0, v_b=5.0, d=3.0)
        with pytest.raises(NonEvaluableProfileError):
            evaluate(p, 0.5)

    def test_gap_is_exactly_zero(self):
        p = composite()
        xs = np.linspace(-4.999, -0.001, 57)
        assert np.all(evaluate(p, xs) == 0.0)

    def test_zero_left_of_well_support(self):
        p = composite()
        assert np.all(evaluate(p, np.array([-10.001, -50.0])) == 0.0)

    def test_free_is_zero_everywhere(self):
        assert np.all(evaluate(free_profile(), np.linspace(-9, 9, 33)) == 0.0)

    def test_continuity_audit(self):
        eps = 1e-12
        cont = PotentialProfile(family="continuous_joined", v_w=9.0, v_b=4.0,
                                barrier_shape="x_gauss")
        assert abs(evaluate(cont, eps) - evaluate(cont, -eps)) < 1e-10
        disc = PotentialProfile(family="discontinuous_joined", v_w=9.0, v_b=4.0,
                                barrier_shape="gauss")
        jump = evaluate(disc, eps) - evaluate(disc, -eps)
        assert jump == pytest.approx((9.0 + 4.0) * 1.0, rel=1e-9)

    def test_well_and_barrier_signs(self):
        disc = PotentialProfile(family="discontinuous_joined", v_w=15.0, v_b=5.0,
                                barrier_shape="gauss")
        assert evaluate(disc, -0.3) < 0 < evaluate(disc, 0.3)
        cont = PotentialProfile(family="continuous_joined", v_w=15.0, v_b=5.0,
                                barrier_shape="x_gauss")
        assert evaluate(cont, -0.7) < 0 < evaluate(cont, 0.7)


class TestProfileShape:
    @pytest.mark.parametrize("kind", ["rectangular", "parabolic", "triangular",
                                      "gaussian", "exponential"])
    def test_unit_height_and_range(self, kind):
        s = ProfileShape(kind, 2.0)
        assert s.value(0.0) == 1.0
        u = np.linspace(-s.support_half, s.support_half, 401)
        v = s.value(u)
        assert np.all((v >= 0.0) & (v <= 1.0))

    @pytest.mark.parametrize("kind", ["rectangular", "parabolic", "triangular"])
    def test_compact_support_is_width(self, kind):
        s = ProfileShape(kind, 3.0)
        assert s.support_half == 1.5
        assert s.value(1.5001) == 0.0

    def test_invalid_shape_rejected(self):
        with pytest.raises(ValueError):
            ProfileShape("sinusoidal", 1.0)
        with pytest.raises(ValueError):
            ProfileShape("rectangular", 0.0)


class TestValidation:
    def test_unknown_family(self):
        with pytest.raises(ValueError):
            PotentialProfile(family="harmonic")

    def test_negative_strengths(self):
        with pytest.raises(ValueError):
            PotentialProfile(family="delta_pair", v_w=-1.0, v_b=5.0)
        with pytest.raises(ValueError):
            PotentialProfile(family="delta_pair", v_w=1.0, v_b=5.0, d=-2.0)

    def test_composite_needs_well_shape(self):
        with pytest.raises(ValueError):
            PotentialProfile(family="finite_composite", v_w=10.0, v_b=11.5)

    def test_joined_forms_checked(self):
        with pytest.raises(ValueError):
            PotentialProfile(family="continuous_joined", v_w=1.0, v_b=1.0,
                             barrier_shape="gauss")  # even form for odd family
        with pytest.raises(ValueError):
            PotentialProfile(family="discontinuous_joined", v_w=1.0, v_b=1.0,
                             barrier_shape="x_gauss")


class TestDeltaAsRectangle:
    def test_height_and_area(self):
        p = delta_as_rectangle(5.0, 0.1)
        assert evaluate(p, 0.05) == pytest.approx(50.0, rel=1e-14)
        assert evaluate(p, 0.11) == 0.0

    @given(strength=st.floats(0.01, 50.0), width=st.floats(1e-3, 2.0))
    @settings(max_examples=60, deadline=None)
    def test_area_preserved(self, strength, width):
        p = delta_as_rectangle(strength, width)
        xs = np.linspace(0.0, width, 20001)
        area = np.trapezoid(evaluate(p, xs), xs)
        assert area == pytest.approx(strength, rel=1e-12)

    def test_zero_strength_is_zero_profile(self):
        p = delta_as_rectangle(0.0, 0.5)
        assert np.all(evaluate(p, np.linspace(-1, 1, 41)) == 0.0)

    def test_bad_width(self):
        with pytest.raises(ValueError):
            delta_as_rectangle(5.0, 0.0)


class TestMirror:
    @given(x=st.floats(-8.0, 8.0))
    @settings(max_examples=80, deadline=None)
    def test_mirror_evaluation(self, x):
        p = PotentialProfile(family="single_smooth", v_w=3.0, v_b=5.0, d=2.0,
                             barrier_shape="gauss")
        assert evaluate(mirror(p), x) == evaluate(p, -x)

    def test_mirror_involution(self):
        p = composite()
        assert mirror(mirror(p)) == p


class TestIntegrationWindow:
    def test_free_degenerate(self):
        assert integration_window(free_profile(), CFG) == (0.0, 0.0)

    def test_single_smooth_right_edge(self):
        # Barrier tail 5 e^{-x^2} must fall below tail_epsilon * max|V|;
        # the well is 1 deep so max|V| = 5 and the cut solves e^{-D^2} = 1e-8.
        p = PotentialProfile(family="single_smooth", v_w=1.0, v_b=5.0, d=3.0,
                             barrier_shape="gauss")
        _, x_right = integration_window(p, CFG)
        d_exact = math.sqrt(math.log(1e8))
        assert abs(x_right - d_exact) <= 2 * CFG.h
        assert abs(evaluate(p, x_right)) < CFG.tail_epsilon * 5.0

    def test_composite_smooth_tail_edge(self):
        # Root of v_b * x e^{-x^2} = tail_epsilon * v_m beyond the maximum.
        from scipy.optimize import brentq

        p = composite(v_w=0.0)
        _, x_right = integration_window(p, CFG)
        v_m = effective_barrier_height(p, CFG)
        root = brentq(
            lambda x: 11.5 * x * math.exp(-x * x) - CFG.tail_epsilon * v_m,
            1.0, 10.0,
        )
        assert abs(x_right - root) <= 2 * CFG.h

    def test_asymmetric_sides_for_deep_well(self):
        # A much deeper well pushes the left cut farther out than the right.
        p = PotentialProfile(family="single_smooth", v_w=2000.0, v_b=5.0, d=8.0,
                             barrier_shape="gauss")
        x_left, x_right = integration_window(p, CFG)
        assert -x_left > x_right

    def test_window_cap(self):
        p = PotentialProfile(family="single_smooth", v_w=2000.0, v_b=5.0, d=8.0,
                             barrier_shape="gauss")
        with pytest.raises(WindowCapError):
            integration_window(p, NumericsConfig(max_window=5.0))


class TestEffectiveBarrierHeight:
    def test_shaped_barrier_peak(self):
        # max of x e^{-x^2} is e^{-1/2} / sqrt(2), at x = 1/sqrt(2).
        p = composite(v_w=0.0)
        v_m = effective_barrier_height(p, CFG)
        assert v_m == pytest.approx(11.5 * math.exp(-0.5) / math.sqrt(2.0),
                                    rel=1e-9)

    def test_rectangular_barrier_peak(self):
        p = delta_as_rectangle(5.0, 1.0)
        assert effective_barrier_height(p, CFG) == pytest.approx(5.0, rel=1e-12)


class TestNumericsConfig:
    def test_defaults_realize_units(self):
        assert CFG.coupling == pytest.approx(1.0)
        assert CFG.wavenumber(4.0) == pytest.approx(2.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            NumericsConfig(h=0.0)
        with pytest.raises(ValueError):
            NumericsConfig(tail_epsilon=1.5)
        with pytest.raises(ValueError):
            NumericsConfig(m=-1.0)
