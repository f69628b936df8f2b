"""Sweeps, curve statistics and their grid-stability guarantees."""

import math

import numpy as np
import pytest

from qscatter import (
    NumericsConfig,
    PotentialProfile,
    ProfileShape,
    TransmissionCurve,
    curve_stats,
    free_profile,
    run_sweep,
    uniform_grid,
)
from qscatter.errors import GridTooCoarseError, SweepError
from qscatter.sweep import stats_with_refinement_check

CFG = NumericsConfig()


def delta_pair(v_w=1.0, d=3.0):
    return PotentialProfile(family="delta_pair", v_w=v_w, v_b=5.0, d=d)


def synthetic_curve(diff):
    diff = np.asarray(diff, dtype=float)
    E = np.arange(1.0, diff.size + 1.0)
    base = np.full_like(diff, 0.5)
    return TransmissionCurve(
        energies=E, T=base + diff, T_b=base, R=0.5 - diff,
        unitarity_defect=np.zeros_like(diff),
    )


class TestRunSweep:
    def test_free_sweep_is_transparent(self):
        curve = run_sweep(free_profile(), uniform_grid(0.5, 10.0, 20), CFG)
        assert np.all(curve.T == pytest.approx(1.0, abs=1e-12))
        assert np.all(curve.T_b == pytest.approx(1.0, abs=1e-12))

    def test_equal_strength_touch_points(self):
        # v_w = v_b = 5, d = 3: T reaches 1 where k d = n pi, E = (n pi / 3)^2.
        from qscatter import transmission

        p = PotentialProfile(family="delta_pair", v_w=5.0, v_b=5.0, d=3.0)
        curve = run_sweep(p, uniform_grid(0.01, 50.0, 500), CFG)
        for n in (1, 2, 3, 4, 5, 6):
            E_res = (n * math.pi / 3.0) ** 2
            assert transmission(p, E_res, CFG).T == pytest.approx(1.0, abs=1e-12)
            # The grid curve approaches the touch except where the resonance
            # is narrower than the grid spacing (lowest n).
            if n >= 2:
                near = np.abs(curve.energies - E_res) < 0.5
                assert np.max(curve.T[near]) > 0.99

    def test_oscillations_persist_above_barrier(self):
        curve = run_sweep(delta_pair(), uniform_grid(0.01, 50.0, 500), CFG)
        high = curve.energies > 25.0  # well above v_b = 5
        diff = (curve.T - curve.T_b)[high]
        assert np.max(np.abs(diff)) > 1e-3
        signs = np.sign(diff[np.abs(diff) > 1e-12])
        assert np.count_nonzero(np.diff(signs) != 0) >= 2

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            run_sweep(free_profile(), np.array([0.0, 1.0, 2.0]), CFG)
        with pytest.raises(ValueError):
            run_sweep(free_profile(), np.array([1.0, 1.0, 2.0]), CFG)

    def test_failures_are_wrapped(self):
        p = PotentialProfile(family="single_smooth", v_w=2000.0, v_b=5.0, d=8.0,
                             barrier_shape="gauss")
        with pytest.raises(SweepError):
            run_sweep(p, uniform_grid(0.5, 2.0, 4), NumericsConfig(max_window=5.0))


class TestCurveStats:
    def test_flat_curve(self):
        s = curve_stats(synthetic_curve(np.zeros(30)))
        assert s.n_local_maxima == 0
        assert s.crossing_count == 0
        assert s.max_excursion == 0.0

    def test_plateau_counts_once(self):
        diff = np.array([0.0, 1.0, 2.0, 2.0, 2.0, 1.0, 0.0, -1.0])
        s = curve_stats(synthetic_curve(diff))
        assert s.n_local_maxima == 1

    def test_crossings_counted(self):
        diff = np.array([1.0, -1.0, 1.0, -1.0, 1.0])
        s = curve_stats(synthetic_curve(diff))
        assert s.crossing_count == 4

    def test_maxima_bounded_by_crossings(self):
        for d, grid in ((3.0, uniform_grid(0.01, 50.0, 500)),
                        (1.0, uniform_grid(0.01, 50.0, 500))):
            s = curve_stats(run_sweep(delta_pair(d=d), grid, CFG))
            assert s.n_local_maxima <= s.crossing_count + 1

    def test_frequency_grows_with_separation(self):
        grid = uniform_grid(0.01, 50.0, 500)
        n3 = curve_stats(run_sweep(delta_pair(d=3.0), grid, CFG)).n_local_maxima
        n1 = curve_stats(run_sweep(delta_pair(d=1.0), grid, CFG)).n_local_maxima
        assert n3 > n1

    def test_frequency_approximately_linear_in_separation(self):
        grid = uniform_grid(0.01, 50.0, 500)
        counts = [
            curve_stats(run_sweep(delta_pair(d=d), grid, CFG)).n_local_maxima
            for d in (1.0, 2.0, 3.0)
        ]
        assert counts[0] < counts[1] < counts[2]
        assert abs((counts[2] - counts[1]) - (counts[1] - counts[0])) <= 1

    def test_amplitude_grows_with_depth(self):
        grid = uniform_grid(0.01, 50.0, 500)
        e5 = curve_stats(run_sweep(delta_pair(v_w=5.0), grid, CFG)).max_excursion
        e1 = curve_stats(run_sweep(delta_pair(v_w=1.0), grid, CFG)).max_excursion
        assert e5 > e1


class TestRefinementStability:
    def test_delta_stats_stable(self):
        # Maxima counts are already stable at the 500-point figure grid; the
        # 1% excursion bound needs ~1000 points to resolve the lowest peak.
        grid = uniform_grid(0.01, 50.0, 500)
        coarse = stats_with_refinement_check(delta_pair(), grid, CFG)
        base = curve_stats(run_sweep(delta_pair(), uniform_grid(0.01, 50.0, 999), CFG))
        fine = curve_stats(run_sweep(delta_pair(), uniform_grid(0.01, 50.0, 1997), CFG))
        assert abs(base.n_local_maxima - coarse.n_local_maxima) <= 1
        assert fine.max_excursion == pytest.approx(base.max_excursion, rel=0.01)

    def test_composite_stats_stable(self):
        p = PotentialProfile(
            family="finite_composite", v_w=10.0, v_b=11.5, d=5.0,
            well_shape=ProfileShape("rectangular", 5.0), barrier_shape="x_gauss",
        )
        grid = uniform_grid(0.02, 10.0, 250)
        coarse = stats_with_refinement_check(p, grid, CFG)
        fine = curve_stats(run_sweep(p, uniform_grid(0.02, 10.0, 499), CFG))
        assert abs(fine.n_local_maxima - coarse.n_local_maxima) <= 1
        assert fine.max_excursion == pytest.approx(coarse.max_excursion, rel=0.01)

    def test_coarse_grid_rejected(self):
        # 8 points cannot resolve the oscillations on (0, 50]; refinement
        # changes the maxima count by more than 1.
        with pytest.raises(GridTooCoarseError):
            stats_with_refinement_check(
                delta_pair(d=3.0), uniform_grid(0.01, 50.0, 8), CFG
            )


class TestUniformGrid:
    def test_bounds_and_size(self):
        g = uniform_grid(0.5, 10.0, 39)
        assert g.size == 39
        assert g[0] == 0.5 and g[-1] == 10.0
        assert np.all(np.diff(g) > 0)

    def test_validation(self):
        with pytest.raises(ValueError):
            uniform_grid(0.0, 10.0, 5)
        with pytest.raises(ValueError):
            uniform_grid(1.0, 10.0, 1)
