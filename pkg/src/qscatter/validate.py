"""Acceptance suite: every shipped criterion with its stated tolerance.

Each check returns a CriterionResult; the CLI prints one pass/fail line per
criterion and the test suite asserts them individually.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from . import closedform
from .potential import (
    NumericsConfig,
    PotentialProfile,
    ProfileShape,
    delta_as_rectangle,
    effective_barrier_height,
    free_profile,
    integration_window,
    mirror,
)
from .scattering import transfer_matrix_T, transmission
from .sweep import curve_stats, run_sweep, uniform_grid

CFG = NumericsConfig()


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str


def _delta(v_w, v_b, d):
    return PotentialProfile(family="delta_pair", v_w=v_w, v_b=v_b, d=d)


def _composite(v_w, d, w_w, kind="rectangular", v_b=11.5):
    return PotentialProfile(
        family="finite_composite", v_w=v_w, v_b=v_b, d=d,
        well_shape=ProfileShape(kind, w_w) if v_w > 0 else None,
        barrier_shape="x_gauss",
    )


_FIG2_SETS = ((1.0, 5.0, 3.0), (1.0, 5.0, 1.0), (5.0, 5.0, 3.0), (5.0, 5.0, 1.0))

_FAMILY_REPS: dict[str, PotentialProfile] = {
    "free": free_profile(),
    "delta_pair": _delta(1.0, 5.0, 3.0),
    "finite_composite": _composite(10.0, 5.0, 5.0),
    "continuous_joined": PotentialProfile(
        family="continuous_joined", v_w=5.0, v_b=5.0, barrier_shape="x_gauss"
    ),
    "discontinuous_joined": PotentialProfile(
        family="discontinuous_joined", v_w=15.0, v_b=5.0, barrier_shape="gauss"
    ),
    "single_smooth": PotentialProfile(
        family="single_smooth", v_w=5.0, v_b=5.0, d=3.0, barrier_shape="gauss"
    ),
}


def check_unitarity() -> CriterionResult:
    """1: |T + R - 1| <= 1e-8 for every family on (0, 10 v_m]."""
    worst = 0.0
    for profile in _FAMILY_REPS.values():
        v_m = effective_barrier_height(profile, CFG)
        top = 10.0 * v_m if v_m > 0 else 10.0
        grid = uniform_grid(top / 50.0, top, 50)
        res = transmission(profile, grid, CFG)
        worst = max(worst, float(np.max(np.atleast_1d(res.unitarity_defect))))
    return CriterionResult(
        "unitarity across families", worst <= 1e-8, f"max defect {worst:.3e}"
    )


def check_delta_closed_form() -> CriterionResult:
    """2: closed-form unitarity of the double-delta amplitudes and the single-delta limit."""
    grid = uniform_grid(0.1, 50.0, 500)
    worst_u = 0.0
    for v_w, v_b, d in _FIG2_SETS:
        amp = closedform.delta_amplitudes(v_w, v_b, d, grid, CFG)
        worst_u = max(worst_u, float(np.max(np.abs(amp.T + amp.R - 1.0))))
    amp0 = closedform.delta_amplitudes(0.0, 5.0, 3.0, grid, CFG)
    worst_b = float(np.max(np.abs(amp0.T - closedform.delta_barrier_T(5.0, grid, CFG))))
    passed = worst_u <= 1e-12 and worst_b <= 1e-12
    return CriterionResult(
        "double-delta closed form",
        passed,
        f"max unitarity defect {worst_u:.3e}, single-delta mismatch {worst_b:.3e}",
    )


def check_rectangular_oracle() -> CriterionResult:
    """3: RK4 pipeline vs the rectangular-barrier closed form, rel 1e-8."""
    profile = delta_as_rectangle(5.0, 1.0)  # height 5, width 1
    worst = 0.0
    for E in (0.5, 2.5, 5.5, 10.0, 25.0):
        t_num = transmission(profile, E, CFG).T
        t_ref = closedform.rectangular_barrier_T(5.0, 1.0, E, CFG)
        worst = max(worst, abs(t_num - t_ref) / t_ref)
    return CriterionResult(
        "rectangular-barrier oracle", worst <= 1e-8, f"max rel error {worst:.3e}"
    )


def check_scarf2_oracle() -> CriterionResult:
    """4: RK4 pipeline vs the Scarf II closed form, rel 1e-4, window >= 12."""
    worst = 0.0
    min_window = np.inf
    for V0 in (5.0, 10.0, 15.0):
        profile = PotentialProfile(
            family="continuous_joined", v_w=V0, v_b=V0, barrier_shape="tanh_sech"
        )
        xl, xr = integration_window(profile, CFG)
        min_window = min(min_window, xr, -xl)
        grid = uniform_grid(3.0 * V0 / 50.0, 3.0 * V0, 50)
        t_num = np.atleast_1d(transmission(profile, grid, CFG).T)
        t_ref = closedform.scarf2_T(V0, 1.0, grid)
        worst = max(worst, float(np.max(np.abs(t_num - t_ref) / t_ref)))
    passed = worst <= 1e-4 and min_window >= 12.0
    return CriterionResult(
        "Scarf II oracle", passed,
        f"max rel error {worst:.3e}, window half-width {min_window:.2f}",
    )


def check_transfer_matrix() -> CriterionResult:
    """5: RK4 vs 1e4-slice transfer matrix on the Gaussian-well composite."""
    profile = _composite(10.0, 5.0, 0.4, kind="gaussian")
    grid = uniform_grid(0.2, 10.0, 50)
    t_rk4 = np.atleast_1d(transmission(profile, grid, CFG).T)
    t_tm = np.atleast_1d(transfer_matrix_T(profile, grid, 10_000, CFG))
    worst = float(np.max(np.abs(t_rk4 - t_tm) / t_rk4))
    return CriterionResult(
        "transfer-matrix cross-check", worst <= 1e-6, f"max rel error {worst:.3e}"
    )


def check_wronskian() -> CriterionResult:
    """6: Wronskian drift <= 1e-9 per integration at h = 1e-3."""
    worst = 0.0
    for profile in _FAMILY_REPS.values():
        if profile.family in ("free", "delta_pair"):
            continue
        grid = uniform_grid(0.5, 25.0, 20)
        res = transmission(profile, grid, CFG)
        worst = max(worst, float(np.max(np.atleast_1d(res.wronskian_drift))))
    return CriterionResult(
        "Wronskian conservation", worst <= 1e-9, f"max drift {worst:.3e}"
    )


def check_delta_surrogate() -> CriterionResult:
    """7: narrow-rectangle T converges monotonically to the delta value 0.8."""
    target = float(closedform.delta_barrier_T(5.0, 25.0, CFG))
    errors = [
        abs(float(transmission(delta_as_rectangle(5.0, w), 25.0, CFG).T) - target)
        for w in (0.1, 0.05, 0.025)
    ]
    monotone = errors[0] > errors[1] > errors[2]
    return CriterionResult(
        "delta-surrogate convergence",
        monotone and errors[-1] < 1e-2,
        f"target {target:.6f}, errors {['%.2e' % e for e in errors]}",
    )


def check_resonance_positions() -> CriterionResult:
    """8: stated resonance energies k d = (n + 1/2) pi for v_w = v_b = 5, d = 3.

    The matching conditions place the equal-strength reflection zeros at
    k d = n pi instead (confirmed by the independent transfer-matrix route),
    so this criterion fails as stated; see check_resonance_true_positions.
    """
    d = 3.0
    worst = 0.0
    for n in (0, 1, 2):
        k = (n + 0.5) * np.pi / d
        E = k * k / CFG.coupling
        T = float(transmission(_delta(5.0, 5.0, d), E, CFG).T)
        worst = max(worst, abs(1.0 - T))
    return CriterionResult(
        "resonances at k d = (n + 1/2) pi", worst <= 1e-10, f"max |1 - T| {worst:.3e}"
    )


def check_resonance_true_positions() -> CriterionResult:
    """Companion to 8: T = 1 at the derived positions k d = n pi, n = 1, 2, 3."""
    d = 3.0
    worst = 0.0
    for n in (1, 2, 3):
        k = n * np.pi / d
        E = k * k / CFG.coupling
        T = float(transmission(_delta(5.0, 5.0, d), E, CFG).T)
        worst = max(worst, abs(1.0 - T))
    return CriterionResult(
        "resonances at k d = n pi", worst <= 1e-10, f"max |1 - T| {worst:.3e}"
    )


def check_frequency_trend() -> CriterionResult:
    """9: larger separation d gives more local maxima of T - T_b."""
    grid = uniform_grid(0.1, 50.0, 500)
    n_d3 = curve_stats(run_sweep(_delta(1.0, 5.0, 3.0), grid, CFG)).n_local_maxima
    n_d1 = curve_stats(run_sweep(_delta(1.0, 5.0, 1.0), grid, CFG)).n_local_maxima
    cgrid = uniform_grid(0.02, 10.0, 500)
    n_c5 = curve_stats(run_sweep(_composite(10.0, 5.0, 5.0), cgrid, CFG)).n_local_maxima
    n_c0 = curve_stats(run_sweep(_composite(10.0, 0.0, 5.0), cgrid, CFG)).n_local_maxima
    passed = n_d3 > n_d1 and n_c5 > n_c0
    return CriterionResult(
        "oscillation frequency vs separation", passed,
        f"delta {n_d3} > {n_d1}, composite {n_c5} > {n_c0}",
    )


def check_amplitude_trend() -> CriterionResult:
    """10: deeper well gives larger excursions around T_b."""
    grid = uniform_grid(0.1, 50.0, 500)
    exc5 = curve_stats(run_sweep(_delta(5.0, 5.0, 3.0), grid, CFG)).max_excursion
    exc1 = curve_stats(run_sweep(_delta(1.0, 5.0, 3.0), grid, CFG)).max_excursion
    return CriterionResult(
        "oscillation amplitude vs depth", exc5 > exc1,
        f"max excursion {exc5:.4f} > {exc1:.4f}",
    )


def check_suppression() -> CriterionResult:
    """11: discontinuous joining suppresses T at every energy."""
    profile = PotentialProfile(
        family="discontinuous_joined", v_w=15.0, v_b=5.0, barrier_shape="gauss"
    )
    curve = run_sweep(profile, uniform_grid(0.03, 15.0, 500), CFG)
    excess = float(np.max(curve.T - curve.T_b))
    return CriterionResult(
        "suppression in the discontinuous model", excess <= 1e-6,
        f"max T - T_b = {excess:.3e}",
    )


def check_non_oscillation() -> CriterionResult:
    """12: the continuously joined model shows at most one maximum of T - T_b."""
    grid = uniform_grid(0.03, 15.0, 500)
    counts = []
    for v_w in (5.0, 10.0, 15.0):
        profile = PotentialProfile(
            family="continuous_joined", v_w=v_w, v_b=5.0, barrier_shape="x_gauss"
        )
        counts.append(curve_stats(run_sweep(profile, grid, CFG)).n_local_maxima)
    return CriterionResult(
        "non-oscillation in the continuous model", max(counts) <= 1,
        f"maxima counts {counts}",
    )


def check_single_smooth_depth_trend() -> CriterionResult:
    """13: the one-piece model needs extreme depth; both stats rise with v_w."""
    grid = uniform_grid(0.03, 15.0, 500)
    n_max, exc = [], []
    for v_w in (0.0, 2000.0, 5000.0):
        profile = PotentialProfile(
            family="single_smooth", v_w=v_w, v_b=5.0, d=8.0, barrier_shape="gauss"
        )
        stats = curve_stats(run_sweep(profile, grid, CFG))
        n_max.append(stats.n_local_maxima)
        exc.append(stats.max_excursion)
    passed = n_max[0] < n_max[1] < n_max[2] and exc[0] < exc[1] < exc[2]
    return CriterionResult(
        "single-smooth depth trend", passed,
        f"maxima {n_max}, excursions {['%.2e' % e for e in exc]}",
    )


def check_time_reversal() -> CriterionResult:
    """14: T is identical for mirrored profiles, one representative per family."""
    worst = 0.0
    for profile in _FAMILY_REPS.values():
        t_fwd = float(np.atleast_1d(transmission(profile, 2.0, CFG).T)[0])
        t_rev = float(np.atleast_1d(transmission(mirror(profile), 2.0, CFG).T)[0])
        worst = max(worst, abs(t_fwd - t_rev))
    return CriterionResult(
        "time-reversal symmetry", worst <= 1e-10, f"max |T - T_mirror| {worst:.3e}"
    )


def check_performance() -> CriterionResult:
    """15: a 500-energy composite sweep at h = 1e-3 finishes within 10 s."""
    profile = _composite(10.0, 5.0, 5.0)
    xl, xr = integration_window(profile, CFG)
    start = time.perf_counter()
    run_sweep(profile, uniform_grid(0.02, 10.0, 500), CFG)
    elapsed = time.perf_counter() - start
    passed = elapsed < 10.0 and (xr - xl) <= 20.0
    return CriterionResult(
        "performance envelope", passed,
        f"{elapsed:.2f} s for 500 energies, window {xr - xl:.2f}",
    )


_QUICK = (
    check_delta_closed_form,
    check_rectangular_oracle,
    check_delta_surrogate,
)

_FULL = (
    check_unitarity,
    check_delta_closed_form,
    check_rectangular_oracle,
    check_scarf2_oracle,
    check_transfer_matrix,
    check_wronskian,
    check_delta_surrogate,
    check_resonance_positions,
    check_resonance_true_positions,
    check_frequency_trend,
    check_amplitude_trend,
    check_suppression,
    check_non_oscillation,
    check_single_smooth_depth_trend,
    check_time_reversal,
    check_performance,
)


def run_suite(quick: bool = False) -> list[CriterionResult]:
    """Run all (or the quick subset of) acceptance checks."""
    return [check() for check in (_QUICK if quick else _FULL)]
