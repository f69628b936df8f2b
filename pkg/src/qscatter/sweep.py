"""Energy-grid sweeps and the curve statistics behind the qualitative claims.

A sweep produces T(E) together with the barrier-only reference T_b(E); the
statistics (strict local maxima of T - T_b, excursion sizes, sign crossings)
turn statements like "more oscillatory" or "suppressed at all energies" into
countable assertions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import GridTooCoarseError, QScatterError, SweepError
from .potential import NumericsConfig, PotentialProfile
from .scattering import barrier_only, transmission

_DEFAULT_CFG = NumericsConfig()


@dataclass
class TransmissionCurve:
    """Aligned T, T_b and R columns over a strictly increasing energy grid."""

    energies: np.ndarray
    T: np.ndarray
    T_b: np.ndarray
    R: np.ndarray
    unitarity_defect: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)


@dataclass
class CurveStats:
    """Oscillation statistics of T - T_b."""

    n_local_maxima: int
    max_excursion: float
    mean_excursion: float
    crossing_count: int


def _validate_grid(grid) -> np.ndarray:
    energies = np.asarray(grid, dtype=float)
    if energies.ndim != 1 or energies.size < 2:
        raise ValueError("energy grid must be a 1D array with at least 2 points")
    if energies[0] <= 0:
        raise ValueError("energy grid must start above 0")
    if np.any(np.diff(energies) <= 0):
        raise ValueError("energy grid must be strictly increasing")
    return energies


def run_sweep(
    profile: PotentialProfile,
    grid,
    cfg: NumericsConfig = _DEFAULT_CFG,
) -> TransmissionCurve:
    """Transmission curve plus the v_w = 0 reference over the given grid."""
    energies = _validate_grid(grid)
    try:
        full = transmission(profile, energies, cfg)
        ref = transmission(barrier_only(profile), energies, cfg)
    except QScatterError as exc:
        raise SweepError(f"sweep failed: {exc}") from exc
    return TransmissionCurve(
        energies=energies,
        T=np.atleast_1d(full.T),
        T_b=np.atleast_1d(ref.T),
        R=np.atleast_1d(full.R),
        unitarity_defect=np.atleast_1d(full.unitarity_defect),
        metadata={"profile": profile, "config": cfg},
    )


def _compress_plateaus(diff: np.ndarray) -> np.ndarray:
    """Collapse runs of equal consecutive values so plateaus count once."""
    keep = np.concatenate([[True], np.diff(diff) != 0.0])
    return diff[keep]


def curve_stats(curve: TransmissionCurve) -> CurveStats:
    """Strict-local-maxima count, excursions and sign crossings of T - T_b."""
    diff = curve.T - curve.T_b
    comp = _compress_plateaus(diff)
    if comp.size >= 3:
        interior = (comp[1:-1] > comp[:-2]) & (comp[1:-1] > comp[2:])
        n_max = int(np.count_nonzero(interior))
    else:
        n_max = 0
    signs = np.sign(comp[np.abs(comp) > 0])
    crossings = int(np.count_nonzero(np.diff(signs) != 0)) if signs.size else 0
    return CurveStats(
        n_local_maxima=n_max,
        max_excursion=float(np.max(np.abs(diff))),
        mean_excursion=float(np.mean(np.abs(diff))),
        crossing_count=crossings,
    )


def stats_with_refinement_check(
    profile: PotentialProfile,
    grid,
    cfg: NumericsConfig = _DEFAULT_CFG,
) -> CurveStats:
    """Curve statistics, rejected if doubling the grid density shifts them.

    Raises:
        GridTooCoarseError: refinement changes n_local_maxima by more than 1.
    """
    energies = _validate_grid(grid)
    stats = curve_stats(run_sweep(profile, energies, cfg))
    fine = np.unique(np.concatenate(
        [energies, 0.5 * (energies[:-1] + energies[1:])]
    ))
    fine_stats = curve_stats(run_sweep(profile, fine, cfg))
    if abs(fine_stats.n_local_maxima - stats.n_local_maxima) > 1:
        raise GridTooCoarseError(
            f"grid too coarse: {stats.n_local_maxima} maxima vs "
            f"{fine_stats.n_local_maxima} after refinement"
        )
    return stats


def uniform_grid(e_min: float, e_max: float, n_points: int) -> np.ndarray:
    """Uniform grid on [e_min, e_max]; the default for figure-style sweeps."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if e_min <= 0 or e_max <= e_min:
        raise ValueError("need 0 < e_min < e_max")
    return np.linspace(e_min, e_max, n_points)
