"""Transmission and reflection through a well next to a finite barrier."""

from .closedform import (
    DeltaAmplitudes,
    delta_amplitudes,
    delta_barrier_T,
    rectangular_barrier_T,
    scarf2_T,
)
from .errors import QScatterError
from .integrator import FundamentalEndpointData, OdeState, fundamental_pair, rk4_step
from .potential import (
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
from .scattering import (
    ScatteringResult,
    barrier_only,
    match_amplitudes,
    transfer_matrix_T,
    transmission,
)
from .sweep import CurveStats, TransmissionCurve, curve_stats, run_sweep, uniform_grid

__all__ = [
    "CurveStats",
    "DeltaAmplitudes",
    "FundamentalEndpointData",
    "NumericsConfig",
    "OdeState",
    "PotentialProfile",
    "ProfileShape",
    "QScatterError",
    "ScatteringResult",
    "TransmissionCurve",
    "barrier_only",
    "curve_stats",
    "delta_amplitudes",
    "delta_as_rectangle",
    "delta_barrier_T",
    "effective_barrier_height",
    "evaluate",
    "free_profile",
    "fundamental_pair",
    "integration_window",
    "match_amplitudes",
    "mirror",
    "rectangular_barrier_T",
    "rk4_step",
    "run_sweep",
    "scarf2_T",
    "transfer_matrix_T",
    "transmission",
    "uniform_grid",
]

__version__ = "0.1.0"
