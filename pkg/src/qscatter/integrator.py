"""Fixed-step RK4 integration of the 1D wave equation.

The second-order equation psi'' = (2m/hbar^2)(V - E) psi is integrated as the
coupled pair y' = z, z' = (2m/hbar^2)(V - E) y.  Two fundamental solutions are
launched from x = 0 with initial data (1, 0) and (0, 1) and carried outward to
both window edges; their Wronskian, exactly 1 for the true solutions, is
monitored as an accuracy diagnostic.

Steps are laid out piecewise between the profile's breakpoints so that no RK4
stage ever straddles a jump or kink of V; stage evaluations at a piece edge are
nudged an infinitesimal distance into the piece so jumps are sampled from the
correct side.  Several energies can be integrated at once (E as an array);
the x grid is shared, so the potential is evaluated once per stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DegenerateWindowError, NonFiniteStateError
from .potential import NumericsConfig, PotentialProfile, breakpoints, evaluate

# Fraction of a step by which edge-stage abscissae are pulled into the piece.
_EDGE_NUDGE = 1e-9

# Refinement of the step size at high energy: h <= lambda_dB / _STEPS_PER_WAVE.
_STEPS_PER_WAVE = 100

# Refinement for deep wells, where the local wavelength 2 pi / sqrt(c (E - V))
# can be far shorter than the free one: h <= lambda_local / _STEPS_PER_WAVE_LOCAL.
_STEPS_PER_WAVE_LOCAL = 500


@dataclass
class OdeState:
    """Position, wavefunction value and first derivative."""

    x: float
    y: float
    z: float


@dataclass
class FundamentalEndpointData:
    """Endpoint values of the two fundamental solutions.

    psi* are taken at the left window edge, phi* at the right edge.  Fields are
    floats for a scalar energy and ndarrays for a batch.  wronskian_drift is
    the maximum of |W - 1| observed along the whole trajectory.
    """

    psi1: float | np.ndarray
    psi1_prime: float | np.ndarray
    psi2: float | np.ndarray
    psi2_prime: float | np.ndarray
    phi1: float | np.ndarray
    phi1_prime: float | np.ndarray
    phi2: float | np.ndarray
    phi2_prime: float | np.ndarray
    wronskian_drift: float | np.ndarray


def rk4_step(
    state: OdeState,
    h: float,
    E: float,
    profile: PotentialProfile,
    cfg: NumericsConfig,
) -> OdeState:
    """One classical RK4 step; h < 0 integrates leftward."""
    if h == 0:
        raise ValueError("step size must be nonzero")
    c = cfg.coupling
    x, y, z = state.x, state.y, state.z

    def rhs(xi, yi, zi):
        return zi, c * (evaluate(profile, xi) - E) * yi

    k1y, k1z = rhs(x, y, z)
    k2y, k2z = rhs(x + h / 2, y + h / 2 * k1y, z + h / 2 * k1z)
    k3y, k3z = rhs(x + h / 2, y + h / 2 * k2y, z + h / 2 * k2z)
    k4y, k4z = rhs(x + h, y + h * k3y, z + h * k3z)
    y_new = y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
    z_new = z + h / 6 * (k1z + 2 * k2z + 2 * k3z + k4z)
    if not (math.isfinite(y_new) and math.isfinite(z_new)):
        raise NonFiniteStateError(f"non-finite state after step from x = {x:.6g}")
    return OdeState(x=x + h, y=y_new, z=z_new)


def _piece_plan(start: float, stop: float, cuts, h: float):
    """Split [start, stop] (either orientation) at the given interior cuts.

    Yields (a, b, n) with n whole steps of size (b - a)/n per smooth piece.
    """
    sign = 1.0 if stop >= start else -1.0
    lo, hi = (start, stop) if sign > 0 else (stop, start)
    inner = sorted(p for p in cuts if lo < p < hi)
    pts = [start] + (inner if sign > 0 else inner[::-1]) + [stop]
    for a, b in zip(pts[:-1], pts[1:]):
        n = max(1, math.ceil(abs(b - a) / h))
        yield a, b, n


@njit(cache=True)
def _rk4_kernel(y, z, w_nodes, w_mids, hs, drift):
    """RK4-march the (nE, 2) state through one smooth piece, in place.

    w_nodes[i, e] = (2m/hbar^2)(V(x_i) - E_e) at the step nodes, w_mids at the
    step midpoints.  Updates the running Wronskian drift per energy.
    """
    n = w_mids.shape[0]
    for i in range(n):
        for e in range(y.shape[0]):
            w0 = w_nodes[i, e]
            wm = w_mids[i, e]
            w1 = w_nodes[i + 1, e]
            for s in range(2):
                yy = y[e, s]
                zz = z[e, s]
                k1y = zz
                k1z = w0 * yy
                k2y = zz + (hs / 2) * k1z
                k2z = wm * (yy + (hs / 2) * k1y)
                k3y = zz + (hs / 2) * k2z
                k3z = wm * (yy + (hs / 2) * k2y)
                k4y = zz + hs * k3z
                k4z = w1 * (yy + hs * k3y)
                y[e, s] = yy + (hs / 6) * (k1y + 2 * k2y + 2 * k3y + k4y)
                z[e, s] = zz + (hs / 6) * (k1z + 2 * k2z + 2 * k3z + k4z)
            wron = y[e, 0] * z[e, 1] - z[e, 0] * y[e, 1]
            defect = abs(wron - 1.0)
            if defect > drift[e]:
                drift[e] = defect


def _integrate_outward(profile, Es, c, start, stop, cuts, h, y, z, drift):
    """March the (nE, 2) fundamental pair from start to stop in place."""
    for a, b, n in _piece_plan(start, stop, cuts, h):
        hs = (b - a) / n
        nodes = a + hs * np.arange(n + 1)
        nodes[0] = a + _EDGE_NUDGE * hs
        nodes[-1] = b - _EDGE_NUDGE * hs
        mids = a + hs * (np.arange(n) + 0.5)
        v_nodes = np.asarray(evaluate(profile, nodes))
        v_mids = np.asarray(evaluate(profile, mids))
        w_nodes = c * (v_nodes[:, None] - Es[None, :])
        w_mids = c * (v_mids[:, None] - Es[None, :])
        _rk4_kernel(y, z, w_nodes, w_mids, hs, drift)
    return y, z


def fundamental_pair(
    profile: PotentialProfile,
    E,
    window: tuple[float, float],
    cfg: NumericsConfig,
) -> FundamentalEndpointData:
    """Endpoint data of both fundamental solutions over the given window.

    E may be a scalar or a 1D array; with an array every field of the result
    is an aligned array.

    Raises:
        DegenerateWindowError: zero-length window for a non-free profile.
        NonFiniteStateError: the integration overflowed.
    """
    scalar = np.isscalar(E) or (isinstance(E, np.ndarray) and E.ndim == 0)
    Es = np.atleast_1d(np.asarray(E, dtype=float))
    if np.any(Es <= 0):
        raise ValueError("nonpositive energy")
    x_left, x_right = window
    if x_left == x_right:
        if profile.family != "free":
            raise DegenerateWindowError(
                "degenerate window for a non-trivial profile"
            )
        one = np.ones_like(Es)
        zero = np.zeros_like(Es)
        data = FundamentalEndpointData(one, zero, zero, one, one, zero, zero, one, zero)
        return _collapse(data) if scalar else data

    c = cfg.coupling
    k_max = float(np.max(cfg.wavenumber(Es)))
    xs_probe = np.linspace(x_left, x_right, 2001)
    v_min = min(float(np.min(evaluate(profile, xs_probe))), 0.0)
    k_local = math.sqrt(c * (float(np.max(Es)) - v_min))
    h = min(
        cfg.h,
        2.0 * math.pi / (_STEPS_PER_WAVE * k_max),
        2.0 * math.pi / (_STEPS_PER_WAVE_LOCAL * k_local),
    )
    cuts = breakpoints(profile)

    def fresh():
        y = np.zeros((Es.size, 2))
        z = np.zeros((Es.size, 2))
        y[:, 0] = 1.0
        z[:, 1] = 1.0
        return y, z

    drift = np.zeros(Es.size)
    y_r, z_r = fresh()
    if x_right > 0:
        y_r, z_r = _integrate_outward(
            profile, Es, c, 0.0, x_right, cuts, h, y_r, z_r, drift
        )
    y_l, z_l = fresh()
    if x_left < 0:
        y_l, z_l = _integrate_outward(
            profile, Es, c, 0.0, x_left, cuts, h, y_l, z_l, drift
        )

    for arr in (y_r, z_r, y_l, z_l):
        if not np.all(np.isfinite(arr)):
            bad = Es[~np.all(np.isfinite(y_r) & np.isfinite(z_r)
                             & np.isfinite(y_l) & np.isfinite(z_l), axis=-1)]
            raise NonFiniteStateError(
                f"non-finite state at energies {np.unique(bad)[:5]}"
            )

    data = FundamentalEndpointData(
        psi1=y_l[:, 0],
        psi1_prime=z_l[:, 0],
        psi2=y_l[:, 1],
        psi2_prime=z_l[:, 1],
        phi1=y_r[:, 0],
        phi1_prime=z_r[:, 0],
        phi2=y_r[:, 1],
        phi2_prime=z_r[:, 1],
        wronskian_drift=drift,
    )
    return _collapse(data) if scalar else data


def _collapse(data: FundamentalEndpointData) -> FundamentalEndpointData:
    """Turn length-1 array fields into plain floats."""
    return FundamentalEndpointData(
        *(float(np.asarray(getattr(data, f))[0]) for f in (
            "psi1", "psi1_prime", "psi2", "psi2_prime",
            "phi1", "phi1_prime", "phi2", "phi2_prime", "wronskian_drift",
        ))
    )
