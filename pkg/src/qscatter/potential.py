"""Potential families: a non-overlapping well next to a finite barrier.

Six families are supported:

* ``free``                 -- V = 0 everywhere.
* ``delta_pair``           -- well and barrier of zero range (analytic only,
                              not pointwise evaluable).
* ``finite_composite``     -- shaped well of width w_w, a zero gap of width d,
                              and a barrier for x >= 0.
* ``continuous_joined``    -- infinite-range well and barrier sharing an odd
                              profile g with g(0) = 0, optionally separated.
* ``discontinuous_joined`` -- infinite-range well and barrier sharing an even
                              profile f, with a finite jump where they meet.
* ``single_smooth``        -- -v_w f(x + d) + v_b f(x) as a single smooth piece.

All profiles are immutable; every function here is pure and accepts scalar or
ndarray positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NonEvaluableProfileError, WindowCapError

FAMILIES = (
    "free",
    "delta_pair",
    "finite_composite",
    "continuous_joined",
    "discontinuous_joined",
    "single_smooth",
)

SHAPE_KINDS = ("rectangular", "parabolic", "triangular", "gaussian", "exponential")

# Pointwise cutoff below which gaussian/exponential shapes are treated as zero.
SHAPE_TAIL = 3e-6

# Even profiles f(x) used by single_smooth and discontinuous_joined.
EVEN_FORMS = {
    "gauss": lambda x: np.exp(-np.square(x)),
    "sech2": lambda x: 1.0 / np.square(np.cosh(x)),
    "gauss4": lambda x: np.exp(-np.square(x) ** 2),
}

# Odd profiles g(x) used by continuous_joined; all vanish at x = 0.
ODD_FORMS = {
    "x_gauss": lambda x: x * np.exp(-np.square(x)),
    "x_gauss4": lambda x: x * np.exp(-np.square(x) ** 2),
    "tanh_sech": lambda x: np.tanh(x) / np.cosh(x),
}

# Barrier pieces of finite_composite, defined on x >= 0.
COMPOSITE_BARRIER_FORMS = {
    "x_gauss": ODD_FORMS["x_gauss"],
    "x_gauss4": ODD_FORMS["x_gauss4"],
}


@dataclass(frozen=True)
class NumericsConfig:
    """Unit convention and integration knobs.

    Defaults realize 2m = hbar^2 = 1 so energies and lengths are in the
    arbitrary units used throughout.
    """

    m: float = 0.5
    hbar: float = 1.0
    h: float = 1e-3
    tail_epsilon: float = 1e-8
    max_window: float = 30.0

    def __post_init__(self) -> None:
        if self.m <= 0 or self.hbar <= 0:
            raise ValueError("mass and hbar must be positive")
        if self.h <= 0:
            raise ValueError("step size h must be positive")
        if not 0 < self.tail_epsilon < 1:
            raise ValueError("tail_epsilon must lie in (0, 1)")
        if self.max_window <= 0:
            raise ValueError("max_window must be positive")

    @property
    def coupling(self) -> float:
        """2m / hbar^2, the prefactor of (E - V) in the wave equation."""
        return 2.0 * self.m / self.hbar**2

    def wavenumber(self, energy):
        """k = sqrt(2 m E) / hbar for positive energy (scalar or array)."""
        return np.sqrt(self.coupling * np.asarray(energy, dtype=float))


@dataclass(frozen=True)
class ProfileShape:
    """Unit-height well/barrier profile of width (or scale) ``width``.

    Compact kinds (rectangular, parabolic, triangular) have support of exactly
    ``width``; gaussian and exponential use ``width`` as a scale and are
    truncated where they fall below SHAPE_TAIL.
    """

    kind: str
    width: float

    def __post_init__(self) -> None:
        if self.kind not in SHAPE_KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.width <= 0:
            raise ValueError("shape width must be positive")

    @property
    def support_half(self) -> float:
        """Distance from the center beyond which the shape is exactly zero."""
        if self.kind == "gaussian":
            return self.width * math.sqrt(math.log(1.0 / SHAPE_TAIL))
        if self.kind == "exponential":
            return self.width * math.log(1.0 / SHAPE_TAIL)
        return self.width / 2.0

    def value(self, u):
        """Shape value at offset ``u`` from the center; 1 at u = 0."""
        u = np.asarray(u, dtype=float)
        w = self.width
        if self.kind == "rectangular":
            out = np.where(np.abs(u) <= w / 2.0, 1.0, 0.0)
        elif self.kind == "parabolic":
            out = np.where(np.abs(u) <= w / 2.0, 1.0 - 4.0 * u * u / (w * w), 0.0)
            out = np.maximum(out, 0.0)
        elif self.kind == "triangular":
            out = np.maximum(1.0 - 2.0 * np.abs(u) / w, 0.0)
        elif self.kind == "gaussian":
            out = np.where(
                np.abs(u) <= self.support_half, np.exp(-np.square(u / w)), 0.0
            )
        else:  # exponential
            out = np.where(
                np.abs(u) <= self.support_half, np.exp(-np.abs(u) / w), 0.0
            )
        return out

    def kink_points(self, center: float) -> tuple[float, ...]:
        """Interior positions where the shape's slope jumps."""
        if self.kind in ("triangular", "exponential"):
            return (center,)
        return ()


@dataclass(frozen=True)
class PotentialProfile:
    """One member of the well-next-to-barrier catalogue.

    ``v_w`` and ``v_b`` are the well and barrier strengths (energy units;
    energy*length for delta_pair), ``d`` the gap between them.  ``well_shape``
    applies to finite_composite only.  ``barrier_shape`` is either a named
    smooth form or a ProfileShape for a shaped finite barrier.
    """

    family: str
    v_w: float = 0.0
    v_b: float = 0.0
    d: float = 0.0
    well_shape: ProfileShape | None = None
    barrier_shape: str | ProfileShape = "x_gauss"
    mirrored: bool = False

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown potential family {self.family!r}")
        if self.v_w < 0 or self.v_b < 0:
            raise ValueError("strengths v_w and v_b must be non-negative")
        if self.d < 0:
            raise ValueError("separation d must be non-negative")
        if self.family == "finite_composite":
            if self.v_w > 0 and self.well_shape is None:
                raise ValueError("finite_composite with v_w > 0 needs a well_shape")
            if isinstance(self.barrier_shape, str):
                if self.barrier_shape not in COMPOSITE_BARRIER_FORMS:
                    raise ValueError(
                        f"finite_composite barrier form {self.barrier_shape!r} "
                        f"not one of {sorted(COMPOSITE_BARRIER_FORMS)}"
                    )
        elif self.family == "continuous_joined":
            if self.barrier_shape not in ODD_FORMS:
                raise ValueError(
                    f"continuous_joined profile {self.barrier_shape!r} "
                    f"not one of {sorted(ODD_FORMS)}"
                )
        elif self.family in ("discontinuous_joined", "single_smooth"):
            if self.barrier_shape not in EVEN_FORMS:
                raise ValueError(
                    f"{self.family} profile {self.barrier_shape!r} "
                    f"not one of {sorted(EVEN_FORMS)}"
                )

    @property
    def well_center(self) -> float:
        return -self.d - (self.well_shape.width if self.well_shape else 0.0) / 2.0

    @property
    def well_left(self) -> float:
        """Left edge of the well piece of finite_composite (0 if no well)."""
        if self.family != "finite_composite" or self.v_w == 0 or self.well_shape is None:
            return 0.0
        return self.well_center - self.well_shape.support_half


def free_profile() -> PotentialProfile:
    return PotentialProfile(family="free")


def mirror(profile: PotentialProfile) -> PotentialProfile:
    """The x -> -x reflection of a profile (used by the time-reversal check)."""
    return replace(profile, mirrored=not profile.mirrored)


def delta_as_rectangle(strength: float, width: float) -> PotentialProfile:
    """Narrow rectangular surrogate for a delta barrier of the given strength.

    The rectangle has height strength/width over support [0, width], so the
    integral of V equals ``strength`` exactly.
    """
    if width <= 0:
        raise ValueError("surrogate width must be positive")
    if strength < 0:
        raise ValueError("surrogate strength must be non-negative")
    return PotentialProfile(
        family="finite_composite",
        v_w=0.0,
        v_b=strength / width,
        barrier_shape=ProfileShape("rectangular", width),
    )


def evaluate(profile: PotentialProfile, x):
    """V(x) for any evaluable family; scalar in, scalar out.

    Raises:
        NonEvaluableProfileError: for delta_pair, whose pieces are point
            singularities with no pointwise value.
    """
    if profile.family == "delta_pair":
        raise NonEvaluableProfileError(
            "non-evaluable singular profile: delta_pair has no pointwise values"
        )
    scalar = np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if profile.mirrored:
        out = evaluate(replace(profile, mirrored=False), -xs)
        out = np.atleast_1d(out)
        return float(out[0]) if scalar else out

    out = np.zeros_like(xs)
    fam = profile.family
    if fam == "free":
        pass
    elif fam == "single_smooth":
        f = EVEN_FORMS[profile.barrier_shape]
        out = -profile.v_w * f(xs + profile.d) + profile.v_b * f(xs)
    elif fam == "continuous_joined":
        g = ODD_FORMS[profile.barrier_shape]
        right = xs > 0
        left = xs <= -profile.d
        out[right] = profile.v_b * g(xs[right])
        out[left] = profile.v_w * g(xs[left] + profile.d)
    elif fam == "discontinuous_joined":
        f = EVEN_FORMS[profile.barrier_shape]
        right = xs > 0
        left = xs <= -profile.d
        out[right] = profile.v_b * f(xs[right])
        out[left] = -profile.v_w * f(xs[left] + profile.d)
    else:  # finite_composite
        if profile.v_w > 0 and profile.well_shape is not None:
            center = profile.well_center
            well = (xs >= profile.well_left) & (xs <= -profile.d)
            out[well] = -profile.v_w * profile.well_shape.value(xs[well] - center)
        if profile.v_b > 0:
            if isinstance(profile.barrier_shape, ProfileShape):
                shape = profile.barrier_shape
                w_b = shape.width
                barrier = (xs >= 0.0) & (xs <= w_b)
                out[barrier] = profile.v_b * shape.value(xs[barrier] - w_b / 2.0)
            else:
                form = COMPOSITE_BARRIER_FORMS[profile.barrier_shape]
                barrier = xs >= 0.0
                out[barrier] = profile.v_b * form(xs[barrier])
    return float(out[0]) if scalar else out


def breakpoints(profile: PotentialProfile) -> tuple[float, ...]:
    """Sorted positions where V or V' may jump; integration steps never straddle these."""
    fam = profile.family
    pts: set[float] = set()
    if fam == "finite_composite":
        if profile.v_w > 0 and profile.well_shape is not None:
            pts.add(profile.well_left)
            pts.add(-profile.d)
            pts.update(profile.well_shape.kink_points(profile.well_center))
        if profile.v_b > 0:
            pts.add(0.0)
            if isinstance(profile.barrier_shape, ProfileShape):
                shape = profile.barrier_shape
                pts.add(shape.width)
                pts.update(shape.kink_points(shape.width / 2.0))
    elif fam in ("continuous_joined", "discontinuous_joined"):
        pts.update((-profile.d, 0.0))
    if profile.mirrored:
        pts = {-p for p in pts}
    return tuple(sorted(pts))


def _sample_extent(profile: PotentialProfile, cfg: NumericsConfig) -> tuple[float, float]:
    """A range guaranteed to contain every feature of the profile."""
    if profile.family == "finite_composite":
        lo = min(profile.well_left, -profile.d) - 1.0
        if isinstance(profile.barrier_shape, ProfileShape):
            hi = profile.barrier_shape.width + 1.0
        else:
            hi = 8.0
    else:
        reach = min(12.0 + profile.d, cfg.max_window)
        lo, hi = -reach, reach
    if profile.mirrored:
        lo, hi = -hi, -lo
    return lo, hi


def peak_magnitude(profile: PotentialProfile, cfg: NumericsConfig | None = None) -> float:
    """max |V(x)|, found by dense sampling over the feature range."""
    cfg = cfg or NumericsConfig()
    if profile.family == "free":
        return 0.0
    lo, hi = _sample_extent(profile, cfg)
    xs = np.linspace(lo, hi, 40001)
    return float(np.max(np.abs(evaluate(profile, xs))))


def effective_barrier_height(
    profile: PotentialProfile, cfg: NumericsConfig | None = None
) -> float:
    """Maximum of the barrier piece v_m, which can differ from v_b for shaped barriers.

    Found by coarse sampling refined with a golden-section search.
    """
    cfg = cfg or NumericsConfig()
    base = replace(profile, mirrored=False)
    if base.family == "free":
        return 0.0
    if base.family == "delta_pair":
        return base.v_b
    if base.v_b == 0:
        return 0.0
    if base.family == "finite_composite" and isinstance(base.barrier_shape, ProfileShape):
        return base.v_b  # shaped barriers peak at their unit-height center
    lo, hi = 0.0, _sample_extent(base, cfg)[1]
    xs = np.linspace(lo, hi, 4001)
    vs = evaluate(base, xs)
    i = int(np.argmax(vs))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, len(xs) - 1)]
    res = minimize_scalar(
        lambda x: -evaluate(base, float(x)), bracket=None, bounds=(a, b), method="bounded"
    )
    return float(max(vs[i], -res.fun))


def integration_window(
    profile: PotentialProfile, cfg: NumericsConfig
) -> tuple[float, float]:
    """Span (x_left, x_right) outside which |V| is below tail_epsilon * max|V|.

    Free or identically-zero profiles give the degenerate window (0, 0).

    Raises:
        WindowCapError: if a tail has not decayed within cfg.max_window.
        NonEvaluableProfileError: for delta_pair.
    """
    if profile.family == "delta_pair":
        raise NonEvaluableProfileError(
            "non-evaluable singular profile: use the delta closed form instead"
        )
    if profile.family == "free":
        return (0.0, 0.0)
    vmax = peak_magnitude(profile, cfg)
    if vmax == 0.0:
        return (0.0, 0.0)
    if profile.mirrored:
        xl, xr = integration_window(replace(profile, mirrored=False), cfg)
        return (-xr, -xl)

    threshold = cfg.tail_epsilon * vmax
    if profile.family == "finite_composite":
        x_left = profile.well_left
        if profile.v_b == 0:
            return (x_left, 0.0)
        if isinstance(profile.barrier_shape, ProfileShape):
            return (x_left, profile.barrier_shape.width)
        x_right = _aligned_tail_edge(
            lambda t: np.abs(evaluate(profile, t)), cfg, threshold, side=+1
        )
        return (x_left, x_right)

    x_right = _aligned_tail_edge(
        lambda t: np.abs(evaluate(profile, t)), cfg, threshold, side=+1
    )
    x_left = -_aligned_tail_edge(
        lambda t: np.abs(evaluate(profile, -t)), cfg, threshold, side=+1
    )
    return (x_left, x_right)


def _aligned_tail_edge(absval, cfg: NumericsConfig, threshold: float, side: int) -> float:
    """Smallest h-aligned distance beyond every point where |V| >= threshold."""
    n = int(math.floor(cfg.max_window / cfg.h))
    xs = cfg.h * np.arange(n + 1)
    vals = absval(xs)
    above = np.nonzero(vals >= threshold)[0]
    if above.size == 0:
        return 0.0
    last = above[-1]
    if last >= n:
        raise WindowCapError(
            f"window cap exceeded: |V| is still {vals[last]:.3e} >= {threshold:.3e} "
            f"at x = {side * xs[last]:.3f}"
        )
    return float(xs[last + 1])
