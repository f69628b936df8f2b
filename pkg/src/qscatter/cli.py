"""Command-line front end: run-spec parsing, sweeps, figure sets, validation.

Run specs are flat ``key=value`` files with ``#`` comments and a
``grid=min:max:count`` shorthand, e.g.::

    family=delta_pair
    v_w=1  v_b=5  d=3
    grid=0.01:50:500
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import QScatterError, SpecParseError
from .potential import (
    FAMILIES,
    SHAPE_KINDS,
    NumericsConfig,
    PotentialProfile,
    ProfileShape,
)
from .sweep import TransmissionCurve, curve_stats, run_sweep, uniform_grid

_NUMERIC_KEYS = {"v_w", "v_b", "d", "w_w", "h", "tail_epsilon", "max_window", "m", "hbar"}
_KNOWN_KEYS = _NUMERIC_KEYS | {"family", "well_shape", "barrier_shape", "grid"}
_NONNEGATIVE_KEYS = {"v_w", "v_b", "d", "w_w"}

_BARRIER_NAMES = {"x_gauss", "x_gauss4", "gauss", "sech2", "gauss4", "tanh_sech"}
_DEFAULT_BARRIERS = {
    "finite_composite": "x_gauss",
    "continuous_joined": "x_gauss",
    "discontinuous_joined": "gauss",
    "single_smooth": "gauss",
}

CSV_HEADER = "E,T,T_b,R,unitarity_defect"


@dataclass(frozen=True)
class RunSpec:
    """A fully validated sweep request."""

    profile: PotentialProfile
    grid: tuple[float, float, int]  # (E_min, E_max, n_points)
    cfg: NumericsConfig


def parse_spec(text: str) -> RunSpec:
    """Parse a run-spec file; unknown keys and out-of-range values are errors."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        for token in body.split():
            if "=" not in token:
                raise SpecParseError(f"line {lineno}: expected key=value, got {token!r}")
            key, _, value = token.partition("=")
            if key not in _KNOWN_KEYS:
                raise SpecParseError(f"line {lineno}: unknown key {key!r}")
            if key in raw:
                raise SpecParseError(f"line {lineno}: duplicate key {key!r}")
            if not value:
                raise SpecParseError(f"line {lineno}: empty value for {key!r}")
            raw[key] = value

    if "family" not in raw:
        raise SpecParseError("missing required key 'family'")
    family = raw.pop("family")
    if family not in FAMILIES:
        raise SpecParseError(f"family must be one of {FAMILIES}, got {family!r}")
    if "grid" not in raw:
        raise SpecParseError("missing required key 'grid'")
    grid = _parse_grid(raw.pop("grid"))

    nums: dict[str, float] = {}
    for key in list(raw):
        if key in _NUMERIC_KEYS:
            value = raw.pop(key)
            try:
                nums[key] = float(value)
            except ValueError:
                raise SpecParseError(f"key {key!r}: not a number: {value!r}") from None
    for key in _NONNEGATIVE_KEYS & nums.keys():
        if nums[key] < 0:
            raise SpecParseError(f"key {key!r}: must be non-negative, got {nums[key]}")

    cfg_kwargs = {k: nums.pop(k) for k in ("h", "tail_epsilon", "max_window", "m", "hbar") if k in nums}
    try:
        cfg = NumericsConfig(**cfg_kwargs)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc

    well_shape = None
    if "well_shape" in raw or "w_w" in nums:
        kind = raw.pop("well_shape", "rectangular")
        if kind not in SHAPE_KINDS:
            raise SpecParseError(f"key 'well_shape': unknown shape {kind!r}")
        if "w_w" not in nums:
            raise SpecParseError("well_shape given without w_w")
        if nums["w_w"] <= 0:
            raise SpecParseError(f"key 'w_w': must be positive, got {nums['w_w']}")
        well_shape = ProfileShape(kind, nums.pop("w_w"))

    barrier = raw.pop("barrier_shape", _DEFAULT_BARRIERS.get(family, "x_gauss"))
    if barrier not in _BARRIER_NAMES:
        raise SpecParseError(f"key 'barrier_shape': unknown form {barrier!r}")

    if raw:
        raise SpecParseError(f"keys not applicable to family {family!r}: {sorted(raw)}")

    try:
        profile = PotentialProfile(
            family=family,
            v_w=nums.pop("v_w", 0.0),
            v_b=nums.pop("v_b", 0.0),
            d=nums.pop("d", 0.0),
            well_shape=well_shape,
            barrier_shape=barrier,
        )
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc
    return RunSpec(profile=profile, grid=grid, cfg=cfg)


def _parse_grid(value: str) -> tuple[float, float, int]:
    parts = value.split(":")
    if len(parts) != 3:
        raise SpecParseError(f"key 'grid': expected min:max:count, got {value!r}")
    try:
        e_min, e_max = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError:
        raise SpecParseError(f"key 'grid': bad numbers in {value!r}") from None
    if e_min <= 0:
        raise SpecParseError(f"key 'grid': E_min must be > 0, got {e_min}")
    if e_max <= e_min:
        raise SpecParseError(f"key 'grid': E_max must exceed E_min")
    if n < 2:
        raise SpecParseError(f"key 'grid': n_points must be >= 2, got {n}")
    return (e_min, e_max, n)


def render_spec(spec: RunSpec) -> str:
    """Canonical writer; parse_spec(render_spec(s)) round-trips."""
    p = spec.profile
    lines = [f"family={p.family}"]
    lines.append(f"v_w={p.v_w!r}")
    lines.append(f"v_b={p.v_b!r}")
    lines.append(f"d={p.d!r}")
    if p.well_shape is not None:
        lines.append(f"well_shape={p.well_shape.kind}")
        lines.append(f"w_w={p.well_shape.width!r}")
    if p.family not in ("free", "delta_pair") and isinstance(p.barrier_shape, str):
        lines.append(f"barrier_shape={p.barrier_shape}")
    e_min, e_max, n = spec.grid
    lines.append(f"grid={e_min!r}:{e_max!r}:{n}")
    cfg = spec.cfg
    lines.append(f"h={cfg.h!r}")
    lines.append(f"tail_epsilon={cfg.tail_epsilon!r}")
    lines.append(f"max_window={cfg.max_window!r}")
    lines.append(f"m={cfg.m!r}")
    lines.append(f"hbar={cfg.hbar!r}")
    return "\n".join(lines) + "\n"


def curve_to_csv(curve: TransmissionCurve) -> str:
    """Deterministic CSV text: header plus one 17-significant-digit row per energy."""
    rows = [CSV_HEADER]
    for i in range(curve.energies.size):
        rows.append(
            f"{curve.energies[i]:.17g},{curve.T[i]:.17g},{curve.T_b[i]:.17g},"
            f"{curve.R[i]:.17g},{curve.unitarity_defect[i]:.17g}"
        )
    return "\n".join(rows) + "\n"


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _plot_curve(curve: TransmissionCurve, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(curve.energies, curve.T, "-", color="black", label="T")
    ax.plot(curve.energies, curve.T_b, ":", color="black", label="T_b")
    ax.set_xlabel("E")
    ax.set_ylabel("T(E)")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)


def cmd_sweep(spec: RunSpec, csv_path: Path, plot_path: Path | None = None,
              stats: bool = False) -> int:
    """Run one sweep and write its CSV (optionally a plot and stats to stdout)."""
    e_min, e_max, n = spec.grid
    curve = run_sweep(spec.profile, uniform_grid(e_min, e_max, n), spec.cfg)
    _write_text(csv_path, curve_to_csv(curve))
    if plot_path is not None:
        _plot_curve(curve, plot_path)
    if stats:
        s = curve_stats(curve)
        print(
            f"n_local_maxima={s.n_local_maxima} max_excursion={s.max_excursion:.6g} "
            f"mean_excursion={s.mean_excursion:.6g} crossing_count={s.crossing_count}"
        )
    return 0


def _fig_specs() -> dict[str, list[tuple[str, PotentialProfile, tuple[float, float, int]]]]:
    """Captioned parameter sets of the published figure panels."""
    delta_grid = (0.01, 50.0, 500)
    comp_grid = (0.02, 10.0, 500)
    joined_grid = (0.03, 15.0, 500)

    def comp(v_w, d, w_w, kind="rectangular"):
        return PotentialProfile(
            family="finite_composite", v_w=v_w, v_b=11.5, d=d,
            well_shape=ProfileShape(kind, w_w) if v_w > 0 else None,
            barrier_shape="x_gauss",
        )

    figs: dict[str, list[tuple[str, PotentialProfile, tuple[float, float, int]]]] = {}
    for panel, (v_w, d) in {"a": (1, 3), "b": (1, 1), "c": (5, 3), "d": (5, 1)}.items():
        figs[f"fig2{panel}"] = [(
            f"vw{v_w}_d{d}",
            PotentialProfile(family="delta_pair", v_w=v_w, v_b=5.0, d=d),
            delta_grid,
        )]
    fig3 = {"a": (1, 5, 5), "b": (10, 0, 5), "c": (10, 5, 5), "d": (10, 5, 1)}
    for panel, (v_w, d, w_w) in fig3.items():
        figs[f"fig3{panel}"] = [(f"vw{v_w}_d{d}_ww{w_w}", comp(v_w, d, w_w), comp_grid)]
    fig4 = {"a": (5, 5, 5), "b": (10, 0, 5), "c": (10, 5, 5), "d": (10, 5, 1)}
    for panel, (v_w, d, w_w) in fig4.items():
        figs[f"fig4{panel}"] = [(
            f"vw{v_w}_d{d}_ww{w_w}", comp(v_w, d, w_w, "parabolic"), comp_grid,
        )]
    figs["fig5"] = [
        (kind, comp(10, 5, 0.4, kind), comp_grid)
        for kind in ("rectangular", "parabolic", "gaussian", "triangular")
    ]
    figs["fig6a"] = [
        (f"vw{v}", PotentialProfile(family="continuous_joined", v_w=v, v_b=5.0,
                                    barrier_shape="x_gauss"), joined_grid)
        for v in (5, 10, 15)
    ]
    figs["fig6b"] = [
        (f"vw{v}", PotentialProfile(family="discontinuous_joined", v_w=v, v_b=5.0,
                                    barrier_shape="gauss"), joined_grid)
        for v in (5, 10, 15)
    ]
    figs["fig6c"] = [(
        "vw2000",
        PotentialProfile(family="single_smooth", v_w=2000.0, v_b=5.0, d=8.0,
                         barrier_shape="gauss"),
        joined_grid,
    )]
    figs["fig6d"] = [(
        "vw5000",
        PotentialProfile(family="single_smooth", v_w=5000.0, v_b=5.0, d=8.0,
                         barrier_shape="gauss"),
        joined_grid,
    )]
    return figs


def cmd_figure(name: str, outdir: Path, cfg: NumericsConfig | None = None) -> int:
    """Emit the CSV curves of one published figure panel into outdir."""
    figs = _fig_specs()
    if name not in figs:
        raise QScatterError(
            f"unknown figure name {name!r}; choose from {sorted(figs)}"
        )
    cfg = cfg or NumericsConfig()
    for label, profile, (e_min, e_max, n) in figs[name]:
        curve = run_sweep(profile, uniform_grid(e_min, e_max, n), cfg)
        _write_text(outdir / f"{name}_{label}.csv", curve_to_csv(curve))
    return 0


def cmd_validate(quick: bool = False) -> int:
    """Run the acceptance suite; exit 0 only if every criterion passes."""
    from .validate import run_suite

    results = run_suite(quick=quick)
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: {r.detail}")
        ok = ok and r.passed
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qscatter",
        description="Transmission through a well next to a finite barrier",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run one sweep from a spec file")
    p_sweep.add_argument("spec_file", type=Path)
    p_sweep.add_argument("--csv", type=Path, default=None)
    p_sweep.add_argument("--plot", type=Path, default=None)
    p_sweep.add_argument("--stats", action="store_true")

    p_fig = sub.add_parser("figure", help="emit a published figure's curves")
    p_fig.add_argument("name")
    p_fig.add_argument("--outdir", type=Path, required=True)

    p_val = sub.add_parser("validate", help="run the acceptance suite")
    p_val.add_argument("--quick", action="store_true")

    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            spec = parse_spec(args.spec_file.read_text(encoding="utf-8"))
            csv_path = args.csv or args.spec_file.with_suffix(".csv")
            return cmd_sweep(spec, csv_path, args.plot, args.stats)
        if args.command == "figure":
            return cmd_figure(args.name, args.outdir)
        return cmd_validate(quick=args.quick)
    except (QScatterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
