"""Command-line front end: ``vfs certify|roots|solve|sweep|diagram``.

Every subcommand takes ``--config FILE`` plus optional ``--out DIR`` and
``--seed N`` overrides, writes its artifacts (JSON/CSV/binary) into the
output directory, prints a short human-readable summary and exits nonzero
when a certificate or check fails.  Outputs are deterministic for a fixed
config and seed.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import fileio
from .config import RunConfig, STUDIES, load_config
from .front import Side, build_g, estimate_sweep, solve_front, transform_source
from .grids import GridSpec
from .hemisphere import (
    NoRootFound,
    SampleStrategy,
    certify_sandwich,
    certify_simple_root,
    certify_weight_bounds,
    locate_roots,
    sample_hemisphere,
)
from .symbols import (
    Frequency,
    PhysicalParams,
    Regime,
    big_sigma,
    root_constants,
    weight_sigma,
)

__all__ = ["main", "run", "emit_heatmap", "stability_diagram", "builtin_sources"]

HEATMAP_FIELDS = ("abs_sigma_big", "abs_weight_sigma", "ratio")


def builtin_sources(grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic smooth real source pair, compactly supported in the box."""
    t, x = grid.t(), grid.x1()
    y, _ = grid.quadrature()
    tt = np.exp(-(((t - 0.35 * grid.Lt) / (0.07 * grid.Lt)) ** 2))[:, None, None]
    tt2 = np.exp(-(((t - 0.45 * grid.Lt) / (0.09 * grid.Lt)) ** 2))[:, None, None]
    xx = (0.6 + 0.4 * np.cos(2.0 * np.pi * x / grid.Lx))[None, :, None]
    xx2 = (0.5 + 0.5 * np.sin(2.0 * np.pi * x / grid.Lx)) [None, :, None]
    yy = np.exp(-(((y - 0.12 * grid.Ly) / (0.06 * grid.Ly)) ** 2))[None, None, :]
    yy2 = np.exp(-(((y - 0.18 * grid.Ly) / (0.08 * grid.Ly)) ** 2))[None, None, :]
    return (tt * xx * yy).astype(np.complex128), (0.7 * tt2 * xx2 * yy2).astype(np.complex128)


def stability_diagram(c: float, m_min: float, m_max: float, m_step: float) -> list[tuple]:
    """(mach, regime, root constant) rows over a mach sweep at fixed sound speed."""
    rows = []
    count = int(round((m_max - m_min) / m_step))
    for i in range(count + 1):
        mach = m_min + i * m_step
        if mach <= 0:
            continue
        params = PhysicalParams(v=mach * c, c=c)
        regime = params.regime()
        if regime is Regime.DEGENERATE:
            rows.append((mach, regime.value, math.nan))
        else:
            rows.append((mach, regime.value, root_constants(params)))
    return rows


def emit_heatmap(
    field: str,
    params: PhysicalParams,
    gamma: float,
    delta_range: tuple[float, float],
    eta_range: tuple[float, float],
    shape: tuple[int, int],
    path,
) -> None:
    """Rectangular (delta, eta) scan of a symbol field at fixed gamma > 0, as CSV."""
    if field not in HEATMAP_FIELDS:
        raise ValueError(f"field must be one of {HEATMAP_FIELDS}, got {field!r}")
    if not gamma > 0:
        raise ValueError("heatmaps are drawn at fixed gamma > 0")
    deltas = np.linspace(delta_range[0], delta_range[1], shape[0])
    etas = np.linspace(eta_range[0], eta_range[1], shape[1])
    dd, ee = np.meshgrid(deltas, etas, indexing="ij")
    freqs = Frequency(np.full_like(dd, gamma), dd, ee)
    if field == "abs_sigma_big":
        vals = np.abs(big_sigma(freqs, params))
    elif field == "abs_weight_sigma":
        vals = np.abs(weight_sigma(freqs, params))
    else:
        vals = np.abs(big_sigma(freqs, params)) / (np.abs(weight_sigma(freqs, params)) * freqs.lam)
    rows = [
        (float(dd[i, j]), float(ee[i, j]), float(vals[i, j]))
        for i in range(shape[0])
        for j in range(shape[1])
    ]
    fileio.write_csv(path, ["delta", "eta", field], rows)


def _load_side(spec: str, grid: GridSpec, side: Side):
    if spec == "builtin":
        raw_p, raw_m = builtin_sources(grid)
        return (raw_p if side is Side.PLUS else raw_m), grid
    return fileio.read_source(spec)


def _study_certify(cfg: RunConfig) -> int:
    params = cfg.params
    if params.regime() is not Regime.WEAKLY_STABLE:
        print("certify: the bound certificates require mach > sqrt(2)", file=sys.stderr)
        return 2
    sample = sample_hemisphere(
        cfg.sample["n"],
        SampleStrategy(cfg.sample["strategy"]),
        cfg.sample["gamma_floor"],
        params,
        seed=cfg.seed,
    )
    certs = [certify_sandwich(sample, params, cfg.sample["explosion_threshold"], seed=cfg.seed)]
    certs.extend(certify_weight_bounds(sample, params, cfg.sample["explosion_threshold"]))
    certs.append(
        certify_simple_root(
            params, radius=cfg.simple_root["radius"], n_points=cfg.simple_root["n_points"]
        )
    )
    fileio.write_json(cfg.out_dir / "certificates.json", [c.to_json_dict() for c in certs])
    if cfg.heatmap is not None:
        hm = cfg.heatmap
        emit_heatmap(
            hm["field"],
            params,
            hm["gamma"],
            (hm["delta_min"], hm["delta_max"]),
            (hm["eta_min"], hm["eta_max"]),
            (hm["n_delta"], hm["n_eta"]),
            cfg.out_dir / "heatmap.csv",
        )
    ok = True
    for cert in certs:
        status = "PASS" if cert.passed else "FAIL"
        ok &= cert.passed
        print(
            f"certificate {cert.ratio_name}: {status} "
            f"(min={cert.empirical_min:.6g}, max={cert.empirical_max:.6g}, n={cert.sample_size})"
        )
    return 0 if ok else 1


def _study_roots(cfg: RunConfig) -> int:
    c = cfg.roots["c"]
    tol = cfg.roots["tolerance"]
    rows = []
    ok = True
    for mach in cfg.roots["machs"]:
        params = PhysicalParams(v=mach * c, c=c)
        regime = params.regime()
        if regime is Regime.DEGENERATE:
            rows.append((mach, regime.value, math.nan, math.nan, math.nan, False))
            ok = False
            continue
        closed = c * root_constants(params)
        try:
            located = locate_roots(params, tolerance=tol)
            err = abs(abs(located) - closed) / closed
            rows.append((mach, regime.value, closed, located, err, True))
        except NoRootFound as exc:
            rows.append((mach, regime.value, closed, math.nan, math.nan, False))
            ok = False
            print(f"roots: mach={mach:g}: {exc}", file=sys.stderr)
    fileio.write_csv(
        cfg.out_dir / "roots.csv",
        ["mach", "regime", "closed_form", "located", "rel_error", "ok"],
        rows,
    )
    fileio.write_json(
        cfg.out_dir / "roots.json",
        [
            {
                "mach": r[0], "regime": r[1], "closed_form": r[2],
                "located": r[3], "rel_error": r[4], "ok": r[5],
            }
            for r in rows
        ],
    )
    for r in rows:
        print(f"root mach={r[0]:g} [{r[1]}]: located={r[3]:.12g} closed={r[2]:.12g}")
    return 0 if ok else 1


def _study_solve(cfg: RunConfig) -> int:
    raw_p, grid_p = _load_side(cfg.solve["source_plus"], cfg.grid, Side.PLUS)
    raw_m, grid_m = _load_side(cfg.solve["source_minus"], cfg.grid, Side.MINUS)
    if grid_p != grid_m:
        raise ValueError("plus and minus sources disagree on the grid")
    grid = grid_p
    fplus = transform_source(raw_p, Side.PLUS, grid)
    fminus = transform_source(raw_m, Side.MINUS, grid)
    g_hat = build_g(fplus, fminus, cfg.params)
    sol = solve_front(g_hat, grid, cfg.params, s=cfg.solve["s"], sigma_floor=cfg.solve["sigma_floor"])
    bin_path, json_path = fileio.write_front_solution(cfg.out_dir / "front", sol)
    print(f"solve [{sol.regime.value}]: wrote {bin_path} and {json_path}")
    for key, value in sorted(sol.report.items()):
        print(f"  {key} = {value}")
    return 0


def _study_sweep(cfg: RunConfig) -> int:
    raw_p, grid_p = _load_side(cfg.solve["source_plus"], cfg.grid, Side.PLUS)
    raw_m, grid_m = _load_side(cfg.solve["source_minus"], cfg.grid, Side.MINUS)
    if grid_p != grid_m:
        raise ValueError("plus and minus sources disagree on the grid")
    result = estimate_sweep(
        raw_p, raw_m, grid_p, cfg.params,
        gammas=cfg.sweep["gammas"], s=cfg.sweep["s"], slack=cfg.sweep["slack"],
    )
    columns = ["gamma", "front_aniso", "g_over_f", "front_plain"]
    rows = [
        tuple(row[k] if row[k] is not None else math.nan for k in columns)
        for row in result.rows
    ]
    fileio.write_csv(cfg.out_dir / "sweep.csv", columns, rows)
    fileio.write_json(
        cfg.out_dir / "sweep.json",
        {"rows": [dict(r) for r in result.rows], "passed": result.passed,
         "slack": result.slack, "s": result.s},
    )
    for row in result.rows:
        print(
            f"gamma={row['gamma']:g}: g_over_f={row['g_over_f']:.6g} "
            f"front_plain={row['front_plain']:.6g} front_aniso="
            + (f"{row['front_aniso']:.6g}" if row["front_aniso"] is not None else "n/a")
        )
    print(f"sweep bounded within slack {result.slack:g}: {'PASS' if result.passed else 'FAIL'}")
    return 0 if result.passed else 1


def _study_diagram(cfg: RunConfig) -> int:
    rows = stability_diagram(
        cfg.diagram["c"], cfg.diagram["m_min"], cfg.diagram["m_max"], cfg.diagram["m_step"]
    )
    fileio.write_csv(cfg.out_dir / "diagram.csv", ["mach", "regime", "root_constant"], rows)
    flips = [
        (rows[i][0], rows[i + 1][0])
        for i in range(len(rows) - 1)
        if rows[i][1] != rows[i + 1][1]
    ]
    print(f"diagram: {len(rows)} rows, regime changes at {flips}")
    return 0


_RUNNERS = {
    "certify": _study_certify,
    "roots": _study_roots,
    "solve": _study_solve,
    "sweep": _study_sweep,
    "diagram": _study_diagram,
}


def run(cfg: RunConfig) -> int:
    """Execute one configured study; returns the process exit code."""
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    return _RUNNERS[cfg.study](cfg)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="vfs",
        description="Vortex-sheet front toolkit: certificates, roots, solves, sweeps, diagrams.",
    )
    sub = parser.add_subparsers(dest="study", required=True)
    for study in STUDIES:
        p = sub.add_parser(study, help=f"run the {study} study from a config file")
        p.add_argument("--config", required=True, help="path to the INI-style run configuration")
        p.add_argument("--out", default=None, help="output directory (overrides [run] out)")
        p.add_argument("--seed", type=int, default=None, help="seed override (overrides [run] seed)")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, study=args.study, out_override=args.out, seed_override=args.seed)
        return run(cfg)
    except (ValueError, FileNotFoundError) as exc:
        print(f"vfs: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
