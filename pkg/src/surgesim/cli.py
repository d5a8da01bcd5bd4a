"""Command-line interface.

Subcommands cover the deterministic study (portrait, threshold), the
stochastic systems (simulate, sweep), and the closed-form density (fpk,
compare).  Outputs land under an output root resolved from --out, then the
SURGESIM_OUTPUT_ROOT environment variable, then ./surgesim_out; every file
is byte-reproducible for fixed inputs.

Exit codes: 0 on success, 1 when a computation fails (no equilibrium, no
transition, divergence), 2 on configuration or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__
from .config import CampaignConfig, load_campaign
from .errors import ConfigError, SurgeSimError
from .fpk import compare_to_empirical, stationary_pdf
from .io import (base_manifest, comparison_dict, output_root,
                 write_histogram_csv, write_json, write_pdf_csv, write_csv,
                 write_sweep_csv, write_trajectory_csv)
from .regular import RegularWave, classify, find_thresholds, standard_grid
from .seaway import synthesize
from .ship import (OperatingPoint, ShipParams, compute_alphas,
                   load_ship_params, solve_revs)
from .state import SurgeState
from .stats import pool_samples, reduce_ensemble, run_sweep
from .stochastic import (calibrate_noise, simulate_approx, simulate_colored,
                         simulate_white, simulate_white_ensemble)

__all__ = ["main", "build_parser"]


def _operating_point(p: ShipParams, fn: float) -> OperatingPoint:
    return solve_revs(p, p.speed_of_froude(fn))


def _regular_wave(args) -> RegularWave:
    return RegularWave(wavelength=args.wavelength, steepness=args.steepness,
                       force_amp=args.force_amp)


def _noise_from_config(cfg: CampaignConfig, reference):
    return calibrate_noise(reference, method=cfg.noise_method,
                           omega_ref=cfg.omega_ref, bandwidth=cfg.bandwidth)


def _cmd_portrait(args) -> int:
    p = load_ship_params(args.ship)
    wave = _regular_wave(args)
    op = _operating_point(p, args.fn)
    grid = standard_grid(wave, args.n_ic)
    portrait = classify(p, op, wave, grid,
                        horizon=args.horizon_periods * wave.period,
                        store_paths=False)
    out = output_root(args.out)
    write_csv(out / "portrait.csv", ["x0", "u0", "label"],
              [(ic.x, ic.u, label)
               for ic, label in zip(portrait.ics, portrait.labels)])
    alpha = compute_alphas(p, op)
    write_json(out / "portrait_manifest.json", base_manifest(
        "portrait", ship_path=args.ship,
        fn=args.fn, u_bar=op.u_bar, n_p=op.n_p,
        wavelength=wave.wavelength, steepness=wave.steepness,
        force_amp=wave.force_amp, celerity=wave.celerity,
        alpha=list(alpha),
        counts={label: portrait.count(label)
                for label in ("Captured", "Periodic", "Undecided")}))
    print(f"portrait: {portrait.count('Captured')} captured, "
          f"{portrait.count('Periodic')} periodic, "
          f"{portrait.count('Undecided')} undecided -> {out}")
    return 0


def _cmd_threshold(args) -> int:
    p = load_ship_params(args.ship)
    wave = _regular_wave(args)
    result = find_thresholds(p, wave, (args.fn_lo, args.fn_hi), tol=args.tol,
                             n_ic=args.n_ic, scan_points=args.scan_points,
                             horizon_periods=args.horizon_periods)
    out = output_root(args.out)
    write_json(out / "threshold.json", base_manifest(
        "threshold", ship_path=args.ship,
        wavelength=wave.wavelength, steepness=wave.steepness,
        force_amp=wave.force_amp,
        fn_celerity=p.froude(wave.celerity),
        fn_lwr=result.fn_lwr, fn_ups=result.fn_ups,
        bracket_lwr=result.bracket_lwr, bracket_ups=result.bracket_ups,
        iterations_lwr=result.iterations_lwr,
        iterations_ups=result.iterations_ups,
        tol=args.tol, fn_range=[args.fn_lo, args.fn_hi]))
    print(f"thresholds: lower {result.fn_lwr}, upper {result.fn_ups} -> {out}")
    return 0


def _cmd_simulate(args) -> int:
    p = load_ship_params(args.ship)
    cfg = load_campaign(args.config)
    system = args.system or cfg.system
    op = _operating_point(p, args.fn)
    horizon = args.horizon if args.horizon else cfg.transient + cfg.retained
    reference = synthesize(replace(cfg.spec, rng_seed=cfg.seed), cfg.force_model)
    ic = SurgeState()
    extra = {}
    if system == "colored":
        traj = simulate_colored(p, op, reference, ic, horizon, dt=cfg.dt,
                                record_stride=cfg.record_stride)
    elif system == "approx":
        traj = simulate_approx(p, op, reference, ic, horizon, dt=cfg.dt,
                               record_stride=cfg.record_stride)
    elif system == "white":
        noise = _noise_from_config(cfg, reference)
        traj = simulate_white(p, op, noise, reference.k_wp, ic, horizon,
                              cfg.white_dt, seed=cfg.seed,
                              record_stride=cfg.record_stride)
        extra = {"d_squared": noise.d_squared, "noise_method": noise.method}
    else:
        raise ConfigError(f"unknown system {system!r}")
    out = output_root(args.out)
    write_trajectory_csv(out / "trajectory.csv", traj)
    alpha = compute_alphas(p, op)
    write_json(out / "simulate_manifest.json", base_manifest(
        "simulate", ship_path=args.ship, config_path=args.config,
        system=system, fn=args.fn, u_bar=op.u_bar, n_p=op.n_p,
        horizon=horizon, seed=cfg.seed, alpha=list(alpha),
        omega_wp=reference.omega_wp, k_wp=reference.k_wp,
        gain=cfg.gain_descriptor, n_samples=len(traj), **extra))
    print(f"simulate [{system}] fn={args.fn}: {len(traj)} records -> {out}")
    return 0


def _cmd_sweep(args) -> int:
    p = load_ship_params(args.ship)
    cfg = load_campaign(args.config)
    if not cfg.fn_values:
        raise ConfigError(f"{args.config}: [sweep] fn_values is required")
    system = args.system or cfg.system
    workers = args.workers if args.workers else cfg.workers
    result = run_sweep(p, cfg.spec, cfg.force_model, cfg.fn_values,
                       system=system, n_paths=cfg.n_paths,
                       transient=cfg.transient, retained=cfg.retained,
                       dt=cfg.dt, white_dt=cfg.white_dt, seed=cfg.seed,
                       thin=cfg.thin, record_stride=cfg.record_stride,
                       workers=workers)
    out = output_root(args.out)
    write_sweep_csv(out / "sweep.csv", result)
    reference = synthesize(replace(cfg.spec, rng_seed=cfg.seed), cfg.force_model)
    points = []
    for pt in result.points:
        op = OperatingPoint(n_p=pt.n_p, u_bar=pt.u_bar, fn_bar=pt.fn)
        points.append({"fn": pt.fn, "u_bar": pt.u_bar, "n_p": pt.n_p,
                       "alpha": list(compute_alphas(p, op))})
    write_json(out / "sweep_manifest.json", base_manifest(
        "sweep", ship_path=args.ship, config_path=args.config,
        system=result.system, seed=result.seed, n_paths=result.n_paths,
        d_squared=result.d_squared, omega_wp=reference.omega_wp,
        k_wp=reference.k_wp, gain=cfg.gain_descriptor,
        noise_method=cfg.noise_method, points=points,
        fn_of_max_std=result.fn_of_max_std))
    print(f"sweep [{result.system}] {len(result.points)} points, "
          f"max std at fn={result.fn_of_max_std} -> {out}")
    return 0


def _cmd_fpk(args) -> int:
    p = load_ship_params(args.ship)
    cfg = load_campaign(args.config)
    op = _operating_point(p, args.fn)
    reference = synthesize(replace(cfg.spec, rng_seed=cfg.seed), cfg.force_model)
    noise = _noise_from_config(cfg, reference)
    spdf = stationary_pdf(p, op, noise, n_grid=args.n_grid)
    out = output_root(args.out)
    write_pdf_csv(out / "fpk.csv", spdf)
    write_json(out / "fpk_manifest.json", base_manifest(
        "fpk", ship_path=args.ship, config_path=args.config,
        fn=args.fn, u_bar=op.u_bar, n_p=op.n_p,
        alpha=list(spdf.alpha), d_squared=noise.d_squared,
        noise_method=noise.method, omega_wp=reference.omega_wp,
        k_wp=reference.k_wp, mean=spdf.mean, variance=spdf.variance,
        mode=spdf.mode, sigma_lin=spdf.sigma_lin,
        support=list(spdf.support)))
    print(f"fpk fn={args.fn}: mean={spdf.mean:.6g} var={spdf.variance:.6g} "
          f"-> {out}")
    return 0


def _cmd_compare(args) -> int:
    p = load_ship_params(args.ship)
    cfg = load_campaign(args.config)
    op = _operating_point(p, args.fn)
    reference = synthesize(replace(cfg.spec, rng_seed=cfg.seed), cfg.force_model)
    noise = _noise_from_config(cfg, reference)
    spdf = stationary_pdf(p, op, noise)
    horizon = cfg.transient + cfg.retained
    trajs = simulate_white_ensemble(p, op, noise, reference.k_wp, SurgeState(),
                                    horizon, cfg.white_dt, seed=cfg.seed,
                                    n_paths=cfg.n_paths,
                                    record_stride=cfg.record_stride,
                                    workers=cfg.workers)
    stats = reduce_ensemble(trajs, cfg.transient, thin=cfg.thin,
                            k_wp=reference.k_wp, u_bar=op.u_bar)
    samples = pool_samples(trajs, cfg.transient, thin=cfg.thin)
    comparison = compare_to_empirical(spdf, samples)
    out = output_root(args.out)
    write_pdf_csv(out / "fpk.csv", spdf)
    write_histogram_csv(out / "compare_hist.csv", comparison.bin_edges,
                        comparison.empirical_density)
    write_json(out / "compare.json", base_manifest(
        "compare", ship_path=args.ship, config_path=args.config,
        fn=args.fn, seed=cfg.seed, n_paths=cfg.n_paths,
        d_squared=noise.d_squared, noise_method=noise.method,
        k_wp=reference.k_wp, alpha=list(spdf.alpha),
        ks_phase=stats.ks_phase, qq_correlation=stats.qq_correlation,
        **comparison_dict(comparison)))
    print(f"compare fn={args.fn}: L1={comparison.l1_distance:.4f} "
          f"KS={comparison.ks_statistic:.4f} "
          f"(1% critical {comparison.ks_critical_1pct:.4f}) -> {out}")
    return 0


def _add_regular_args(sub) -> None:
    sub.add_argument("--wavelength", type=float, required=True,
                     help="wavelength (m)")
    sub.add_argument("--steepness", type=float, default=0.02,
                     help="wave steepness H/lambda")
    sub.add_argument("--force-amp", type=float, required=True,
                     help="surge force amplitude (N)")
    sub.add_argument("--n-ic", type=int, default=8,
                     help="initial conditions spread over one wavelength")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surgesim",
        description="Nonlinear ship surge in regular and irregular following seas.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("portrait",
                         help="classify capture vs surging over an IC fan")
    sp.add_argument("--ship", required=True, help="ship parameter file")
    sp.add_argument("--fn", type=float, required=True, help="nominal Froude number")
    _add_regular_args(sp)
    sp.add_argument("--horizon-periods", type=float, default=200.0,
                    help="classification horizon in wave periods")
    sp.add_argument("--out", help="output directory")
    sp.set_defaults(func=_cmd_portrait)

    sp = subs.add_parser("threshold",
                         help="bisect the capture onset and release speeds")
    sp.add_argument("--ship", required=True, help="ship parameter file")
    _add_regular_args(sp)
    sp.add_argument("--fn-lo", type=float, required=True, help="search range start")
    sp.add_argument("--fn-hi", type=float, required=True, help="search range end")
    sp.add_argument("--tol", type=float, default=2e-3,
                    help="bracket tolerance on each threshold")
    sp.add_argument("--scan-points", type=int, default=11,
                    help="coarse scan resolution before bisection")
    sp.add_argument("--horizon-periods", type=float, default=300.0,
                    help="classification horizon in wave periods")
    sp.add_argument("--out", help="output directory")
    sp.set_defaults(func=_cmd_threshold)

    sp = subs.add_parser("simulate", help="integrate one stochastic path")
    sp.add_argument("--ship", required=True, help="ship parameter file")
    sp.add_argument("--config", required=True, help="campaign file")
    sp.add_argument("--fn", type=float, required=True, help="nominal Froude number")
    sp.add_argument("--system", choices=("colored", "approx", "white"),
                    help="override the campaign system")
    sp.add_argument("--horizon", type=float, help="override the time span (s)")
    sp.add_argument("--out", help="output directory")
    sp.set_defaults(func=_cmd_simulate)

    sp = subs.add_parser("sweep", help="ensemble statistics over a Froude grid")
    sp.add_argument("--ship", required=True, help="ship parameter file")
    sp.add_argument("--config", required=True, help="campaign file")
    sp.add_argument("--system", choices=("colored", "approx", "white"),
                    help="override the campaign system")
    sp.add_argument("--workers", type=int,
                    help="thread count (results are identical for any value)")
    sp.add_argument("--out", help="output directory")
    sp.set_defaults(func=_cmd_sweep)

    sp = subs.add_parser("fpk", help="closed-form stationary velocity density")
    sp.add_argument("--ship", required=True, help="ship parameter file")
    sp.add_argument("--config", required=True, help="campaign file")
    sp.add_argument("--fn", type=float, required=True, help="nominal Froude number")
    sp.add_argument("--n-grid", type=int, default=200_001,
                    help="quadrature grid size")
    sp.add_argument("--out", help="output directory")
    sp.set_defaults(func=_cmd_fpk)

    sp = subs.add_parser("compare",
                         help="white-noise ensemble vs closed-form density")
    sp.add_argument("--ship", required=True, help="ship parameter file")
    sp.add_argument("--config", required=True, help="campaign file")
    sp.add_argument("--fn", type=float, required=True, help="nominal Froude number")
    sp.add_argument("--out", help="output directory")
    sp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SurgeSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
