"""Batch-simulation command line: roc | power-sweep | distance-sweep |
antenna-sweep | calibrate-eig | selftest.

Exit codes: 0 success, 2 configuration error, 3 numeric failure.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from .errors import ConfigurationError, NumericError
from .harness import (
    ExperimentSpec,
    run_experiment,
    trial_rng,
    write_outputs,
    STREAM_EIGCAL,
)
from .model import NetworkConfig

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

DEFAULT_GRIDS = {
    "roc": ("pfa_grid", (0.01, 0.02, 0.05, 0.1, 0.2, 0.5)),
    "power_sweep": ("sweep_grid", (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)),
    "distance_sweep": ("sweep_grid", tuple(float(x) for x in range(1, 9))),
    "antenna_sweep": ("sweep_grid", tuple(range(1, 9))),
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="losense",
        description="Passive-eavesdropper detection experiments (CSV output).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="scenario JSON path")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seed", type=int, default=0, help="master seed (u64)")
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument(
            "--scale",
            type=int,
            default=1,
            help="divide M and trials by this factor for desk-scale runs",
        )
        p.add_argument(
            "--workers",
            type=int,
            default=os.cpu_count() or 1,
            help="parallel worker processes (results are worker-count invariant)",
        )

    for name in ("roc", "power-sweep", "distance-sweep", "antenna-sweep"):
        add_common(sub.add_parser(name))
    cal = sub.add_parser("calibrate-eig", help="fit the scaled-eigenvalue CDF")
    add_common(cal)
    sub.add_parser("selftest", help="run quick construction checks")
    return parser


def _scaled_config(config, scale):
    if scale <= 1:
        return config
    return config.replace(M=max(config.n_b, config.M // scale))


def _scaled_trials(trials, scale):
    return max(100, trials // scale) if scale > 1 else trials


def _run_experiment_command(name, args):
    config = NetworkConfig.from_file(args.config)
    config = _scaled_config(config, args.scale)
    grid_field, grid = DEFAULT_GRIDS[name]
    spec = ExperimentSpec(
        name=name,
        config=config,
        trials=_scaled_trials(args.trials, args.scale),
        master_seed=args.seed,
        **{grid_field: grid},
    )
    result = run_experiment(spec, workers=args.workers)
    paths = write_outputs(result, args.out)
    for path in paths:
        print(path)
    return EXIT_OK


def _run_calibrate(args):
    config = NetworkConfig.from_file(args.config)
    config = _scaled_config(config, args.scale)
    from .randmat import calibrate_eig_cdf_params

    rng = trial_rng(args.seed, STREAM_EIGCAL)
    params = calibrate_eig_cdf_params(
        config.M, config.n_b, max(1000, args.trials), rng
    )
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "eig_cdf_params.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(
            {"m": params.m, "k": params.k, "varpi": params.varpi, "n_b": params.n_b},
            fh,
            indent=2,
        )
    print(path)
    return EXIT_OK


def _selftest():
    """Cheap closed-form checks of every layer; exits nonzero on failure."""
    from . import adversary, detect, rates, specfun
    from .model import make_leakage
    from .randmat import EigCdfParams, scaled_max_eig_cdf

    checks = []

    def check(label, ok):
        checks.append((label, bool(ok)))
        print(f"{'ok' if ok else 'FAIL'}  {label}")

    check("bessel_i(0, 0) == 1", specfun.bessel_i(0, 0.0) == 1.0)
    check("bessel_i(1, 0) == 0", specfun.bessel_i(1, 0.0) == 0.0)
    check("marcum_q(3, 2, 0) == 1", specfun.marcum_q(3, 2.0, 0.0) == 1.0)
    check(
        "marcum_q(1, 0, b) is the Rayleigh tail",
        abs(specfun.marcum_q(1, 0.0, 2.0) - math.exp(-2.0)) < 1e-12,
    )
    check(
        "marcum inverse roundtrip at p=1",
        specfun.marcum_q_inverse_b(2, 1.0, 1.0) == 0.0,
    )
    check("reg_gamma_p(s, 0) == 0", specfun.reg_gamma_p(2.5, 0.0) == 0.0)
    check(
        "reg_gamma_p(1, x) is the exponential CDF",
        abs(specfun.reg_gamma_p(1.0, 0.7) - (1 - math.exp(-0.7))) < 1e-12,
    )
    check("gauss_2f1 at x=0", specfun.gauss_2f1(0.3, 0.7, 1.1, 0.0) == 1.0)
    check(
        "gauss_2f1 log closed form",
        abs(specfun.gauss_2f1(1, 1, 2, 0.5) + math.log(0.5) / 0.5) < 1e-9,
    )
    check("gaussian_q(0) == 0.5", specfun.gaussian_q(0.0) == 0.5)
    check("gaussian_q_inverse(0.5) == 0", abs(specfun.gaussian_q_inverse(0.5)) < 1e-12)

    params = EigCdfParams(m=2048, k=500.0, varpi=0.33, n_b=4)
    check("eig CDF at the support floor", scaled_max_eig_cdf(params, 1.0) == 0.0)

    rng = np.random.default_rng(7)
    leak = make_leakage(4, -50.0, 0.4 * math.pi, 64, "constant-random", rng)
    check(
        "leakage tone power matches -50 dBm",
        abs(0.5 * leak.amplitudes[0] ** 2 - 1e-5) < 1e-18,
    )
    y = np.eye(2, dtype=complex)
    check("ed_statistic of I2 == 2", detect.ed_statistic(y) == 2.0)
    m_e = rng.standard_normal((2, 8)) + 1j * rng.standard_normal((2, 8))
    check(
        "mf self-correlation equals ||M_E||_F^2",
        abs(detect.mf_statistic(m_e, m_e) - detect.fro2(m_e)) < 1e-9,
    )
    check("fuse OR arithmetic", abs(rates.fuse(0.3, 0.4, "OR") - 0.58) < 1e-15)
    check("fuse AND arithmetic", rates.fuse(1.0, 1.0, "AND") == 1.0)
    check(
        "avg_secrecy_rate no-Eve world",
        rates.avg_secrecy_rate(3.0, 1.0, 2.0, 0.5, 0.7, 0.0, 0.0) == 3.0 * 0.7,
    )
    geo = adversary.Geometry(np.zeros(2), np.array([10.0, 0.0]))
    placed = adversary.place_eve(geo, 5.0)
    check(
        "place_eve midpoint",
        np.allclose(placed.eve_pos, [5.0, 0.0], atol=1e-12),
    )
    failed = [label for label, ok in checks if not ok]
    if failed:
        print(f"{len(failed)} selftest check(s) failed", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"all {len(checks)} selftest checks passed")
    return EXIT_OK


def cli_main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "selftest":
            return _selftest()
        if args.command == "calibrate-eig":
            return _run_calibrate(args)
        return _run_experiment_command(args.command.replace("-", "_"), args)
    except (ConfigurationError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
