"""Experiment orchestration: ROC, power, distance, and antenna sweeps.

Determinism contract: per-trial generators derive from
``SeedSequence(master_seed, spawn_key=(stream, trial))``, so identical
(spec, master_seed) pairs produce identical rows for any worker count.
Workers share no mutable state; results land in preallocated indexed slots
and aggregation is single-threaded.
"""

import csv
import hashlib
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from . import detect, rates
from .errors import ConfigurationError
from .model import (
    NetworkConfig,
    draw_channels,
    make_leakage,
    mean_matrix,
    mirror_for_alice,
)
from .randmat import calibrate_eig_cdf_params, sample_complex_gaussian

# stream labels for seed derivation
STREAM_ROC = 1
STREAM_POWER = 2
STREAM_DISTANCE = 3
STREAM_ANTENNA = 4
STREAM_EIGCAL = 5

EIG_CALIBRATION_TRIALS = 4000
PHASE_MODE = "constant-random"


def trial_rng(master_seed, stream, index=None):
    key = (stream,) if index is None else (stream, int(index))
    return np.random.default_rng(np.random.SeedSequence(int(master_seed), spawn_key=key))


@dataclass
class ExperimentSpec:
    """What to run: experiment name, scenario, grids, and seeding."""

    name: str
    config: NetworkConfig
    pfa_grid: tuple = ()
    sweep_grid: tuple = ()
    trials: int = 1000
    master_seed: int = 0
    fusion_rule: str = "OR"
    detectors: tuple = ("ED", "MF", "GLRT1", "GLRT2")
    pfa: float = 0.1  # sensing target for the rate sweeps
    rho: float = 0.5  # data-power fraction of the artificial-noise split
    offset: float = 1.0  # parallel-line offset for the distance sweep (m)

    def __post_init__(self):
        valid = {"roc", "power_sweep", "distance_sweep", "antenna_sweep"}
        if self.name not in valid:
            raise ConfigurationError(f"unknown experiment {self.name!r}")
        if self.trials < 100:
            raise ConfigurationError("trials must be >= 100")
        grid = self.pfa_grid if self.name == "roc" else self.sweep_grid
        if len(grid) == 0:
            raise ConfigurationError("experiment grid must be nonempty")
        if list(grid) != sorted(grid):
            raise ConfigurationError("experiment grid must be sorted")
        if self.fusion_rule not in ("AND", "OR"):
            raise ConfigurationError("fusion_rule must be AND or OR")
        if self.name == "roc" and not self.detectors:
            raise ConfigurationError("roc needs at least one detector")

    def to_dict(self):
        d = asdict(self)
        d["config"] = asdict(self.config)
        d["pfa_grid"] = list(self.pfa_grid)
        d["sweep_grid"] = list(self.sweep_grid)
        d["detectors"] = list(self.detectors)
        return d


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    rows: list
    wall_time: float
    columns: tuple = ()
    by_strategy: dict = field(default_factory=dict)

    def write_csv(self, path):
        _write_csv(path, self.columns, self.rows)
        return path

    def write_manifest(self, path, csv_paths):
        payload = {
            "spec": self.spec.to_dict(),
            "config_hash": config_content_hash(self.spec.config),
            "wall_time_s": self.wall_time,
            "outputs": [os.path.basename(p) for p in csv_paths],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
        return path


def config_content_hash(config):
    """Git-style blob hash of the canonical config JSON."""
    blob = config.to_json().encode("utf-8")
    return hashlib.sha1(b"blob %d\0" % len(blob) + blob).hexdigest()


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(path, columns, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])


def _map_trials(fn, n_trials, workers):
    """Apply ``fn(t)`` for t in range(n_trials), optionally across processes."""
    if workers <= 1:
        return [fn(t) for t in range(n_trials)]
    blocks = np.array_split(np.arange(n_trials), workers * 4)
    out = [None] * n_trials
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_block, fn, block.tolist()) for block in blocks if block.size]
        for fut in futures:
            for t, value in fut.result():
                out[t] = value
    return out


def _run_block(fn, indices):
    return [(t, fn(t)) for t in indices]


def _eig_params_for(config, master_seed):
    rng = trial_rng(master_seed, STREAM_EIGCAL)
    return calibrate_eig_cdf_params(config.M, config.n_b, EIG_CALIBRATION_TRIALS, rng)


def _cached_pd_bound(thr, m_e, m_samples, n_b, eig_params):
    # With epoch-constant phases the effective correlation matrix is a
    # rank-one bump of the identity, so its smallest eigenvalue (hence the
    # bound argument) repeats across trials; memoize on the rounded argument.
    from .randmat import eigvalsh_desc

    varsigma = float(eigvalsh_desc(detect.effective_correlation(m_e, m_samples))[-1])
    return _pd_bound_at(round(varsigma / thr, 12), eig_params)


@lru_cache(maxsize=4096)
def _pd_bound_at(y, eig_params):
    from .randmat import scaled_max_eig_cdf

    if y < 1.0:
        return 0.0
    return scaled_max_eig_cdf(eig_params, y)


# ----------------------------------------------------------------------
# ROC experiment
# ----------------------------------------------------------------------

@dataclass
class _RocTask:
    config: NetworkConfig
    detectors: tuple
    pfa_grid: tuple
    master_seed: int
    eig_params: object = None

    def __call__(self, t):
        cfg = self.config
        rng = trial_rng(self.master_seed, STREAM_ROC, t)
        channels = draw_channels(cfg, rng)
        leak_a = make_leakage(
            cfg.n_a, cfg.leak_dbm_alice, cfg.omega_tilde, cfg.M, PHASE_MODE, rng
        )
        leak_e = make_leakage(
            cfg.n_e, cfg.leak_dbm_eve, cfg.omega, cfg.M, PHASE_MODE, rng
        )
        m_a = mean_matrix(channels.h_ba, cfg.d_ab, cfg.alpha, leak_a)
        m_e = mean_matrix(channels.h_be, cfg.d_be, cfg.alpha, leak_e)
        noise = sample_complex_gaussian(
            cfg.n_b, cfg.M, np.zeros((cfg.n_b, cfg.M)), cfg.sigma_b2, rng
        )
        y0 = m_a + noise  # H0 epoch
        y1 = y0 + m_e  # H1 epoch, paired noise

        n_pfa = len(self.pfa_grid)
        shape = (len(self.detectors), n_pfa)
        h0_hit = np.zeros(shape, dtype=bool)
        h1_hit = np.zeros(shape, dtype=bool)
        thresholds = np.zeros(shape)
        pd_theory = np.full(shape, np.nan)
        pfa_theory = np.full(shape, np.nan)
        dof_args = (cfg.M, cfg.n_b)

        for d_idx, det in enumerate(self.detectors):
            kind = detect.DetectorKind(det)
            if kind is detect.DetectorKind.ED:
                s0, s1 = detect.fro2(y0), detect.fro2(y1)
                for i, pfa in enumerate(self.pfa_grid):
                    thr = detect.ed_calibrate(pfa, m_a, cfg.sigma_b2, *dof_args)
                    thresholds[d_idx, i] = thr
                    h0_hit[d_idx, i] = s0 >= thr
                    h1_hit[d_idx, i] = s1 >= thr
                    pfa_theory[d_idx, i] = pfa
                    pd_theory[d_idx, i] = detect.ed_theoretical_pd(
                        thr, m_a, m_e, cfg.sigma_b2, *dof_args
                    )
            elif kind is detect.DetectorKind.MF:
                s0 = detect.mf_statistic(y0, m_e)
                s1 = detect.mf_statistic(y1, m_e)
                for i, pfa in enumerate(self.pfa_grid):
                    thr = detect.mf_calibrate(pfa, m_e, m_a, cfg.sigma_b2)
                    thresholds[d_idx, i] = thr
                    h0_hit[d_idx, i] = s0 >= thr
                    h1_hit[d_idx, i] = s1 >= thr
                    pfa_theory[d_idx, i] = pfa
                    pd_theory[d_idx, i] = detect.mf_theoretical_pd(
                        thr, m_e, m_a, cfg.sigma_b2
                    )
            elif kind is detect.DetectorKind.GLRT1:
                s0 = detect.glrt1_statistic(y0, m_a, m_e)
                s1 = detect.glrt1_statistic(y1, m_a, m_e)
                for i, pfa in enumerate(self.pfa_grid):
                    thr = detect.glrt1_calibrate(
                        pfa, m_e, cfg.M, cfg.n_b, self.eig_params
                    )
                    thresholds[d_idx, i] = thr
                    h0_hit[d_idx, i] = s0 >= thr
                    h1_hit[d_idx, i] = s1 >= thr
                    # the threshold is calibrated so its P_FA upper bound
                    # equals the target; the P_D column is the lower bound
                    pfa_theory[d_idx, i] = pfa
                    pd_theory[d_idx, i] = _cached_pd_bound(
                        thr, m_e, cfg.M, cfg.n_b, self.eig_params
                    )
            elif kind is detect.DetectorKind.GLRT2:
                s0 = detect.glrt2_statistic(y0, m_a, cfg.omega)
                s1 = detect.glrt2_statistic(y1, m_a, cfg.omega)
                for i, pfa in enumerate(self.pfa_grid):
                    thr, pd = detect.glrt2_calibrate_and_curves(
                        pfa, m_a, m_e, cfg.sigma_b2, *dof_args
                    )
                    thresholds[d_idx, i] = thr
                    h0_hit[d_idx, i] = s0 >= thr
                    h1_hit[d_idx, i] = s1 >= thr
                    pfa_theory[d_idx, i] = pfa
                    pd_theory[d_idx, i] = pd
        return h0_hit, h1_hit, thresholds, pfa_theory, pd_theory


ROC_COLUMNS = (
    "kind",
    "pfa_target",
    "threshold",
    "pfa_emp",
    "pd_emp",
    "pfa_theory",
    "pd_theory",
    "trials",
    "seed",
)


def run_roc(spec, workers=1):
    """Empirical and theoretical ROC points for the selected detectors.

    Within a trial every detector sees the same observation (paired noise);
    the prior beta plays no role because the ROC conditions on each
    hypothesis.
    """
    start = time.time()
    eig_params = None
    if "GLRT1" in spec.detectors:
        eig_params = _eig_params_for(spec.config, spec.master_seed)
    task = _RocTask(
        config=spec.config,
        detectors=tuple(spec.detectors),
        pfa_grid=tuple(spec.pfa_grid),
        master_seed=spec.master_seed,
        eig_params=eig_params,
    )
    results = _map_trials(task, spec.trials, workers)
    h0_hit = np.array([r[0] for r in results])
    h1_hit = np.array([r[1] for r in results])
    thresholds = np.array([r[2] for r in results])
    pfa_theory = np.array([r[3] for r in results])
    pd_theory = np.array([r[4] for r in results])

    rows = []
    for d_idx, det in enumerate(spec.detectors):
        for i, pfa in enumerate(spec.pfa_grid):
            rows.append(
                {
                    "kind": det,
                    "pfa_target": float(pfa),
                    "threshold": float(np.median(thresholds[:, d_idx, i])),
                    "pfa_emp": float(np.mean(h0_hit[:, d_idx, i])),
                    "pd_emp": float(np.mean(h1_hit[:, d_idx, i])),
                    "pfa_theory": float(np.mean(pfa_theory[:, d_idx, i])),
                    "pd_theory": float(np.mean(pd_theory[:, d_idx, i])),
                    "trials": spec.trials,
                    "seed": spec.master_seed,
                }
            )
    return ExperimentResult(spec, rows, time.time() - start, ROC_COLUMNS)


# ----------------------------------------------------------------------
# Fusion + rate Monte Carlo shared by the sweeps
# ----------------------------------------------------------------------

def _local_decision(detector, cfg, m_a, m_e, y, pfa, eig_params):
    kind = detect.DetectorKind(detector)
    if kind is detect.DetectorKind.ED:
        thr = detect.ed_calibrate(pfa, m_a, cfg.sigma_b2, cfg.M, cfg.n_b)
        return detect.fro2(y) >= thr
    if kind is detect.DetectorKind.MF:
        thr = detect.mf_calibrate(pfa, m_e, m_a, cfg.sigma_b2)
        return detect.mf_statistic(y, m_e) >= thr
    if kind is detect.DetectorKind.GLRT1:
        thr = detect.glrt1_calibrate(pfa, m_e, cfg.M, cfg.n_b, eig_params)
        return detect.glrt1_statistic(y, m_a, m_e) >= thr
    if kind is detect.DetectorKind.GLRT2:
        thr, _ = detect.glrt2_calibrate_and_curves(
            pfa, m_a, None, cfg.sigma_b2, cfg.M, cfg.n_b
        )
        return detect.glrt2_statistic(y, m_a, cfg.omega) >= thr
    raise ConfigurationError(f"unknown detector {detector!r}")


def _sense_epoch(config, channels, present, rng):
    """One silent-period epoch: observations at Bob and at Alice.

    Returns a list of (cfg, m_a, m_e, y) tuples, one per sensor, so several
    detectors can be evaluated on the same observations.
    """
    sensors = []
    for cfg, chans in (
        (config, channels),
        mirror_for_alice(config, channels),
    ):
        leak_a = make_leakage(
            cfg.n_a, cfg.leak_dbm_alice, cfg.omega_tilde, cfg.M, PHASE_MODE, rng
        )
        leak_e = make_leakage(
            cfg.n_e, cfg.leak_dbm_eve, cfg.omega, cfg.M, PHASE_MODE, rng
        )
        m_a = mean_matrix(chans.h_ba, cfg.d_ab, cfg.alpha, leak_a)
        m_e = mean_matrix(chans.h_be, cfg.d_be, cfg.alpha, leak_e)
        noise = sample_complex_gaussian(
            cfg.n_b, cfg.M, np.zeros((cfg.n_b, cfg.M)), cfg.sigma_b2, rng
        )
        y = m_a + m_e + noise if present else m_a + noise
        sensors.append((cfg, m_a, m_e, y))
    return sensors


def _sense_both(config, channels, present, detector, pfa, rng, eig_params):
    """Local sensing decisions at Bob and at Alice for one epoch."""
    return [
        _local_decision(detector, cfg, m_a, m_e, y, pfa, eig_params)
        for cfg, m_a, m_e, y in _sense_epoch(config, channels, present, rng)
    ]


def _block_rates(config, channels, rho):
    """Per-block rate quantities for one channel realization."""
    cfg = config
    q_full = rates.waterfill(
        channels.h_ba, cfg.p_a, cfg.sigma_b2, cfg.d_ab, cfg.alpha
    )
    r_b = rates.bob_rate(channels.h_ba, q_full, cfg.d_ab, cfg.alpha, cfg.sigma_b2)
    r_e_full = rates.leakage_rate(
        channels.h_ea,
        q_full,
        rates.EveNoiseCov(cfg.sigma_e2 * np.eye(cfg.n_e)),
        cfg.d_ae,
        cfg.alpha,
    )
    try:
        design = rates.an_design(
            channels.h_ba, cfg.p_a, rho, cfg.sigma_b2, cfg.d_ab, cfg.alpha
        )
    except ConfigurationError:
        # no null space (n_a <= rank): fall back to data-only transmission
        design = rates.an_design(
            channels.h_ba, cfg.p_a, 1.0, cfg.sigma_b2, cfg.d_ab, cfg.alpha
        )
    r_b_tilde = rates.bob_rate(
        channels.h_ba, design.q_data, cfg.d_ab, cfg.alpha, cfg.sigma_b2
    )
    z_e = rates.eve_noise_cov(
        channels.h_ea, design.q_an, cfg.sigma_e2, cfg.d_ae, cfg.alpha
    )
    r_e_an = rates.leakage_rate(channels.h_ea, design.q_data, z_e, cfg.d_ae, cfg.alpha)
    r_s = max(0.0, r_b_tilde - r_e_an)
    return {
        "r_b": r_b,
        "r_e_full": r_e_full,
        "r_b_tilde": r_b_tilde,
        "r_s": r_s,
    }


def _block_value(block, present, detected):
    """Achieved secrecy-relevant rate of one block (signed when missed)."""
    if present and detected:
        return block["r_s"]
    if present and not detected:
        return block["r_b"] - block["r_e_full"]
    if detected:  # false consensus
        return block["r_b_tilde"]
    return block["r_b"]


@dataclass
class _FusionTask:
    config: NetworkConfig
    detector: str
    pfa: float
    master_seed: int
    fusion_rule: str
    rho: float
    stream: int
    eig_params: object = None

    def __call__(self, t):
        cfg = self.config
        rng = trial_rng(self.master_seed, self.stream, t)
        present = bool(rng.uniform() < cfg.beta)
        channels = draw_channels(cfg, rng)
        d_bob, d_alice = _sense_both(
            cfg, channels, present, self.detector, self.pfa, rng, self.eig_params
        )
        if self.fusion_rule == "AND":
            detected = d_bob and d_alice
        else:
            detected = d_bob or d_alice
        block = _block_rates(cfg, channels, self.rho)
        return {
            "present": present,
            "detected": bool(detected),
            "d_bob": bool(d_bob),
            "d_alice": bool(d_alice),
            "value": _block_value(block, present, detected),
            **block,
        }


def fusion_rate_mc(
    config,
    detector,
    pfa,
    trials,
    master_seed,
    fusion_rule="OR",
    rho=0.5,
    stream=STREAM_ANTENNA,
    workers=1,
    eig_params=None,
):
    """Dual-sensor detection plus block rate accounting over many epochs.

    Returns aggregate p_dc / p_fc (conditional on Eve's presence/absence),
    ergodic rates, and the block-averaged secrecy rate r_bar_s.
    """
    if detector == "GLRT1" and eig_params is None:
        eig_params = _eig_params_for(config, master_seed)
    task = _FusionTask(
        config=config,
        detector=detector,
        pfa=pfa,
        master_seed=master_seed,
        fusion_rule=fusion_rule,
        rho=rho,
        stream=stream,
        eig_params=eig_params,
    )
    details = _map_trials(task, trials, workers)
    present = np.array([d["present"] for d in details])
    detected = np.array([d["detected"] for d in details])
    values = np.array([d["value"] for d in details])
    n_present = int(np.sum(present))
    n_absent = trials - n_present
    p_dc = float(np.mean(detected[present])) if n_present else math.nan
    p_fc = float(np.mean(detected[~present])) if n_absent else math.nan
    stats = {
        "p_dc": p_dc,
        "p_fc": p_fc,
        "r_bar_s": float(np.mean(values)),
        "r_b": float(np.mean([d["r_b"] for d in details])),
        "r_s": float(np.mean([d["r_s"] for d in details])),
        "r_e": float(np.mean([d["r_e_full"] for d in details])),
        "r_b_tilde": float(np.mean([d["r_b_tilde"] for d in details])),
        "n_present": n_present,
        "details": details,
    }
    stats["report"] = rates.RateReport(
        r_b=stats["r_b"],
        r_s=stats["r_s"],
        r_e=stats["r_e"],
        r_b_tilde=stats["r_b_tilde"],
        r_bar_s=max(0.0, stats["r_bar_s"]),
        p_dc=p_dc,
        p_fc=p_fc,
    )
    return stats


# ----------------------------------------------------------------------
# Sweeps
# ----------------------------------------------------------------------

RATE_COLUMNS = (
    "sweep_var",
    "r_b",
    "r_s",
    "r_e",
    "r_bar_s",
    "p_dc",
    "p_fc",
    "beta",
    "trials",
    "seed",
)

POWER_STRATEGIES = ("ed_adaptive", "glrt2_adaptive", "non_adaptive")


@dataclass
class _PowerTrial:
    """Per-trial sensing for the power sweep; both detectors share the epoch."""

    config: NetworkConfig
    pfa: float
    master_seed: int

    def __call__(self, t):
        c = self.config
        rng = trial_rng(self.master_seed, STREAM_POWER, t)
        present = bool(rng.uniform() < c.beta)
        channels = draw_channels(c, rng)
        sensors = _sense_epoch(c, channels, present, rng)
        dec = {}
        for det in ("ED", "GLRT2"):
            dec[det] = tuple(
                _local_decision(det, cfg, m_a, m_e, y, self.pfa, None)
                for cfg, m_a, m_e, y in sensors
            )
        return present, channels, dec


def run_power_sweep(spec, workers=1):
    """Block-average secrecy rate versus transmit power for three strategies.

    Sensing does not depend on P_a, so per-trial channels, Eve presence, and
    both adaptive decision sets are drawn once and shared across the grid
    (and across strategies, for paired comparisons).
    """
    start = time.time()
    cfg = spec.config
    trial_data = _map_trials(
        _PowerTrial(cfg, spec.pfa, spec.master_seed), spec.trials, workers
    )

    rows = []
    by_strategy = {s: [] for s in POWER_STRATEGIES}
    for p_a in spec.sweep_grid:
        cfg_p = cfg.replace(p_a=float(p_a))
        per_strategy = {
            s: {"values": [], "detected_present": [], "detected_absent": []}
            for s in POWER_STRATEGIES
        }
        acc = {"r_b": [], "r_s": [], "r_e": [], "r_b_tilde": []}
        for present, channels, dec in trial_data:
            block = _block_rates(cfg_p, channels, spec.rho)
            acc["r_b"].append(block["r_b"])
            acc["r_s"].append(block["r_s"])
            acc["r_e"].append(block["r_e_full"])
            acc["r_b_tilde"].append(block["r_b_tilde"])
            for strat in POWER_STRATEGIES:
                if strat == "non_adaptive":
                    detected = True
                else:
                    det = "ED" if strat == "ed_adaptive" else "GLRT2"
                    d_bob, d_alice = dec[det]
                    detected = (
                        (d_bob and d_alice)
                        if spec.fusion_rule == "AND"
                        else (d_bob or d_alice)
                    )
                per_strategy[strat]["values"].append(
                    _block_value(block, present, detected)
                )
                key = "detected_present" if present else "detected_absent"
                per_strategy[strat][key].append(detected)
        for strat in POWER_STRATEGIES:
            s = per_strategy[strat]
            row = {
                "sweep_var": float(p_a),
                "r_b": float(np.mean(acc["r_b"])),
                "r_s": float(np.mean(acc["r_s"])),
                "r_e": float(np.mean(acc["r_e"])),
                "r_bar_s": float(np.mean(s["values"])),
                "p_dc": float(np.mean(s["detected_present"]))
                if s["detected_present"]
                else math.nan,
                "p_fc": float(np.mean(s["detected_absent"]))
                if s["detected_absent"]
                else math.nan,
                "beta": cfg.beta,
                "trials": spec.trials,
                "seed": spec.master_seed,
            }
            by_strategy[strat].append(row)
            rows.append({"strategy": strat, **row})
    return ExperimentResult(
        spec,
        rows,
        time.time() - start,
        ("strategy",) + RATE_COLUMNS,
        by_strategy=by_strategy,
    )


DISTANCE_COLUMNS = (
    "n_e",
    "p_dc",
    "r_e",
    "r_bar_s",
    "trials",
    "seed",
    "d_ae",
    "x_offset",
)


def run_distance_sweep(spec, workers=1):
    """MF-based joint detection and rates as Eve slides along a parallel line.

    The sweep grid holds Eve's x coordinates (Alice at the origin, Bob at
    x = d_ab); the line sits ``spec.offset`` meters off the Alice-Bob axis.
    """
    start = time.time()
    cfg = spec.config
    rows = []
    for x in spec.sweep_grid:
        d_ae = math.hypot(float(x), spec.offset)
        d_be = math.hypot(float(x) - cfg.d_ab, spec.offset)
        cfg_x = cfg.replace(d_ae=d_ae, d_be=d_be)
        stats = fusion_rate_mc(
            cfg_x,
            detector="MF",
            pfa=spec.pfa,
            trials=spec.trials,
            master_seed=spec.master_seed,
            fusion_rule=spec.fusion_rule,
            rho=spec.rho,
            stream=STREAM_DISTANCE,
            workers=workers,
        )
        rows.append(
            {
                "n_e": cfg.n_e,
                "p_dc": stats["p_dc"],
                "r_e": stats["r_e"],
                "r_bar_s": stats["r_bar_s"],
                "trials": spec.trials,
                "seed": spec.master_seed,
                "d_ae": d_ae,
                "x_offset": spec.offset,
            }
        )
    return ExperimentResult(spec, rows, time.time() - start, DISTANCE_COLUMNS)


ANTENNA_COLUMNS = ("n_e", "p_dc", "r_e", "r_bar_s", "trials", "seed")


def run_antenna_sweep(spec, workers=1):
    """Delegates to the adversary enumeration with harness seeding."""
    from .adversary import antenna_sweep

    start = time.time()
    rows = antenna_sweep(
        spec.config,
        [int(v) for v in spec.sweep_grid],
        pfa=spec.pfa,
        trials=spec.trials,
        rng_state=spec.master_seed,
        fusion_rule=spec.fusion_rule,
        workers=workers,
    )
    return ExperimentResult(spec, rows, time.time() - start, ANTENNA_COLUMNS)


RUNNERS = {
    "roc": run_roc,
    "power_sweep": run_power_sweep,
    "distance_sweep": run_distance_sweep,
    "antenna_sweep": run_antenna_sweep,
}


def run_experiment(spec, workers=1):
    return RUNNERS[spec.name](spec, workers=workers)


def write_outputs(result, out_dir):
    """Write the experiment CSV(s) plus a JSON run manifest; returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    name = result.spec.name
    paths = []
    if result.by_strategy:
        for strat, rows in result.by_strategy.items():
            path = os.path.join(out_dir, f"{name}_{strat}.csv")
            _write_csv(path, RATE_COLUMNS, rows)
            paths.append(path)
    else:
        path = os.path.join(out_dir, f"{name}.csv")
        result.write_csv(path)
        paths.append(path)
    manifest = os.path.join(out_dir, f"{name}_manifest.json")
    result.write_manifest(manifest, paths)
    return paths + [manifest]
