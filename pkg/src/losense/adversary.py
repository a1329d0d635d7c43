"""Eve's evasion strategy: rate-constrained placement and antenna tradeoff.

Geometry convention: Alice at the origin, Bob on the positive x axis.  An
Eve placed "on the line" beyond Bob is allowed when the optimal radius
exceeds d_ab.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigurationError
from .rates import LOG2E


@dataclass
class Geometry:
    alice_pos: np.ndarray
    bob_pos: np.ndarray
    eve_pos: np.ndarray | None = None

    def __post_init__(self):
        self.alice_pos = np.asarray(self.alice_pos, dtype=float)
        self.bob_pos = np.asarray(self.bob_pos, dtype=float)
        if self.eve_pos is not None:
            self.eve_pos = np.asarray(self.eve_pos, dtype=float)
        if np.allclose(self.alice_pos, self.bob_pos):
            raise ConfigurationError("alice_pos and bob_pos must differ")


def optimal_dae(r_e_bar, config):
    """Largest Alice-Eve distance meeting the average-leakage constraint.

    Inverts the large-antenna approximation E{R_e} = d^-alpha N_e (P_a/N_a)
    log2 e, so the constraint holds with equality at the returned distance.
    """
    if r_e_bar <= 0:
        raise ValueError("optimal_dae requires r_e_bar > 0")
    ratio = r_e_bar * config.n_a / (config.n_e * config.p_a * LOG2E)
    return ratio ** (-1.0 / config.alpha)


def place_eve(geometry, d_ae_star):
    """Put Eve on the Alice-Bob line at distance d_ae_star from Alice.

    The intersection on Bob's side is chosen (the furthest admissible point
    from Bob among on-line points at fixed d_ae); beyond-Bob placements are
    allowed for d_ae_star > d_ab.
    """
    if d_ae_star <= 0:
        raise ValueError("place_eve requires d_ae_star > 0")
    direction = geometry.bob_pos - geometry.alice_pos
    direction = direction / np.linalg.norm(direction)
    eve = geometry.alice_pos + d_ae_star * direction
    return replace(geometry, eve_pos=eve)


def antenna_sweep(config, n_e_range, pfa, trials, rng_state, fusion_rule="OR", workers=1):
    """Detection/rate tradeoff table as Eve's antenna count varies.

    For each N_e the fusion-detection Monte Carlo and block rate accounting
    run with everything else fixed; deterministic given the seed.  Returns a
    list of dicts with keys n_e, p_dc, r_e, r_bar_s, trials, seed.
    """
    from .harness import fusion_rate_mc  # local import to avoid a cycle

    n_e_values = list(n_e_range)
    if not n_e_values:
        raise ConfigurationError("n_e_range must be nonempty")
    if any(n < 1 for n in n_e_values):
        raise ConfigurationError("antenna counts must be >= 1")
    rows = []
    for n_e in n_e_values:
        cfg = config.replace(n_e=int(n_e))
        stats = fusion_rate_mc(
            cfg,
            detector="MF",
            pfa=pfa,
            trials=trials,
            master_seed=rng_state,
            fusion_rule=fusion_rule,
            workers=workers,
        )
        values = np.array([d["value"] for d in stats["details"]])
        n_present = max(stats["n_present"], 1)
        rows.append(
            {
                "n_e": int(n_e),
                "p_dc": stats["p_dc"],
                "r_e": stats["r_e"],
                "r_bar_s": stats["r_bar_s"],
                "trials": trials,
                "seed": rng_state,
                # standard errors for downstream slack checks (not in the CSV)
                "p_dc_se": math.sqrt(
                    max(stats["p_dc"] * (1.0 - stats["p_dc"]), 1e-12) / n_present
                ),
                "r_bar_s_se": float(np.std(values) / math.sqrt(len(values))),
            }
        )
    return rows
