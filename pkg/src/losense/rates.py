"""Secrecy and leakage rates, transmit covariance design, decision fusion.

Rates are in bits per channel use.  Instantaneous secrecy is floored at zero
for reporting, but the signed value is preserved wherever the block-average
accounting needs the raw difference R_b - R_e.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

LOG2E = math.log2(math.e)
_PSD_TOL = 1e-10


@dataclass
class TransmitDesign:
    """Data covariance, artificial-noise covariance, and the power split."""

    q_data: np.ndarray
    q_an: np.ndarray
    rho: float

    def __post_init__(self):
        for name, q in (("q_data", self.q_data), ("q_an", self.q_an)):
            w = np.linalg.eigvalsh(q)
            if w[0] < -_PSD_TOL:
                raise ConfigurationError(f"{name} is not positive semidefinite")

    @property
    def total_power(self):
        return float(np.trace(self.q_data).real + np.trace(self.q_an).real)


@dataclass
class EveNoiseCov:
    """Eve's effective noise-plus-interference covariance (Hermitian PD)."""

    z_e: np.ndarray

    def __post_init__(self):
        if np.linalg.eigvalsh(self.z_e)[0] <= 0.0:
            raise ConfigurationError("z_e must be positive definite")


@dataclass
class RateReport:
    """Aggregated rate/detection summary of a batch of blocks.

    The block-average field is floored at zero (a negative average means
    transmission should be withheld entirely); probabilities may be NaN
    when no block of the relevant kind was observed.
    """

    r_b: float
    r_s: float
    r_e: float
    r_b_tilde: float
    r_bar_s: float
    p_dc: float
    p_fc: float

    def __post_init__(self):
        if self.r_bar_s < 0.0:
            raise ConfigurationError("r_bar_s must be nonnegative (floor it)")
        if self.r_s > self.r_b + 1e-9:
            raise ConfigurationError("r_s cannot exceed r_b")
        for name in ("p_dc", "p_fc"):
            p = getattr(self, name)
            if not math.isnan(p) and not 0.0 <= p <= 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1]")

    def to_json(self):
        return json.dumps(self.__dict__)


def logdet2(mat):
    """log2 |mat| for a Hermitian positive definite matrix."""
    sign, logdet = np.linalg.slogdet(mat)
    if sign.real <= 0:
        raise ConfigurationError("matrix is not positive definite")
    return float(logdet) * LOG2E


def _check_psd(q, p_max=None):
    q = np.asarray(q)
    if np.linalg.eigvalsh(q)[0] < -_PSD_TOL:
        raise ConfigurationError("covariance is not positive semidefinite")
    if p_max is not None and np.trace(q).real > p_max + 1e-9:
        raise ConfigurationError("covariance exceeds the power budget")
    return q


def secrecy_rate_instant(channels, q, config):
    """Instantaneous MIMO secrecy rate for a transmit covariance q.

    Returns ``(rate, raw)`` where ``rate = max(raw, 0)`` and ``raw`` is the
    signed difference of the Bob and Eve log-det terms.
    """
    q = _check_psd(q, config.p_a)
    h_ba, h_ea = channels.h_ba, channels.h_ea
    bob = logdet2(
        np.eye(h_ba.shape[0])
        + (config.d_ab ** -config.alpha / config.sigma_b2) * (h_ba @ q @ h_ba.conj().T)
    )
    eve = logdet2(
        np.eye(h_ea.shape[0])
        + (config.d_ae ** -config.alpha / config.sigma_e2) * (h_ea @ q @ h_ea.conj().T)
    )
    raw = bob - eve
    return max(raw, 0.0), raw


def bob_rate(h_ba, q, distance, alpha, noise_var):
    """Conventional MIMO rate to Bob for covariance q."""
    q = _check_psd(q)
    return logdet2(
        np.eye(h_ba.shape[0])
        + (distance ** -alpha / noise_var) * (h_ba @ q @ h_ba.conj().T)
    )


def waterfill(h, p_total, noise_var=1.0, distance=1.0, alpha=2.0):
    """Waterfilling covariance over the eigenmodes of the effective channel.

    Power levels are max(0, mu - 1/g_i) with the water level found by
    bisection to 1e-10 on the total-power constraint.
    """
    if p_total <= 0:
        raise ConfigurationError("waterfill requires positive total power")
    h = np.asarray(h)
    _, sing, vh = np.linalg.svd(h, full_matrices=False)
    gains = (distance ** -alpha / noise_var) * sing**2
    gains = gains[gains > 1e-14 * max(gains[0], 1.0)] if sing.size else gains
    if gains.size == 0:
        raise ConfigurationError("waterfill on a rank-0 channel")
    lo, hi = 0.0, 1.0 / np.min(gains) + p_total
    for _ in range(200):
        mu = 0.5 * (lo + hi)
        used = np.sum(np.maximum(0.0, mu - 1.0 / gains))
        if used < p_total:
            lo = mu
        else:
            hi = mu
        if hi - lo < 1e-13 * max(1.0, hi):
            break
    mu = hi  # guarantees at least p_total allocated before rescaling
    powers = np.maximum(0.0, mu - 1.0 / gains)
    powers *= p_total / np.sum(powers)  # absorb the residual bisection gap
    v = vh.conj().T[:, : gains.size]
    return (v * powers) @ v.conj().T


def an_design(h_ba, p_total, rho, noise_var=1.0, distance=1.0, alpha=2.0):
    """Split transmit power between waterfilled data and null-space jamming.

    The artificial noise is isotropic on the null space of h_ba, so Bob's
    receive term is untouched: h_ba q_an h_ba^H = 0.
    """
    if not 0.0 <= rho <= 1.0:
        raise ConfigurationError("rho must lie in [0, 1]")
    h_ba = np.asarray(h_ba)
    n_a = h_ba.shape[1]
    _, sing, vh = np.linalg.svd(h_ba)
    rank = int(np.sum(sing > 1e-12 * (sing[0] if sing.size else 1.0)))
    if rho < 1.0 and rank >= n_a:
        raise ConfigurationError(
            "artificial noise requires n_a > rank(h_ba); no null space available"
        )
    if rho > 0.0:
        q_data = waterfill(h_ba, rho * p_total, noise_var, distance, alpha)
    else:
        q_data = np.zeros((n_a, n_a), dtype=complex)
    if rho < 1.0:
        v_null = vh.conj().T[:, rank:]
        q_an = ((1.0 - rho) * p_total / (n_a - rank)) * (v_null @ v_null.conj().T)
    else:
        q_an = np.zeros((n_a, n_a), dtype=complex)
    return TransmitDesign(q_data=q_data, q_an=q_an, rho=rho)


def eve_noise_cov(h_ea, q_an, sigma_e2, distance, alpha):
    """Z_e = sigma_e^2 I + d^-alpha H_ea Q_an H_ea^H (AN lands on Eve)."""
    h_ea = np.asarray(h_ea)
    z = sigma_e2 * np.eye(h_ea.shape[0]) + (distance ** -alpha) * (
        h_ea @ q_an @ h_ea.conj().T
    )
    return EveNoiseCov(z_e=z)


def leakage_rate(h_ea, q_data, z_e, distance, alpha):
    """Instantaneous rate leaked to Eve: log2|I + d^-a H Q H^H Z_e^{-1}|."""
    h_ea = np.asarray(h_ea)
    z = z_e.z_e if isinstance(z_e, EveNoiseCov) else np.asarray(z_e)
    if np.linalg.eigvalsh(z)[0] <= 0.0:
        raise ConfigurationError("z_e must be positive definite")
    signal = (distance ** -alpha) * (h_ea @ _check_psd(q_data) @ h_ea.conj().T)
    # |I + S Z^{-1}| == |Z + S| / |Z|
    return logdet2(z + signal) - logdet2(z)


def avg_leakage_approx(config):
    """Large-antenna approximation of the average leakage rate.

    E{R_e} ~= d_ae^-alpha * N_e * (P_a / N_a) * log2(e) for Rayleigh fading.
    """
    return (
        config.d_ae ** -config.alpha * config.n_e * (config.p_a / config.n_a) * LOG2E
    )


def fuse(p1, p2, rule):
    """Consensus probability from two local probabilities under AND/OR."""
    for p in (p1, p2):
        if not 0.0 <= p <= 1.0:
            raise ValueError("fuse requires probabilities in [0, 1]")
    if rule == "AND":
        return p1 * p2
    if rule == "OR":
        return 1.0 - (1.0 - p1) * (1.0 - p2)
    raise ConfigurationError(f"unknown fusion rule {rule!r}")


def avg_secrecy_rate(r_b, r_s, r_e, r_b_tilde, p_dc, p_fc, beta):
    """Expected block secrecy rate:

    R_b P_dc (1-beta) + R_s P_dc beta + (R_b - R_e)(1 - P_dc) beta
      + R_tilde_b P_fc (1-beta).

    The (R_b - R_e) term is kept signed.
    """
    for p in (p_dc, p_fc, beta):
        if not 0.0 <= p <= 1.0:
            raise ValueError("probabilities must lie in [0, 1]")
    return (
        r_b * p_dc * (1.0 - beta)
        + r_s * p_dc * beta
        + (r_b - r_e) * (1.0 - p_dc) * beta
        + r_b_tilde * p_fc * (1.0 - beta)
    )
