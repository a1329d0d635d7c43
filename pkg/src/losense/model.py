"""Network configuration, channels, leakage tones, and observation synthesis.

Unit convention: noise power sigma_b2 = 1 corresponds to 0 dBm, so leakage
levels in dBm convert to linear mW on the same scale.  A per-antenna tone of
``leak_dbm`` dBm has complex-envelope amplitude A = sqrt(2 * 10^(leak_dbm/10)),
i.e. tone power A^2/2 equals the configured level.
"""

import json
import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import ConfigurationError
from .randmat import sample_complex_gaussian

H0 = "H0"
H1 = "H1"


@dataclass
class NetworkConfig:
    """Scenario parameters.  Field names match the JSON schema exactly."""

    n_a: int
    n_b: int
    n_e: int
    d_ab: float
    d_ae: float
    d_be: float
    alpha: float
    p_a: float
    sigma_b2: float
    sigma_e2: float
    leak_dbm_eve: float
    leak_dbm_alice: float
    omega: float
    omega_tilde: float
    M: int
    T: int
    beta: float

    def __post_init__(self):
        self.validate()

    def validate(self):
        if min(self.n_a, self.n_b, self.n_e) < 1:
            raise ConfigurationError("antenna counts must be >= 1")
        if min(self.d_ab, self.d_ae, self.d_be) <= 0:
            raise ConfigurationError("distances must be positive")
        if self.alpha <= 0:
            raise ConfigurationError("path-loss exponent must be positive")
        if self.p_a <= 0 or self.sigma_b2 <= 0 or self.sigma_e2 <= 0:
            raise ConfigurationError("powers must be positive")
        if self.M < self.n_b:
            raise ConfigurationError("sample count M must be >= n_b")
        if self.T < 1:
            raise ConfigurationError("block length T must be >= 1")
        if not 0.0 <= self.beta <= 1.0:
            raise ConfigurationError("beta must lie in [0, 1]")

    def to_json(self):
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        missing = known - set(data)
        if missing:
            raise ConfigurationError(f"missing config keys: {sorted(missing)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def replace(self, **kwargs):
        data = asdict(self)
        data.update(kwargs)
        return NetworkConfig(**data)


@dataclass
class ChannelSet:
    """One realization of the four MIMO channels."""

    h_ba: np.ndarray  # N_b x N_a, Alice -> Bob
    h_ea: np.ndarray  # N_e x N_a, Alice -> Eve
    h_be: np.ndarray  # N_b x N_e, Eve leakage -> Bob
    h_ae: np.ndarray  # N_a x N_e, Eve leakage -> Alice


@dataclass
class LeakageSpec:
    """Per-antenna tone amplitudes, LO frequency, and phase tracks."""

    amplitudes: np.ndarray  # length N, sqrt(mW)
    omega: float  # rad/sample
    phases: np.ndarray  # N x M radians

    def __post_init__(self):
        if self.phases.shape[0] != self.amplitudes.shape[0]:
            raise ConfigurationError("phases rows must match amplitude count")


@dataclass
class ObservationMatrix:
    """One sensing epoch: observation plus the mean matrices that built it."""

    y: np.ndarray  # N_b x M
    m_a: np.ndarray  # N_b x M
    m_e: np.ndarray  # N_b x M, zeros under H0
    hypothesis: str

    def __post_init__(self):
        if self.hypothesis not in (H0, H1):
            raise ConfigurationError("hypothesis must be 'H0' or 'H1'")
        zero = not np.any(self.m_e)
        if (self.hypothesis == H0) != zero:
            raise ConfigurationError("m_e must be zero iff hypothesis is H0")


def leak_dbm_to_amplitude(leak_dbm):
    """Complex-envelope amplitude (sqrt mW) so tone power A^2/2 = dBm level."""
    return math.sqrt(2.0 * 10.0 ** (leak_dbm / 10.0))


def draw_channels(config, rng):
    """i.i.d. unit-variance Rayleigh-fading channel matrices."""

    def cn(rows, cols):
        return sample_complex_gaussian(rows, cols, np.zeros((rows, cols)), 1.0, rng)

    return ChannelSet(
        h_ba=cn(config.n_b, config.n_a),
        h_ea=cn(config.n_e, config.n_a),
        h_be=cn(config.n_b, config.n_e),
        h_ae=cn(config.n_a, config.n_e),
    )


def make_leakage(antennas, leak_dbm, omega, m_samples, phase_mode, rng):
    """Build a LeakageSpec with phases drawn per ``phase_mode``.

    ``constant-random``: one uniform phase per antenna, held for the epoch.
    ``per-sample-random``: i.i.d. uniform phase per antenna and sample.
    """
    if not math.isfinite(leak_dbm):
        raise ConfigurationError("leak_dbm must be finite")
    amp = leak_dbm_to_amplitude(leak_dbm)
    amplitudes = np.full(antennas, amp)
    if phase_mode == "constant-random":
        phases = np.repeat(
            rng.uniform(0.0, 2.0 * math.pi, size=(antennas, 1)), m_samples, axis=1
        )
    elif phase_mode == "per-sample-random":
        phases = rng.uniform(0.0, 2.0 * math.pi, size=(antennas, m_samples))
    else:
        raise ConfigurationError(f"unknown phase_mode {phase_mode!r}")
    return LeakageSpec(amplitudes=amplitudes, omega=omega, phases=phases)


def tone_matrix(leakage, m_samples):
    """Discrete tone samples: row i is A_i * exp(j(omega n + theta_i[n]))."""
    if leakage.phases.shape[1] != m_samples:
        raise ConfigurationError("leakage phase track length != M")
    n = np.arange(m_samples)
    return leakage.amplitudes[:, None] * np.exp(
        1j * (leakage.omega * n[None, :] + leakage.phases)
    )


def mean_matrix(channel, distance, alpha, leakage):
    """Mean observation matrix sqrt(d^-alpha) * H * S for a leakage source."""
    channel = np.asarray(channel)
    if channel.shape[1] != leakage.amplitudes.shape[0]:
        raise ConfigurationError(
            f"channel has {channel.shape[1]} columns but leakage has "
            f"{leakage.amplitudes.shape[0]} antennas"
        )
    s = tone_matrix(leakage, leakage.phases.shape[1])
    return math.sqrt(distance ** (-alpha)) * (channel @ s)


def synthesize_observation(config, channels, hypothesis, leakage_alice, leakage_eve, rng):
    """Bob's sensing-epoch observation under H0 or H1.

    Y = M_A + N under H0 and Y = M_E + M_A + N under H1, with N i.i.d.
    complex Gaussian of per-entry variance sigma_b2.  Bob's own leakage is
    assumed removed before detection.
    """
    m_a = mean_matrix(channels.h_ba, config.d_ab, config.alpha, leakage_alice)
    if hypothesis == H1:
        m_e = mean_matrix(channels.h_be, config.d_be, config.alpha, leakage_eve)
    elif hypothesis == H0:
        m_e = np.zeros((config.n_b, config.M), dtype=complex)
    else:
        raise ConfigurationError("hypothesis must be 'H0' or 'H1'")
    noise = sample_complex_gaussian(
        config.n_b, config.M, np.zeros((config.n_b, config.M)), config.sigma_b2, rng
    )
    return ObservationMatrix(y=m_a + m_e + noise, m_a=m_a, m_e=m_e, hypothesis=hypothesis)


def mirror_for_alice(config, channels):
    """Swap the roles of Alice and Bob so Alice's sensing reuses the Bob path.

    The sensing process is identical at both legitimate nodes: Alice hears
    Eve through h_ae at distance d_ae, and her interferer is the other
    node's LO leakage through the reciprocal channel h_ba^T at distance d_ab
    (same per-antenna level and LO frequency as the legitimate side).
    """
    mirrored_config = config.replace(
        n_a=config.n_b,
        n_b=config.n_a,
        d_ae=config.d_be,
        d_be=config.d_ae,
    )
    mirrored_channels = ChannelSet(
        h_ba=channels.h_ba.T.copy(),
        h_ea=channels.h_be.T.copy(),
        h_be=channels.h_ae,
        h_ae=channels.h_be,
    )
    return mirrored_config, mirrored_channels
