"""Rate formulas, waterfilling, artificial noise, fusion, block accounting."""

import math

import numpy as np
import pytest

from losense.errors import ConfigurationError
from losense.model import NetworkConfig, draw_channels
from losense.randmat import sample_complex_gaussian
from losense.rates import (
    LOG2E,
    EveNoiseCov,
    an_design,
    avg_leakage_approx,
    avg_secrecy_rate,
    bob_rate,
    eve_noise_cov,
    fuse,
    leakage_rate,
    logdet2,
    secrecy_rate_instant,
    waterfill,
)


def cfg(**overrides):
    params = dict(
        n_a=4, n_b=4, n_e=4,
        d_ab=10.0, d_ae=10.0, d_be=10.0,
        alpha=2.0, p_a=10.0,
        sigma_b2=1.0, sigma_e2=1.0,
        leak_dbm_eve=-50.0, leak_dbm_alice=-50.0,
        omega=0.4 * math.pi, omega_tilde=0.44 * math.pi,
        M=64, T=100, beta=0.5,
    )
    params.update(overrides)
    return NetworkConfig(**params)


def random_channel(rows, cols, rng):
    return sample_complex_gaussian(rows, cols, np.zeros((rows, cols)), 1.0, rng)


# ---------------------------------------------------------------- secrecy

def test_secrecy_rate_trivials():
    config = cfg()
    chans = draw_channels(config, np.random.default_rng(0))
    q = np.zeros((4, 4), dtype=complex)
    rate, raw = secrecy_rate_instant(chans, q, config)
    assert rate == 0.0 and raw == 0.0
    chans.h_ea = np.zeros_like(chans.h_ea)
    q = np.eye(4, dtype=complex)
    rate, raw = secrecy_rate_instant(chans, q, config)
    bob_only = logdet2(
        np.eye(4)
        + (config.d_ab ** -config.alpha / config.sigma_b2)
        * (chans.h_ba @ q @ chans.h_ba.conj().T)
    )
    assert raw == pytest.approx(bob_only, rel=1e-12)


def test_logdet_dual_evaluation():
    rng = np.random.default_rng(1)
    for _ in range(20):
        h = random_channel(3, 3, rng)
        m = np.eye(3) + h @ h.conj().T
        eig_based = float(np.sum(np.log2(np.linalg.eigvalsh(m))))
        assert logdet2(m) == pytest.approx(eig_based, abs=1e-9)


def test_secrecy_rejects_non_psd():
    config = cfg()
    chans = draw_channels(config, np.random.default_rng(2))
    q = np.diag([1.0, -0.5, 0.2, 0.1]).astype(complex)
    with pytest.raises(ConfigurationError):
        secrecy_rate_instant(chans, q, config)


def test_degraded_eavesdropper_sanity():
    # H_ea = c H_ba, same distance and noise, c >= 1: signed rate <= 0
    config = cfg(d_ae=10.0, sigma_e2=1.0)
    rng = np.random.default_rng(3)
    for c in (1.0, 1.5, 3.0):
        h_ba = random_channel(4, 4, rng)
        chans = draw_channels(config, rng)
        chans.h_ba = h_ba
        chans.h_ea = c * h_ba
        q = waterfill(h_ba, config.p_a, config.sigma_b2, config.d_ab, config.alpha)
        _, raw = secrecy_rate_instant(chans, q, config)
        assert raw <= 1e-9


# ---------------------------------------------------------------- waterfill

def test_waterfill_single_antenna():
    q = waterfill(np.array([[1.0 + 0.5j]]), 3.0)
    assert q.shape == (1, 1)
    assert q[0, 0].real == pytest.approx(3.0, abs=1e-9)


def test_waterfill_equal_gains_split_equally():
    h = np.eye(3, dtype=complex)
    q = waterfill(h, 6.0)
    assert np.allclose(np.diag(q).real, 2.0, atol=1e-8)


def test_waterfill_beats_uniform():
    rng = np.random.default_rng(4)
    for _ in range(10):
        h = random_channel(4, 4, rng)
        p = 4.0
        q_wf = waterfill(h, p)
        q_uni = (p / 4.0) * np.eye(4, dtype=complex)
        r_wf = logdet2(np.eye(4) + h @ q_wf @ h.conj().T)
        r_uni = logdet2(np.eye(4) + h @ q_uni @ h.conj().T)
        sing = np.linalg.svd(h, compute_uv=False)
        assert r_wf >= r_uni - 1e-9
        if sing[0] / sing[-1] > 1.1:
            assert r_wf > r_uni


def test_waterfill_kkt_conditions():
    rng = np.random.default_rng(5)
    h = random_channel(3, 4, rng)
    p_total = 2.5
    q = waterfill(h, p_total, noise_var=0.7, distance=2.0, alpha=2.0)
    assert float(np.trace(q).real) == pytest.approx(p_total, abs=1e-9)
    _, sing, vh = np.linalg.svd(h, full_matrices=False)
    gains = (2.0 ** -2.0 / 0.7) * sing**2
    v = vh.conj().T
    powers = np.real(np.diag(v.conj().T @ q @ v))
    active = powers > 1e-9
    mu = powers[active] + 1.0 / gains[active]
    assert np.max(np.abs(mu - mu[0])) < 1e-8
    inactive = ~active
    if np.any(inactive):
        assert np.all(gains[inactive] <= 1.0 / mu[0] + 1e-8)


def test_waterfill_rank0_error():
    with pytest.raises(ConfigurationError):
        waterfill(np.zeros((2, 2), dtype=complex), 1.0)


# ---------------------------------------------------------------- AN design

def test_an_design_rho_one_no_jamming():
    rng = np.random.default_rng(6)
    h = random_channel(2, 4, rng)
    design = an_design(h, 5.0, 1.0)
    assert np.allclose(design.q_an, 0.0)
    assert float(np.trace(design.q_data).real) == pytest.approx(5.0, abs=1e-9)


def test_an_design_null_space_and_power():
    rng = np.random.default_rng(7)
    for _ in range(10):
        h = random_channel(2, 4, rng)
        design = an_design(h, 8.0, 0.5)
        assert np.linalg.norm(h @ design.q_an @ h.conj().T) < 1e-9
        assert design.total_power == pytest.approx(8.0, abs=1e-9)


def test_an_design_empty_null_space_error():
    rng = np.random.default_rng(8)
    h = random_channel(4, 4, rng)
    with pytest.raises(ConfigurationError):
        an_design(h, 4.0, 0.5)


def test_an_leaves_bob_term_unchanged():
    # adding the null-space AN to the data covariance leaves Bob's log-det
    # term exactly as with the data covariance alone
    rng = np.random.default_rng(9)
    h = random_channel(2, 4, rng)
    design = an_design(h, 6.0, 0.5)
    with_an = bob_rate(h, design.q_data + design.q_an, 1.0, 2.0, 1.0)
    without = bob_rate(h, design.q_data, 1.0, 2.0, 1.0)
    assert with_an == pytest.approx(without, abs=1e-9)


# ---------------------------------------------------------------- leakage

def test_leakage_rate_trivials():
    rng = np.random.default_rng(10)
    h_ea = random_channel(3, 4, rng)
    z = EveNoiseCov(np.eye(3))
    assert leakage_rate(h_ea, np.zeros((4, 4)), z, 2.0, 2.0) == pytest.approx(0.0, abs=1e-12)
    h1 = random_channel(1, 4, rng)
    q = np.diag([0.5, 0.25, 0.0, 0.0]).astype(complex)
    scalar = leakage_rate(h1, q, EveNoiseCov(np.eye(1) * 2.0), 3.0, 2.0)
    snr = (3.0 ** -2.0) * float((h1 @ q @ h1.conj().T).real[0, 0]) / 2.0
    assert scalar == pytest.approx(math.log2(1.0 + snr), rel=1e-9)


def test_leakage_rate_dual_evaluation():
    rng = np.random.default_rng(11)
    h_ea = random_channel(3, 4, rng)
    q = np.eye(4, dtype=complex) * 0.7
    q_an = an_design(random_channel(2, 4, rng), 4.0, 0.5).q_an
    z = eve_noise_cov(h_ea, q_an, 1.3, 2.0, 2.0)
    direct = leakage_rate(h_ea, q, z, 2.0, 2.0)
    s = (2.0 ** -2.0) * (h_ea @ q @ h_ea.conj().T)
    w = np.linalg.eigvalsh(np.linalg.inv(np.linalg.cholesky(z.z_e)) @ s
                           @ np.linalg.inv(np.linalg.cholesky(z.z_e)).conj().T)
    eig_based = float(np.sum(np.log2(1.0 + np.maximum(w, 0.0))))
    assert direct == pytest.approx(eig_based, abs=1e-9)


def test_leakage_singular_z_rejected():
    rng = np.random.default_rng(12)
    h_ea = random_channel(2, 3, rng)
    with pytest.raises(ConfigurationError):
        leakage_rate(h_ea, np.eye(3), np.zeros((2, 2)), 1.0, 2.0)


# --------------------------------------------------------- approximation

def test_avg_leakage_approx_trivials():
    config = cfg(n_e=4)
    base = avg_leakage_approx(config)
    assert avg_leakage_approx(config.replace(n_e=8)) == pytest.approx(2.0 * base)
    tiny = cfg(p_a=1e-12)
    assert avg_leakage_approx(tiny) < 1e-10
    assert base == pytest.approx(
        config.d_ae ** -2.0 * config.n_e * config.p_a / config.n_a * LOG2E
    )


def test_avg_leakage_approx_monte_carlo():
    # N_a = N_e = 8, d_ae = 1, isotropic covariance, no AN.  The closed form
    # presumes the array-normalized gain convention (per-entry channel
    # variance 1/N_a, receive power independent of the transmit array), and
    # linearization of the log-det, so the check runs at low SNR with
    # channels scaled accordingly; tolerance is the quoted loose 15%.
    config = cfg(n_a=8, n_e=8, d_ae=1.0, p_a=0.8, sigma_e2=1.0)
    rng = np.random.default_rng(13)
    q = (config.p_a / config.n_a) * np.eye(config.n_a, dtype=complex)
    z = EveNoiseCov(np.eye(config.n_e))
    total = 0.0
    trials = 10_000
    for _ in range(trials):
        h_ea = random_channel(config.n_e, config.n_a, rng) / math.sqrt(config.n_a)
        total += leakage_rate(h_ea, q, z, config.d_ae, config.alpha)
    assert total / trials == pytest.approx(avg_leakage_approx(config), rel=0.15)


# ---------------------------------------------------------------- fusion

def test_fuse_arithmetic():
    assert fuse(1.0, 1.0, "AND") == 1.0
    assert fuse(0.3, 0.4, "OR") == pytest.approx(0.58, abs=1e-15)
    with pytest.raises(ConfigurationError):
        fuse(0.5, 0.5, "XOR")
    with pytest.raises(ValueError):
        fuse(1.5, 0.5, "OR")


def test_fuse_bounds_properties():
    rng = np.random.default_rng(14)
    for _ in range(200):
        p, q = rng.uniform(size=2)
        assert fuse(p, 0.0, "AND") == 0.0
        assert fuse(p, 0.0, "OR") == pytest.approx(p)
        assert fuse(p, q, "OR") >= max(p, q) - 1e-12
        assert fuse(p, q, "AND") <= min(p, q) + 1e-12


def test_fuse_matches_simulated_sensors():
    rng = np.random.default_rng(15)
    trials = 10_000
    p1, p2 = 0.35, 0.6
    d1 = rng.uniform(size=trials) < p1
    d2 = rng.uniform(size=trials) < p2
    for rule, joint in (("AND", d1 & d2), ("OR", d1 | d2)):
        fused = fuse(float(np.mean(d1)), float(np.mean(d2)), rule)
        emp = float(np.mean(joint))
        se = math.sqrt(fused * (1 - fused) / trials)
        assert abs(emp - fused) <= 3.0 * se


# ---------------------------------------------------------------- Eq. (8)

def test_avg_secrecy_rate_trivials():
    assert avg_secrecy_rate(3.0, 1.0, 2.0, 0.5, 0.7, 0.0, 0.0) == pytest.approx(2.1)
    assert avg_secrecy_rate(3.0, 1.0, 2.0, 0.5, 1.0, 0.2, 1.0) == pytest.approx(1.0)


def test_avg_secrecy_rate_arithmetic_oracle():
    rng = np.random.default_rng(16)
    for _ in range(100):
        r_b, r_s, r_e, r_bt = rng.uniform(0, 5, size=4)
        p_dc, p_fc, beta = rng.uniform(size=3)
        expected = (
            r_b * p_dc * (1 - beta)
            + r_s * p_dc * beta
            + (r_b - r_e) * (1 - p_dc) * beta
            + r_bt * p_fc * (1 - beta)
        )
        assert avg_secrecy_rate(r_b, r_s, r_e, r_bt, p_dc, p_fc, beta) == (
            pytest.approx(expected, rel=1e-12)
        )
