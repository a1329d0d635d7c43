"""The four eavesdropper detectors: statistics, thresholds, and theory curves.

Detector          side information required
--------          -------------------------
ED                noise power sigma_b2, interferer mean M_A
MF                everything (M_E, M_A, sigma_b2)
GLRT1             M_A and M_E known, sigma_b2 unknown (eig-CDF params for bounds)
GLRT2             M_A and the tone frequency known (sigma_b2 used only to
                  calibrate the constant-false-alarm threshold)

Tie policy: statistic >= threshold declares H1.  All detectors are pure
functions of their inputs; trial-level parallelism is the intended execution
model.
"""

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigurationError, NumericError
from .model import H0, H1
from .randmat import (
    ChiSquareSpec,
    EigCdfParams,
    eigvalsh_desc,
    scaled_max_eig_cdf,
    scaled_max_eig_cdf_inverse,
    wishart_trace_sf,
)
from .specfun import (
    as_probability,
    gaussian_q,
    gaussian_q_inverse,
    marcum_q,
    marcum_q_inverse_b,
    reg_gamma_p_inverse,
)


class DetectorKind(str, Enum):
    ED = "ED"
    MF = "MF"
    GLRT1 = "GLRT1"
    GLRT2 = "GLRT2"


@dataclass
class DetectorReport:
    kind: DetectorKind
    statistic: float
    threshold: float
    decision: str  # 'H0' or 'H1'
    theoretical_pfa: float | None = None
    theoretical_pd: float | None = None

    def to_json(self):
        return json.dumps(
            {
                "kind": self.kind.value,
                "statistic": self.statistic,
                "threshold": self.threshold,
                "decision": self.decision,
                "theoretical_pfa": self.theoretical_pfa,
                "theoretical_pd": self.theoretical_pd,
            }
        )


@dataclass
class SideInfo:
    """What a detector is entitled to know (plus evaluation-only truth).

    ``m_e_true`` is never used in a decision path; it only fills the
    theoretical-P_D column for detectors that do not know M_E themselves.
    """

    m_a: np.ndarray | None = None
    m_e: np.ndarray | None = None
    sigma_b2: float | None = None
    omega: float | None = None
    eig_params: EigCdfParams | None = None
    m_e_true: np.ndarray | None = None


def _obs_array(obs):
    return obs.y if hasattr(obs, "y") else np.asarray(obs)


def fro2(mat):
    """Squared Frobenius norm via an explicit elementwise sum (deterministic)."""
    m = np.asarray(mat)
    return float(np.sum(m.real**2) + np.sum(m.imag**2))


def _inner_re(a, b):
    """Re Tr{A^H B} as an elementwise sum."""
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.sum(a.real * b.real) + np.sum(a.imag * b.imag))


# ----------------------------------------------------------------------
# Energy detector
# ----------------------------------------------------------------------

def ed_statistic(obs):
    """Total received energy Tr{Y^H Y}."""
    return fro2(_obs_array(obs))


def ed_noncentrality(mean_mat, sigma_b2):
    """Noncentrality 2/sigma^2 * ||mean||_F^2 of the energy statistic."""
    return 2.0 * fro2(mean_mat) / sigma_b2


def ed_calibrate(pfa, m_a, sigma_b2, m_samples, n_b):
    """Threshold eta with noncentral chi-square survival at eta equal to pfa."""
    if not 0.0 < pfa < 1.0:
        raise ValueError("ed_calibrate requires 0 < pfa < 1")
    lam0 = ed_noncentrality(m_a, sigma_b2)
    b = marcum_q_inverse_b(m_samples * n_b, math.sqrt(lam0), pfa)
    return 0.5 * sigma_b2 * b * b


def ed_theoretical_pfa(eta, m_a, sigma_b2, m_samples, n_b):
    lam0 = ed_noncentrality(m_a, sigma_b2)
    return marcum_q(m_samples * n_b, math.sqrt(lam0), math.sqrt(2.0 * eta / sigma_b2))


def ed_theoretical_pd(eta, m_a, m_e, sigma_b2, m_samples, n_b):
    """Detection probability of ED at threshold eta."""
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    lam1 = ed_noncentrality(np.asarray(m_a) + np.asarray(m_e), sigma_b2)
    return marcum_q(m_samples * n_b, math.sqrt(lam1), math.sqrt(2.0 * eta / sigma_b2))


# ----------------------------------------------------------------------
# Matched filter (replica correlator)
# ----------------------------------------------------------------------

def mf_statistic(obs, m_e):
    """Coherent correlation Tr{Re(M_E^H Y)}."""
    y = _obs_array(obs)
    m_e = np.asarray(m_e)
    if y.shape != m_e.shape:
        raise ValueError(f"shape mismatch: obs {y.shape} vs m_e {m_e.shape}")
    return _inner_re(m_e, y)


def mf_calibrate(pfa, m_e, m_a, sigma_b2):
    """Closed-form threshold for the matched filter at a target pfa."""
    energy = fro2(m_e)
    if energy <= 0.0:
        raise ConfigurationError("matched filter degenerate: M_E = 0")
    return math.sqrt(0.5 * sigma_b2 * energy) * gaussian_q_inverse(pfa) + _inner_re(
        m_e, m_a
    )


def mf_theoretical_pfa(epsilon, m_e, m_a, sigma_b2):
    energy = fro2(m_e)
    if energy <= 0.0:
        raise ConfigurationError("matched filter degenerate: M_E = 0")
    return gaussian_q((epsilon - _inner_re(m_e, m_a)) / math.sqrt(0.5 * sigma_b2 * energy))


def mf_theoretical_pd(epsilon, m_e, m_a, sigma_b2):
    """Gaussian tail at the deflected mean, with M_1 = M_E + M_A."""
    energy = fro2(m_e)
    if energy <= 0.0:
        raise ConfigurationError("matched filter degenerate: M_E = 0")
    m1 = np.asarray(m_e) + np.asarray(m_a)
    return gaussian_q((epsilon - _inner_re(m_e, m1)) / math.sqrt(0.5 * sigma_b2 * energy))


# ----------------------------------------------------------------------
# GLRT with unknown noise variance (GLRT1)
# ----------------------------------------------------------------------

def glrt1_statistic(obs, m_a, m_e):
    """Ratio of residual energies ||Y - M_A||^2 / ||Y - M_1||^2.

    Equals the ratio of the two noise-variance MLEs.
    """
    y = _obs_array(obs)
    num = fro2(y - m_a)
    den = fro2(y - m_a - m_e)
    if den == 0.0:
        raise NumericError("glrt1_statistic degenerate: zero H1 residual")
    return num / den


def effective_correlation(m_e, m_samples):
    """Psi = I + M^{-1} M_E M_E^H, the effective correlation matrix."""
    m_e = np.asarray(m_e)
    n_b = m_e.shape[0]
    return np.eye(n_b) + (m_e @ m_e.conj().T) / m_samples


def _psi_min_eig(m_e, m_samples):
    psi = effective_correlation(m_e, m_samples)
    return float(eigvalsh_desc(psi)[-1])


def glrt1_pfa_bound(eta, m_e, m_samples, n_b, eig_params):
    """Upper bound on Pr{T_G1 >= eta | H0}: 1 - F_T0(psi_min * eta)."""
    psi_min = _psi_min_eig(m_e, m_samples)
    y = psi_min * eta
    if y < 1.0:
        return 1.0  # T0 >= 1 identically, the bound is vacuous here
    return as_probability(1.0 - scaled_max_eig_cdf(eig_params, y), "glrt1_pfa_bound")


def glrt1_pd_bound(eta, m_e, m_samples, n_b, eig_params):
    """Lower bound on Pr{T_G1 >= eta | H1}: F_T0(varsigma_min / eta)."""
    if eta <= 0:
        raise ValueError("eta must be positive")
    varsigma_min = _psi_min_eig(m_e, m_samples)
    y = varsigma_min / eta
    if y < 1.0:
        return 0.0
    return scaled_max_eig_cdf(eig_params, y)


def glrt1_calibrate(pfa, m_e, m_samples, n_b, eig_params):
    """Threshold whose P_FA upper bound equals the target (conservative)."""
    if not 0.0 < pfa < 1.0:
        raise ValueError("glrt1_calibrate requires 0 < pfa < 1")
    psi_min = _psi_min_eig(m_e, m_samples)
    return scaled_max_eig_cdf_inverse(eig_params, 1.0 - pfa) / psi_min


# ----------------------------------------------------------------------
# Full GLRT with unknown noise variance and leakage channel (GLRT2)
# ----------------------------------------------------------------------

def glrt2_statistic(obs, m_a, omega):
    """Residual-energy ratio ||Y - M_A||^2 / ||M_A||^2.

    The tone-frequency matrix D = diag{1, e^{j w}, ...} is unitary, so after
    substituting the leakage MLE it cancels out of the statistic; ``omega``
    stays in the signature because the detector is only defined when the
    frequency is known.
    """
    del omega
    y = _obs_array(obs)
    den = fro2(m_a)
    if den == 0.0:
        raise ConfigurationError(
            "glrt2_statistic undefined: Alice's leakage energy is zero"
        )
    return fro2(y - m_a) / den


def glrt2_calibrate_and_curves(pfa, m_a, m_e, sigma_b2, m_samples, n_b):
    """Threshold solving the constant-false-alarm equation, plus exact P_D.

    The H0 statistic is a scaled central chi-square, inverted through the
    regularized gamma function.  Under H1 the numerator is the trace of a
    noncentral Wishart matrix which, for white noise, reduces exactly to a
    scaled noncentral chi-square, so no series expansion is needed.
    """
    if not 0.0 < pfa < 1.0:
        raise ValueError("glrt2 calibration requires 0 < pfa < 1")
    energy_a = fro2(m_a)
    if energy_a <= 0.0:
        raise ConfigurationError("glrt2 undefined: Alice's leakage energy is zero")
    dof = m_samples * n_b
    threshold = sigma_b2 * reg_gamma_p_inverse(dof, 1.0 - pfa) / energy_a
    theoretical_pd = None
    if m_e is not None:
        lam_e = 2.0 * fro2(m_e) / sigma_b2
        spec = ChiSquareSpec(dof=2 * dof, noncentrality=lam_e, scale=0.5 * sigma_b2)
        theoretical_pd = wishart_trace_sf(spec, threshold * energy_a)
    return threshold, theoretical_pd


# ----------------------------------------------------------------------
# Dispatcher
# ----------------------------------------------------------------------

def run_detector(kind, obs, config, channels, side_info, pfa):
    """Calibrate, evaluate, and decide; returns a populated DetectorReport."""
    kind = DetectorKind(kind)
    del channels  # detectors see side_info only; kept for interface symmetry

    def need(*names):
        for name in names:
            if getattr(side_info, name) is None:
                raise ConfigurationError(f"{kind.value} requires side_info.{name}")

    if kind is DetectorKind.ED:
        need("sigma_b2", "m_a")
        stat = ed_statistic(obs)
        thr = ed_calibrate(pfa, side_info.m_a, side_info.sigma_b2, config.M, config.n_b)
        m_e_eval = side_info.m_e_true
        pd = (
            ed_theoretical_pd(
                thr, side_info.m_a, m_e_eval, side_info.sigma_b2, config.M, config.n_b
            )
            if m_e_eval is not None
            else None
        )
        report = DetectorReport(kind, stat, thr, H1 if stat >= thr else H0, pfa, pd)
    elif kind is DetectorKind.MF:
        need("m_e", "m_a", "sigma_b2")
        stat = mf_statistic(obs, side_info.m_e)
        thr = mf_calibrate(pfa, side_info.m_e, side_info.m_a, side_info.sigma_b2)
        pd = mf_theoretical_pd(thr, side_info.m_e, side_info.m_a, side_info.sigma_b2)
        report = DetectorReport(kind, stat, thr, H1 if stat >= thr else H0, pfa, pd)
    elif kind is DetectorKind.GLRT1:
        need("m_a", "m_e", "eig_params")
        stat = glrt1_statistic(obs, side_info.m_a, side_info.m_e)
        thr = glrt1_calibrate(
            pfa, side_info.m_e, config.M, config.n_b, side_info.eig_params
        )
        pfa_bound = glrt1_pfa_bound(
            thr, side_info.m_e, config.M, config.n_b, side_info.eig_params
        )
        pd_bound = glrt1_pd_bound(
            thr, side_info.m_e, config.M, config.n_b, side_info.eig_params
        )
        report = DetectorReport(
            kind, stat, thr, H1 if stat >= thr else H0, pfa_bound, pd_bound
        )
    elif kind is DetectorKind.GLRT2:
        need("m_a", "omega", "sigma_b2")
        stat = glrt2_statistic(obs, side_info.m_a, side_info.omega)
        thr, pd = glrt2_calibrate_and_curves(
            pfa, side_info.m_a, side_info.m_e_true, side_info.sigma_b2,
            config.M, config.n_b,
        )
        report = DetectorReport(kind, stat, thr, H1 if stat >= thr else H0, pfa, pd)
    else:  # pragma: no cover
        raise ConfigurationError(f"unknown detector kind {kind}")
    return report
