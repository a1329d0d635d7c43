"""Complex Gaussian matrix sampling and Wishart-statistic distributions.

All sampling takes an explicit ``rng`` (a ``numpy.random.Generator``); there
is no global random state.  Distribution evaluations are pure.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .errors import ConfigurationError, NumericError
from .specfun import ChiSquareSpec, as_probability, noncentral_chi2_sf


@dataclass(frozen=True)
class EigCdfParams:
    """Constants of the closed-form CDF for T0 = n_b * gamma_1 / sum(gamma_i).

    ``m`` is the real degree-of-freedom count 2*M*n_b of the underlying
    Wishart matrix; ``k`` and ``varpi`` are the fitted shape/scale constants.
    """

    m: int
    k: float
    varpi: float
    n_b: int

    def __post_init__(self):
        if self.m <= 0 or self.m % 2 != 0:
            raise ValueError("m must be a positive even integer")
        if self.k <= 0 or self.varpi <= 0:
            raise ValueError("k and varpi must be positive")
        if self.m <= 2 * self.k:
            raise ValueError("m > 2k required for a finite normalizer")
        if self.n_b < 1:
            raise ValueError("n_b must be >= 1")


def sample_complex_gaussian(rows, cols, mean, variance, rng):
    """Draw a matrix of i.i.d. circularly-symmetric complex Gaussians.

    Per-entry variance is split equally between real and imaginary parts.
    """
    mean = np.asarray(mean)
    if mean.shape != (rows, cols):
        raise ValueError(f"mean shape {mean.shape} != ({rows}, {cols})")
    if variance <= 0:
        raise ValueError("variance must be positive")
    scale = math.sqrt(variance / 2.0)
    noise = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return mean + scale * noise


def eigvalsh_desc(mat):
    """Eigenvalues of a Hermitian matrix in descending order."""
    return np.linalg.eigvalsh(mat)[::-1]


def sample_t0(m_samples, n_b, trials, rng, chunk=None):
    """Monte Carlo draws of T0 = n_b * gamma_1 / trace for central Wisharts.

    T0 is invariant to the noise scale, so unit-variance entries are used.
    Draws are chunked to keep the Gaussian workspace around ~128 MB.
    """
    if n_b < 2:
        raise ConfigurationError("T0 is degenerate (== 1) for n_b < 2")
    if chunk is None:
        chunk = max(1, (1 << 23) // (n_b * m_samples))
    out = np.empty(trials)
    done = 0
    while done < trials:
        n = min(chunk, trials - done)
        x = rng.standard_normal((n, n_b, m_samples)) + 1j * rng.standard_normal(
            (n, n_b, m_samples)
        )
        w = x @ x.conj().transpose(0, 2, 1)
        gammas = np.linalg.eigvalsh(w)
        out[done : done + n] = n_b * gammas[:, -1] / np.sum(gammas, axis=1)
        done += n
    return out


def _log_2f1_one(b, c, z, max_terms=8_000_000):
    """log of 2F1(1, b; c; z) for b, c > 0 and 0 <= z < 1.

    The terms (b)_j / (c)_j z^j are positive and can exceed the double range
    when b >> c, so the sum is accumulated in the log domain.  Equivalent to
    :func:`losense.specfun.gauss_2f1` wherever that one is representable.
    """
    if z == 0.0:
        return 0.0
    log_z = math.log(z)
    lg_b = special.gammaln(b)
    lg_c = special.gammaln(c)
    total_log = -np.inf
    chunk = 8192
    j = 0
    while j < max_terms:
        idx = np.arange(j, j + chunk, dtype=float)
        log_terms = (
            special.gammaln(b + idx)
            - lg_b
            - special.gammaln(c + idx)
            + lg_c
            + idx * log_z
        )
        total_log = np.logaddexp(total_log, special.logsumexp(log_terms))
        j += chunk
        last = log_terms[-1]
        ratio = z * (b + j) / (c + j)
        # geometric tail bound: remaining mass < t_last * ratio / (1 - ratio)
        if ratio < 1.0 and last - math.log1p(-ratio) < total_log - 46.0:
            return float(total_log)
    raise NumericError(f"hypergeometric series did not converge (z={z})")


def _log_cb(params, y):
    # c * B(y) evaluated through the Euler-transformed series
    #   2F1(k, 1+k-m/2; k+1; z) = (1-z)^(m/2-k) * 2F1(1, m/2; k+1; z),
    # which has all-positive terms and avoids the catastrophic cancellation
    # of the printed parameterization when m/2 - k is large.  The series
    # itself can overflow a double (the (1-z)^(m/2-k) prefactor compensates),
    # so it is summed in the log domain.
    half_m = params.m / 2.0
    k = params.k
    s = params.n_b * params.varpi
    z = y / s
    log_c = (
        special.gammaln(half_m)
        - special.gammaln(half_m - k)
        - special.gammaln(k)
        - math.log(k)
        - k * math.log(s)
    )
    log_series = _log_2f1_one(half_m, k + 1.0, z)
    return log_c + k * math.log(y) + (half_m - k) * math.log1p(-z) + log_series


def scaled_max_eig_cdf(params, y):
    """Closed-form CDF F_{T0}(y) = c (B(y) - B(1)) on support y >= 1.

    Clamped to [0, 1]; monotone nondecreasing in y.  Beyond the fitted scale
    n_b * varpi the CDF saturates at its supremum 1 - c B(1).
    """
    if y < 1.0:
        raise ValueError("scaled_max_eig_cdf requires y >= 1 (support of T0)")
    s = params.n_b * params.varpi
    if s <= 1.0:
        # fitted support lies entirely below 1: degenerate fit
        raise NumericError("fitted T0 scale n_b*varpi <= 1; CDF degenerate")
    cb1 = math.exp(_log_cb(params, 1.0))
    y_eff = min(y, s * (1.0 - 1e-12))
    if y / s >= 1.0 - 1e-12:
        # saturation: remaining beta mass above y_eff is negligible
        return as_probability(1.0 - cb1, "scaled_max_eig_cdf")
    val = math.exp(_log_cb(params, y_eff)) - cb1
    return as_probability(val, "scaled_max_eig_cdf")


@lru_cache(maxsize=4096)
def scaled_max_eig_cdf_inverse(params, p):
    """Solve F_{T0}(y) = p on [1, n_b*varpi] by bisection (memoized)."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError("probability required")
    s = params.n_b * params.varpi
    lo, hi = 1.0, s
    f_hi = scaled_max_eig_cdf(params, hi)
    if p >= f_hi:
        return hi
    if p <= 0.0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if scaled_max_eig_cdf(params, mid) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12 * s:
            break
    return 0.5 * (lo + hi)


def calibrate_eig_cdf_params(m_samples, n_b, trials, rng):
    """Fit (k, varpi) by matching the first two empirical moments of T0.

    Under the fitted law, T0 / (n_b*varpi) is Beta(k, m/2 - k); matching the
    empirical mean mu and variance v gives the closed-form solution
        scale = mu + v (M n_b + 1) / mu,   k = M n_b mu / scale.
    Deterministic given the rng state.
    """
    if trials < 1000:
        raise ConfigurationError("calibration requires trials >= 1e3")
    if n_b < 2:
        raise ConfigurationError(
            "n_b = 1 makes T0 identically 1; calibration is degenerate"
        )
    t0 = sample_t0(m_samples, n_b, trials, rng)
    mu = float(np.mean(t0))
    v = float(np.var(t0))
    if v <= 0.0 or mu <= 0.0:
        raise NumericError("moment system has no positive solution")
    n = m_samples * n_b
    scale = mu + v * (n + 1.0) / mu
    k = n * mu / scale
    if not (0.0 < k < n):
        raise NumericError("moment system has no positive solution")
    return EigCdfParams(m=2 * m_samples * n_b, k=k, varpi=scale / n_b, n_b=n_b)


def wishart_trace_sf(spec, x):
    """Survival function of the trace of a (non)central Wishart matrix.

    With white noise covariance sigma^2 I the trace is exactly a scaled
    (non)central chi-square with 2*M*N_b real degrees of freedom, so the
    weighted-series expansion collapses to the single-term case and this
    delegates to :func:`noncentral_chi2_sf`.
    """
    return noncentral_chi2_sf(spec, x)


__all__ = [
    "ChiSquareSpec",
    "EigCdfParams",
    "calibrate_eig_cdf_params",
    "eigvalsh_desc",
    "sample_complex_gaussian",
    "sample_t0",
    "scaled_max_eig_cdf",
    "scaled_max_eig_cdf_inverse",
    "wishart_trace_sf",
]
