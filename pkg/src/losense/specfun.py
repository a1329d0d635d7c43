"""Special functions and scalar distributions behind the detector theory curves.

Everything here is pure and stateless: safe to call from any number of
threads.  Probabilities are clamped to [0, 1] after floating-point
evaluation; a clamp larger than ``CLAMP_TOL`` raises :class:`AccuracyWarning`.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special

from .errors import AccuracyWarning, NumericError

CLAMP_TOL = 1e-9

# Poisson-mixture series is used while the mixture mean a^2/2 stays below
# this boundary; beyond it the exponentially-scaled quadrature takes over.
MARCUM_SERIES_LIMIT = 1.0e6


def as_probability(value, context=""):
    """Clamp ``value`` to [0, 1], warning if the excursion is non-trivial."""
    v = float(value)
    if v < 0.0 or v > 1.0:
        excess = max(-v, v - 1.0)
        if excess > CLAMP_TOL:
            warnings.warn(
                f"probability clamped by {excess:.3e}"
                + (f" in {context}" if context else ""),
                AccuracyWarning,
                stacklevel=2,
            )
        v = min(1.0, max(0.0, v))
    return v


@dataclass(frozen=True)
class ChiSquareSpec:
    """Scaled noncentral chi-square: ``scale * chi2'_dof(noncentrality)``."""

    dof: int
    noncentrality: float
    scale: float

    def __post_init__(self):
        if self.dof < 1 or int(self.dof) != self.dof:
            raise ValueError(f"dof must be a positive integer, got {self.dof}")
        if self.noncentrality < 0.0:
            raise ValueError("noncentrality must be nonnegative")
        if self.scale <= 0.0:
            raise ValueError("scale must be positive")


def bessel_i(order, x):
    """Modified Bessel function of the first kind, I_order(x), x >= 0."""
    if x < 0:
        raise ValueError("bessel_i requires x >= 0")
    if order < 0 or int(order) != order:
        raise ValueError("bessel_i requires a nonnegative integer order")
    return float(special.iv(order, x))


def bessel_i_scaled(order, x):
    """Exponentially scaled variant exp(-x) * I_order(x) for large x."""
    if x < 0:
        raise ValueError("bessel_i_scaled requires x >= 0")
    if order < 0 or int(order) != order:
        raise ValueError("bessel_i_scaled requires a nonnegative integer order")
    return float(special.ive(order, x))


def _marcum_q_series(k, a, b):
    # Poisson mixture of regularized upper-gamma tails:
    #   Q_k(a, b) = sum_j pois(j; a^2/2) * Gammaincc(k + j, b^2/2)
    # All terms positive, so the window sum has no cancellation.
    mu = 0.5 * a * a
    y = 0.5 * b * b
    if mu == 0.0:
        return float(special.gammaincc(k, y))
    half_width = int(math.ceil(9.0 * math.sqrt(mu + 1.0))) + 20
    j0 = int(mu)
    j_lo = max(0, j0 - half_width)
    j_hi = j0 + half_width
    j = np.arange(j_lo, j_hi + 1)
    log_w = -mu + j * math.log(mu) - special.gammaln(j + 1.0)
    return float(np.sum(np.exp(log_w) * special.gammaincc(k + j, y)))


def _marcum_q_quad(k, a, b):
    # Defining integral with the Bessel factor exponentially rescaled:
    # combining exp(-(t^2+a^2)/2) with exp(at) from ive gives exp(-(t-a)^2/2),
    # so the integrand is overflow-free wherever ive itself is representable.
    nu = k - 1.0

    def log_integrand(t):
        ive = special.ive(nu, a * t)
        if ive <= 0.0:
            return -np.inf
        return (
            -0.5 * (t - a) ** 2
            + nu * math.log(t / a)
            + math.log(t)
            + math.log(ive)
        )

    # Integrand peaks where t^2 - a t - nu = 0.
    t_star = 0.5 * (a + math.sqrt(a * a + 4.0 * max(nu, 0.0)))
    t_hi = max(b, t_star) + 50.0
    if b >= t_hi:
        return 0.0
    if log_integrand(max(b, t_star)) == -np.inf:
        raise NumericError(
            "marcum_q quadrature outside the representable range of the "
            f"scaled Bessel function (k={k}, a={a}, b={b})"
        )

    def integrand(t):
        lg = log_integrand(t)
        return 0.0 if lg == -np.inf else math.exp(lg)

    points = [p for p in (t_star, t_star - 5.0, t_star + 5.0) if b < p < t_hi]
    val, _ = integrate.quad(
        integrand, b, t_hi, points=points or None, limit=400, epsabs=1e-13, epsrel=1e-12
    )
    return val


def marcum_q(k, a, b):
    """Generalized Marcum Q-function Q_k(a, b).

    Equals the survival function of a noncentral chi distribution:
    ``Q_k(a, b) = Pr{chi2'_{2k}(a^2) >= b^2}``.  Nonincreasing in ``b``,
    nondecreasing in ``a``.
    """
    if a < 0 or b < 0:
        raise ValueError("marcum_q requires a >= 0 and b >= 0")
    if k < 0.5:
        raise ValueError("marcum_q requires k >= 1/2")
    if b == 0.0:
        return 1.0
    if 0.5 * a * a <= MARCUM_SERIES_LIMIT:
        q = _marcum_q_series(k, a, b)
    else:
        q = _marcum_q_quad(k, a, b)
    return as_probability(q, "marcum_q")


def marcum_q_inverse_b(k, a, p):
    """Invert Q_k(a, .) in its second argument.

    Returns b with ``|marcum_q(k, a, b) - p| < 1e-10``.  Numeric inversion
    (bracketing plus Brent) rather than a closed-form approximation, so the
    roundtrip is exact to tolerance.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError("marcum_q_inverse_b requires 0 < p <= 1")
    if p == 1.0:
        return 0.0

    def f(b):
        return marcum_q(k, a, b) - p

    # chi2'_{2k}(a^2) has mean 2k + a^2; expand the upper bracket until the
    # tail drops below p.
    mean = 2.0 * k + a * a
    hi = math.sqrt(mean + 10.0 * math.sqrt(2.0 * mean))
    for _ in range(200):
        if f(hi) < 0.0:
            break
        hi *= 2.0
    else:
        raise NumericError("marcum_q_inverse_b failed to bracket the root")
    b = optimize.brentq(f, 0.0, hi, xtol=1e-14, rtol=8.9e-16, maxiter=200)
    if abs(marcum_q(k, a, b) - p) >= 1e-10:
        raise NumericError("marcum_q_inverse_b residual exceeds 1e-10")
    return float(b)


def noncentral_chi2_sf(spec, x):
    """Survival function Pr{X >= x} for a :class:`ChiSquareSpec` variate.

    Uses the identity SF(x) = Q_{dof/2}(sqrt(noncentrality), sqrt(x/scale)).
    """
    if x < 0:
        raise ValueError("noncentral_chi2_sf requires x >= 0")
    return marcum_q(
        spec.dof / 2.0,
        math.sqrt(spec.noncentrality),
        math.sqrt(x / spec.scale),
    )


def reg_gamma_p(s, x):
    """Lower regularized incomplete gamma P(s, x)."""
    if s <= 0:
        raise ValueError("reg_gamma_p requires s > 0")
    if x < 0:
        raise ValueError("reg_gamma_p requires x >= 0")
    return as_probability(special.gammainc(s, x), "reg_gamma_p")


def reg_gamma_p_inverse(s, p):
    """Solve P(s, x) = p for x by bracketing and Brent iteration."""
    if s <= 0:
        raise ValueError("reg_gamma_p_inverse requires s > 0")
    if not 0.0 <= p < 1.0:
        raise ValueError("reg_gamma_p_inverse requires 0 <= p < 1")
    if p == 0.0:
        return 0.0
    hi = s + 10.0 * math.sqrt(s) + 10.0
    for _ in range(200):
        if special.gammainc(s, hi) > p:
            break
        hi *= 2.0
    else:
        raise NumericError("reg_gamma_p_inverse failed to bracket the root")
    x = optimize.brentq(
        lambda t: special.gammainc(s, t) - p, 0.0, hi, xtol=1e-300, rtol=8.9e-16
    )
    return float(x)


def gauss_2f1(a, b, c, x, rel_tol=1e-12, max_terms=2_000_000):
    """Gauss hypergeometric function 2F1(a, b; c; x) by power series.

    Valid for |x| < 1 and c not a nonpositive integer; terms are generated in
    blocks and summation stops once the last included term falls below
    ``rel_tol`` times the running sum.  Raises :class:`NumericError` when the
    series fails to converge within ``max_terms``.
    """
    if c <= 0 and c == int(c):
        raise ValueError("gauss_2f1 requires c not a nonpositive integer")
    if abs(x) >= 1.0:
        raise NumericError(f"gauss_2f1 series does not converge for |x| >= 1 (x={x})")
    if x == 0.0:
        return 1.0

    block = 4096
    total = 1.0
    term = 1.0
    j = 0
    while j < max_terms:
        idx = np.arange(j, j + block, dtype=float)
        ratios = (a + idx) * (b + idx) / ((c + idx) * (idx + 1.0)) * x
        terms = term * np.cumprod(ratios)
        total += float(np.sum(terms))
        term = float(terms[-1])
        j += block
        if term == 0.0:
            return total  # polynomial case: a Pochhammer factor hit zero
        if abs(term) < rel_tol * abs(total):
            # require the trailing ratio to be contracting so the geometric
            # tail really is negligible (it tends to x as j grows)
            if abs(ratios[-1]) < 0.9999:
                return total
        if not math.isfinite(total):
            raise NumericError(f"gauss_2f1 series overflowed (x={x})")
    raise NumericError(
        f"gauss_2f1 did not converge within {max_terms} terms (x={x})"
    )


def gaussian_q(x):
    """Standard normal tail probability Q(x) = Pr{N(0,1) >= x}."""
    return as_probability(0.5 * special.erfc(x / math.sqrt(2.0)), "gaussian_q")


def gaussian_q_inverse(p):
    """Inverse of the standard normal tail, Q^{-1}(p) for 0 < p < 1."""
    if not 0.0 < p < 1.0:
        raise ValueError("gaussian_q_inverse requires 0 < p < 1")
    return float(-special.ndtri(p))
