"""Maximum likelihood and approximate maximum likelihood estimation.

For fixed shape ``alpha`` the rate MLEs are ``k_j / A(alpha)``, so the shape
MLE is the root of the profile score

    1/alpha - H(alpha) + mean(log w) = 0,

which is strictly decreasing in ``alpha`` (``H`` is a weighted mean of
``log w`` with weights growing in ``alpha``), so it has exactly one root.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import logm

from ._roots import RootFindingError, brent, expand_bracket
from .model import log_a_of_alpha, spacings_matrix, weighted_log_moments

EULER_GAMMA = 0.5772156649015329
_SEED_NUMERATOR = math.log(math.log(4.0)) - math.log(math.log(4.0 / 3.0))


class EstimationError(ArithmeticError):
    pass


class ConvergenceError(EstimationError):
    """The profile score root could not be located."""


class BoundaryFitError(EstimationError):
    """One line has no observed failures, so its rate MLE is zero.

    ``fit`` carries the shape estimate and the (boundary) rate estimates.
    """

    def __init__(self, message, fit):
        super().__init__(message)
        self.fit = fit


class AmleDegenerateError(EstimationError):
    """The AMLE quadratic has no usable positive root."""


@dataclass(frozen=True)
class WeibullFit:
    alpha: float
    lambda1: float
    lambda2: float
    method: str
    converged: bool = True
    score_residual: float = 0.0

    @property
    def total_rate(self):
        return self.lambda1 + self.lambda2

    def as_tuple(self):
        return (self.alpha, self.lambda1, self.lambda2)

    def to_dict(self):
        return {
            "method": self.method,
            "alpha": self.alpha,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "converged": self.converged,
            "score_residual": self.score_residual,
        }


@dataclass(frozen=True)
class ProfileDiagnostics:
    alpha_bracket: tuple
    iterations: int
    score_at_root: float


def h_of_alpha(sample, alpha):
    """Weighted mean of ``log w_i`` with weights ``c_i w_i**alpha``."""
    return weighted_log_moments(sample, alpha)[1]


def profile_score(sample, alpha):
    """Derivative of the profile log-likelihood divided by ``k``."""
    return 1.0 / alpha - h_of_alpha(sample, alpha) + sample.log_w.mean()


def profile_loglik(sample, alpha):
    """Profile log-likelihood ``k log alpha - k log A + (alpha-1) sum log w``."""
    k = sample.k
    return k * math.log(alpha) - k * log_a_of_alpha(sample, alpha) + (alpha - 1.0) * sample.log_w.sum()


def loglik(sample, alpha, lambda1, lambda2):
    """Log-likelihood without the normalising constant."""
    k1, k2 = sample.k1, sample.k2
    a = math.exp(log_a_of_alpha(sample, alpha))
    out = sample.k * math.log(alpha) - (lambda1 + lambda2) * a + (alpha - 1.0) * sample.log_w.sum()
    if k1:
        out += k1 * math.log(lambda1)
    if k2:
        out += k2 * math.log(lambda2)
    return out


def _initial_shape(log_w):
    k = log_w.shape[-1]
    hi = log_w[..., math.ceil(3 * k / 4) - 1]
    lo = log_w[..., math.ceil(k / 4) - 1]
    spread = hi - lo
    with np.errstate(divide="ignore", invalid="ignore"):
        seed = np.where(spread > 0, _SEED_NUMERATOR / spread, 1.0)
    return seed


def rates_at(sample, alpha):
    a = math.exp(log_a_of_alpha(sample, alpha))
    return sample.k1 / a, sample.k2 / a


def _finish(sample, alpha, method, converged, residual):
    l1, l2 = rates_at(sample, alpha)
    fit = WeibullFit(float(alpha), l1, l2, method, converged, float(residual))
    if sample.k1 == 0 or sample.k2 == 0:
        raise BoundaryFitError(
            f"k1={sample.k1}, k2={sample.k2}: a rate estimate lies on the boundary", fit)
    return fit


def fit_mle(sample, xtol=1e-13):
    """Exact MLE via the profile score root.

    Returns ``(WeibullFit, ProfileDiagnostics)``.  Raises
    :class:`BoundaryFitError` when one line has no failures and
    :class:`ConvergenceError` if the root cannot be found.
    """
    seed = float(_initial_shape(sample.log_w))
    score = lambda a: profile_score(sample, a)
    try:
        lo, hi = expand_bracket(score, seed, lower=1e-12, upper=1e12, increasing=False)
        root, iters = brent(score, lo, hi, xtol=xtol, rtol=1e-15)
    except RootFindingError as exc:
        raise ConvergenceError(str(exc)) from exc
    residual = score(root)
    residual = float(residual)
    diag = ProfileDiagnostics((lo, hi), iters, residual)
    return _finish(sample, root, "MLE", True, residual), diag


# -- vectorised MLE for simulation harnesses -----------------------------------

def _batch_moments(alpha, log_w, c):
    x = alpha[:, None] * log_w
    top = x.max(axis=1, keepdims=True)
    wt = c * np.exp(x - top)
    s = wt.sum(axis=1)
    h = (wt * log_w).sum(axis=1) / s
    dh = (wt * (log_w - h[:, None]) ** 2).sum(axis=1) / s
    return top[:, 0] + np.log(s), h, dh


def fit_mle_batch(log_w, z, c, tol=1e-12, maxiter=200):
    """Profile-score MLE for many samples at once.

    ``log_w`` and ``z`` have shape ``(n, k)``; ``c`` holds the scheme weights.
    Uses Newton steps safeguarded by a bisection bracket.  Returns arrays
    ``alpha, lambda1, lambda2``; rows with ``k1 == 0`` or ``k2 == 0`` get a
    zero rate.
    """
    log_w = np.atleast_2d(np.asarray(log_w, dtype=float))
    z = np.atleast_2d(z)
    mean_lw = log_w.mean(axis=1)
    score = lambda a, h: 1.0 / a - h + mean_lw

    x = np.asarray(_initial_shape(log_w), dtype=float)
    lo = x.copy()
    hi = x.copy()
    _, h, _ = _batch_moments(lo, log_w, c)
    s = score(lo, h)
    for _ in range(2000):
        bad = s < 0
        if not bad.any():
            break
        hi = np.where(bad, lo, hi)
        lo = np.where(bad, lo / 2.0, lo)
        _, h, _ = _batch_moments(lo, log_w, c)
        s = score(lo, h)
    _, h, _ = _batch_moments(hi, log_w, c)
    s = score(hi, h)
    for _ in range(2000):
        bad = s > 0
        if not bad.any():
            break
        lo = np.where(bad, hi, lo)
        hi = np.where(bad, hi * 2.0, hi)
        _, h, _ = _batch_moments(hi, log_w, c)
        s = score(hi, h)

    x = np.clip(x, lo, hi)
    for _ in range(maxiter):
        _, h, dh = _batch_moments(x, log_w, c)
        s = score(x, h)
        lo = np.where(s > 0, x, lo)
        hi = np.where(s < 0, x, hi)
        step = s / (1.0 / x ** 2 + dh)
        nxt = x + step
        outside = (nxt <= lo) | (nxt >= hi)
        nxt = np.where(outside, 0.5 * (lo + hi), nxt)
        done = np.abs(nxt - x) <= tol * np.abs(x)
        x = nxt
        if done.all():
            break
    else:
        raise ConvergenceError("batch profile-score iteration did not converge")
    loga, _, _ = _batch_moments(x, log_w, c)
    a = np.exp(loga)
    k1 = z.sum(axis=1)
    k2 = z.shape[1] - k1
    return x, k1 / a, k2 / a


# -- AMLE ------------------------------------------------------------------------

def xi_constants(scheme):
    """``E(log T_i)`` for ``T_i`` a sum of exponentials with rates ``a_1..a_i``.

    With ``B`` the bidiagonal spacings matrix, ``E(log T_i) = -gamma - e_1' log(B_i) 1``
    where ``B_i`` is the leading ``i x i`` block.  ``B`` is upper triangular, so
    the leading blocks of ``log(B)`` are the logarithms of the leading blocks
    and one matrix logarithm gives every ``xi_i``.
    """
    log_b, _ = logm(spacings_matrix(scheme), disp=False)
    return -EULER_GAMMA - np.cumsum(np.real(log_b[0]))


def xi_log_mean(scheme):
    """``log E(T_i) = log(sum_{j<=i} 1/a_j)``, the log of the mean standardized time."""
    return np.log(np.cumsum(1.0 / scheme.alive))


XI_RULES = {"log_mean": xi_log_mean, "exact": xi_constants}


def amle_coefficients(log_w, c, xi):
    """Quadratic coefficients ``(q2, q1)`` of ``q2 a^2 + q1 a - k = 0``."""
    v = np.asarray(log_w, dtype=float)
    k = v.shape[-1]
    ea = np.exp(xi)
    eb = ea * (1.0 - xi)
    ca = c * ea
    e1 = (ca * v * v).sum(axis=-1)
    e2 = (ca * v).sum(axis=-1)
    e3 = ((c * eb - 1.0) * v).sum(axis=-1)
    d1 = e2
    d2 = ca.sum()
    d3 = k - (c * eb).sum()
    q2 = e1 - d1 * e2 / d2
    q1 = e3 + d3 * e2 / d2
    return q2, q1


def _amle_root(q2, q1, k):
    # 2k / (q1 + sqrt(q1^2 + 4 q2 k)) is the root that tends to k/q1 as q2 -> 0
    disc = q1 * q1 + 4.0 * q2 * k
    with np.errstate(invalid="ignore", divide="ignore"):
        den = q1 + np.sqrt(disc)
        root = np.where((disc >= 0) & (den > 0), 2.0 * k / den, np.nan)
    return root


def fit_amle(sample, xi="log_mean"):
    """Closed-form AMLE of ``(alpha, lambda1, lambda2)``.

    ``xi`` selects the expansion points: ``"log_mean"`` (log of the expected
    standardized failure time, the default) or ``"exact"`` (expected log,
    :func:`xi_constants`); an explicit array is also accepted.
    """
    xis = XI_RULES[xi](sample.scheme) if isinstance(xi, str) else np.asarray(xi, dtype=float)
    q2, q1 = amle_coefficients(sample.log_w, sample.scheme.c, xis)
    alpha = float(_amle_root(q2, q1, sample.k))
    if not (np.isfinite(alpha) and alpha > 0):
        raise AmleDegenerateError(f"no positive root: q2={q2:.6g}, q1={q1:.6g}")
    return _finish(sample, alpha, "AMLE", True, 0.0)


def fit_amle_batch(log_w, z, scheme, xi="log_mean"):
    """AMLE for many samples; degenerate rows come back as NaN."""
    log_w = np.atleast_2d(log_w)
    z = np.atleast_2d(z)
    xis = XI_RULES[xi](scheme) if isinstance(xi, str) else np.asarray(xi, dtype=float)
    c = scheme.c
    q2, q1 = amle_coefficients(log_w, c, xis)
    alpha = _amle_root(q2, q1, scheme.k)
    safe = np.where(np.isfinite(alpha), alpha, 1.0)
    loga, _, _ = _batch_moments(safe, log_w, c)
    a = np.where(np.isfinite(alpha), np.exp(loga), np.nan)
    k1 = z.sum(axis=1)
    return alpha, k1 / a, (scheme.k - k1) / a
