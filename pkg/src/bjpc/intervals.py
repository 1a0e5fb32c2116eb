"""Asymptotic (observed information) and percentile bootstrap intervals."""

import math
from dataclasses import dataclass

import numpy as np

from .estimate import EstimationError, fit_mle_batch
from .model import WeibullParams
from .simulate import _as_generator, simulate_spacings_batch
from .special_fn import std_normal_quantile

PARAMETERS = ("alpha", "lambda1", "lambda2")


class SingularInformationError(EstimationError):
    pass


class BootstrapError(EstimationError):
    pass


@dataclass(frozen=True)
class IntervalEstimate:
    parameter: str
    lower: float
    upper: float
    level: float
    method: str

    @property
    def length(self):
        return self.upper - self.lower

    def covers(self, value):
        return self.lower <= value <= self.upper

    def to_dict(self):
        return {"parameter": self.parameter, "lower": self.lower, "upper": self.upper,
                "level": self.level, "method": self.method}


def observed_information(sample, fit):
    """Negative Hessian of the log-likelihood at ``fit``, ordered (alpha, lambda1, lambda2)."""
    alpha, l1, l2 = fit.as_tuple()
    if not (l1 > 0 and l2 > 0):
        raise SingularInformationError("observed information needs interior rate estimates")
    lw = sample.log_w
    x = alpha * lw
    top = x.max()
    base = sample.scheme.c * np.exp(x - top)
    scale = math.exp(top)
    s1 = float(np.dot(base, lw)) * scale
    s2 = float(np.dot(base, lw * lw)) * scale
    k = sample.k
    info = np.array([
        [k / alpha ** 2 + (l1 + l2) * s2, s1, s1],
        [s1, sample.k1 / l1 ** 2, 0.0],
        [s1, 0.0, sample.k2 / l2 ** 2],
    ])
    return info


def asymptotic_ci(sample, fit, level=0.90):
    """Wald intervals ``theta_hat +- z * se`` with rate lower limits clamped at 0."""
    info = observed_information(sample, fit)
    try:
        np.linalg.cholesky(info)
        cov = np.linalg.inv(info)
    except np.linalg.LinAlgError as exc:
        raise SingularInformationError("observed information is not positive definite") from exc
    zq = std_normal_quantile(1.0 - (1.0 - level) / 2.0)
    out = []
    for i, (name, est) in enumerate(zip(PARAMETERS, fit.as_tuple())):
        half = zq * math.sqrt(cov[i, i])
        lower = est - half
        if name != "alpha":
            lower = max(lower, 0.0)
        out.append(IntervalEstimate(name, lower, est + half, level, "asymptotic"))
    return out


def percentile_bounds(values, level):
    """Order statistics at ranks ``ceil(q B)`` for ``q = (1-level)/2`` and ``1 - (1-level)/2``."""
    v = np.sort(np.asarray(values, dtype=float))
    b = v.size
    q = (1.0 - level) / 2.0
    lo_rank = max(1, math.ceil(q * b - 1e-9))
    hi_rank = min(b, math.ceil((1.0 - q) * b - 1e-9))
    return float(v[lo_rank - 1]), float(v[hi_rank - 1])


def bootstrap_replicates(scheme, fit, B, rng):
    """Parametric bootstrap refits; returns ``(alpha, lambda1, lambda2, n_failed)``.

    Samples are drawn at the fitted parameters under the same scheme and
    refitted by MLE; draws with an empty line cannot be fitted and are dropped.
    """
    params = WeibullParams(*fit.as_tuple())
    w, z = simulate_spacings_batch(scheme, params, B, rng)
    k1 = z.sum(axis=1)
    ok = (k1 > 0) & (k1 < scheme.k)
    a, l1, l2 = fit_mle_batch(np.log(w[ok]), z[ok], scheme.c)
    return a, l1, l2, int(B - ok.sum())


def bootstrap_ci(sample, fit, level=0.90, B=1000, rng=None, max_fail=0.05):
    """Percentile intervals from a parametric bootstrap with MLE refits."""
    if B < 100:
        raise ValueError("bootstrap needs B >= 100")
    a, l1, l2, failed = bootstrap_replicates(sample.scheme, fit, B, _as_generator(rng))
    if failed > max_fail * B:
        raise BootstrapError(f"{failed} of {B} bootstrap samples could not be fitted")
    out = []
    for name, vals in zip(PARAMETERS, (a, l1, l2)):
        lo, hi = percentile_bounds(vals, level)
        if name != "alpha":
            lo = max(lo, 0.0)
        out.append(IntervalEstimate(name, lo, hi, level, "bootstrap"))
    return out


# -- batch versions for coverage experiments ---------------------------------------

def asymptotic_ci_batch(log_w, z, c, alpha, l1, l2, level=0.90):
    """Vectorised Wald intervals; returns ``(lower, upper)`` arrays of shape ``(n, 3)``."""
    k = log_w.shape[1]
    k1 = z.sum(axis=1)
    k2 = k - k1
    x = alpha[:, None] * log_w
    top = x.max(axis=1, keepdims=True)
    base = c * np.exp(x - top)
    scale = np.exp(top[:, 0])
    s1 = (base * log_w).sum(axis=1) * scale
    s2 = (base * log_w ** 2).sum(axis=1) * scale
    iaa = k / alpha ** 2 + (l1 + l2) * s2
    i11 = k1 / l1 ** 2
    i22 = k2 / l2 ** 2
    # inverse of [[iaa, s1, s1], [s1, i11, 0], [s1, 0, i22]] via the Schur complement
    schur = iaa - s1 ** 2 / i11 - s1 ** 2 / i22
    var_a = 1.0 / schur
    var_1 = 1.0 / i11 + (s1 / i11) ** 2 / schur
    var_2 = 1.0 / i22 + (s1 / i22) ** 2 / schur
    zq = std_normal_quantile(1.0 - (1.0 - level) / 2.0)
    est = np.column_stack([alpha, l1, l2])
    half = zq * np.sqrt(np.column_stack([var_a, var_1, var_2]))
    lower = est - half
    lower[:, 1:] = np.maximum(lower[:, 1:], 0.0)
    return lower, est + half
