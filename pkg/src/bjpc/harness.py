"""Monte-Carlo studies: estimator bias/MSE, interval coverage, exact-region coverage."""

import math
from dataclasses import dataclass, field

import numpy as np

from .estimate import WeibullFit, fit_amle_batch, fit_mle_batch
from .intervals import PARAMETERS, asymptotic_ci_batch, bootstrap_replicates, percentile_bounds
from .region import (chi2_bounds, f_bounds, phi_inverse_batch, _log_t1, split_gamma)
from .simulate import _as_generator, simulate_spacings_batch


@dataclass
class Summary:
    """Mean with Monte-Carlo standard error."""

    mean: float
    se: float

    @classmethod
    def of(cls, x):
        x = np.asarray(x, dtype=float)
        return cls(float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size)))


def draw_fittable(scheme, params, reps, rng):
    """Draw ``reps`` samples with both lines represented.

    Samples with ``k1 == 0`` or ``k2 == 0`` have no interior MLE; they are
    discarded and redrawn.  Returns ``(W, Z, discarded)``.
    """
    gen = _as_generator(rng)
    w, z = simulate_spacings_batch(scheme, params, reps, gen)
    discarded = 0
    while True:
        k1 = z.sum(axis=1)
        bad = np.flatnonzero((k1 == 0) | (k1 == scheme.k))
        if bad.size == 0:
            return w, z, discarded
        discarded += bad.size
        w2, z2 = simulate_spacings_batch(scheme, params, bad.size, gen)
        w[bad] = w2
        z[bad] = z2


@dataclass
class PointStudy:
    reps: int
    discarded: int
    # results[method][parameter] = (AE Summary, MSE Summary)
    results: dict = field(default_factory=dict)


def point_estimate_study(scheme, params, reps, rng, xi="log_mean"):
    """Average estimate and MSE of the MLE and AMLE over ``reps`` samples."""
    w, z, discarded = draw_fittable(scheme, params, reps, rng)
    lw = np.log(w)
    truth = params.as_tuple()
    study = PointStudy(reps, discarded)
    for method, est in (("MLE", fit_mle_batch(lw, z, scheme.c)),
                        ("AMLE", fit_amle_batch(lw, z, scheme, xi=xi))):
        study.results[method] = {
            name: (Summary.of(e), Summary.of((e - t) ** 2))
            for name, e, t in zip(PARAMETERS, est, truth)
        }
    return study


@dataclass
class IntervalStudy:
    reps: int
    # results[method][parameter] = (average length Summary, coverage Summary in %)
    results: dict = field(default_factory=dict)
    bootstrap_failures: int = 0


def interval_study(scheme, params, reps, rng, level=0.90, boot_reps=None):
    """Coverage and average length of asymptotic and (optionally) bootstrap intervals."""
    gen = _as_generator(rng)
    w, z, _ = draw_fittable(scheme, params, reps, gen)
    lw = np.log(w)
    a, l1, l2 = fit_mle_batch(lw, z, scheme.c)
    truth = np.array(params.as_tuple())
    study = IntervalStudy(reps)

    lower, upper = asymptotic_ci_batch(lw, z, scheme.c, a, l1, l2, level)
    study.results["asymptotic"] = _length_coverage(lower, upper, truth)

    if boot_reps:
        lower = np.empty((reps, 3))
        upper = np.empty((reps, 3))
        for r in range(reps):
            fit = WeibullFit(a[r], l1[r], l2[r], "MLE")
            *reps_est, failed = bootstrap_replicates(scheme, fit, boot_reps, gen)
            study.bootstrap_failures += failed
            for j, vals in enumerate(reps_est):
                lower[r, j], upper[r, j] = percentile_bounds(vals, level)
        lower[:, 1:] = np.maximum(lower[:, 1:], 0.0)
        study.results["bootstrap"] = _length_coverage(lower, upper, truth)
    return study


def _length_coverage(lower, upper, truth):
    inside = (lower <= truth) & (truth <= upper)
    return {
        name: (Summary.of(upper[:, j] - lower[:, j]), Summary.of(100.0 * inside[:, j]))
        for j, name in enumerate(PARAMETERS)
    }


def pivot_draws(scheme, params, reps, rng):
    """Shape and rate pivots evaluated at the true parameters."""
    w, _ = simulate_spacings_batch(scheme, params, reps, rng)
    lw = np.log(w)
    c = scheme.c
    t1 = np.exp(_log_t1(np.full(reps, params.alpha), lw, c))
    t2 = 2.0 * params.total_rate * (c * w ** params.alpha).sum(axis=1)
    return t1, t2


@dataclass
class RegionCoverage:
    alpha: float
    rates: float
    joint: float
    reps: int


def region_coverage(scheme, params, gamma, reps, rng, split=None):
    """Empirical coverage of the exact shape interval, rate set and joint region."""
    g1, g2 = split if split is not None else split_gamma(gamma)
    w, _ = simulate_spacings_batch(scheme, params, reps, rng)
    lw = np.log(w)
    c = scheme.c
    flo, fhi = f_bounds(scheme.k, g1)
    lo = phi_inverse_batch(lw, c, flo)
    hi = phi_inverse_batch(lw, c, fhi)
    in_alpha = (lo <= params.alpha) & (params.alpha <= hi)
    qlo, qhi = chi2_bounds(scheme.k, g2)
    t2 = 2.0 * params.total_rate * (c * w ** params.alpha).sum(axis=1)
    in_rates = (qlo < t2) & (t2 < qhi)
    return RegionCoverage(float(in_alpha.mean()), float(in_rates.mean()),
                          float((in_alpha & in_rates).mean()), reps)
