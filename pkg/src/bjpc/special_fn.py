"""Quantiles of the chi-square, F and standard normal laws.

The chi-square and F quantiles use the *upper-tail* convention: the
returned value ``q`` satisfies ``P(X > q) = p``.  The normal quantile is the
ordinary lower-tail inverse CDF.  All quantiles are obtained by bracketing
root finding on incomplete gamma / incomplete beta evaluations.
"""

import math
from functools import lru_cache

from ._roots import brent, expand_bracket

_MAXITER = 100_000
_TINY = 1e-300
_CF_EPS = 1e-16


def _check_prob(p):
    if not (0.0 < p < 1.0):
        raise ValueError(f"probability must lie in (0, 1), got {p!r}")


def _check_dof(*dofs):
    for d in dofs:
        if not d > 0:
            raise ValueError(f"degrees of freedom must be positive, got {d!r}")


def ln_gamma(x):
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise ValueError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


# -- incomplete gamma --------------------------------------------------------

def _gamma_series(a, x):
    # lower regularized P(a, x), valid for x < a + 1
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAXITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _CF_EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cf(a, x):
    # upper regularized Q(a, x) by modified Lentz, valid for x >= a + 1
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAXITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gamma_inc(a, x):
    """Return ``(P, Q)``, the lower and upper regularized incomplete gamma."""
    if x <= 0.0:
        return 0.0, 1.0
    if x < a + 1.0:
        p = _gamma_series(a, x)
        return p, 1.0 - p
    q = _gamma_cf(a, x)
    return 1.0 - q, q


# -- incomplete beta ---------------------------------------------------------

def _beta_cf(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAXITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            break
    return h


def beta_inc(a, b, x):
    """Regularized incomplete beta ``I_x(a, b)``."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    lnfront = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
               + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(lnfront)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


# -- distribution functions --------------------------------------------------

def chi2_sf(q, dof):
    """Upper-tail probability ``P(X > q)`` of a chi-square variable."""
    _check_dof(dof)
    return gamma_inc(0.5 * dof, 0.5 * q)[1]


def chi2_cdf(q, dof):
    _check_dof(dof)
    return gamma_inc(0.5 * dof, 0.5 * q)[0]


def f_sf(q, d1, d2):
    """Upper-tail probability ``P(F > q)`` of an F(d1, d2) variable."""
    _check_dof(d1, d2)
    if q <= 0.0:
        return 1.0
    # P(F > q) = I_{d2/(d2 + d1 q)}(d2/2, d1/2)
    x = d2 / (d2 + d1 * q)
    return beta_inc(0.5 * d2, 0.5 * d1, x)


def f_cdf(q, d1, d2):
    _check_dof(d1, d2)
    if q <= 0.0:
        return 0.0
    x = d1 * q / (d1 * q + d2)
    return beta_inc(0.5 * d1, 0.5 * d2, x)


def std_normal_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


# -- quantiles ---------------------------------------------------------------

def _tail_quantile(p, sf, cdf, x0):
    # work on whichever tail is smaller so the residual keeps full precision
    if p <= 0.5:
        g = lambda lq: p - sf(math.exp(lq))
    else:
        g = lambda lq: cdf(math.exp(lq)) - (1.0 - p)
    lo, hi = expand_bracket(lambda q: g(math.log(q)), x0, lower=1e-300, upper=1e300)
    root, _ = brent(g, math.log(lo), math.log(hi), xtol=1e-15, rtol=1e-15)
    return math.exp(root)


@lru_cache(maxsize=4096)
def chi2_quantile(p, dof):
    """Upper-tail chi-square quantile: ``P(X > q) = p``."""
    _check_prob(p)
    _check_dof(dof)
    return _tail_quantile(p, lambda q: chi2_sf(q, dof), lambda q: chi2_cdf(q, dof), float(dof))


@lru_cache(maxsize=4096)
def f_quantile(p, d1, d2):
    """Upper-tail F quantile: ``P(F_{d1,d2} > q) = p``."""
    _check_prob(p)
    _check_dof(d1, d2)
    return _tail_quantile(p, lambda q: f_sf(q, d1, d2), lambda q: f_cdf(q, d1, d2), 1.0)


def std_normal_quantile(p):
    """Lower-tail standard normal quantile ``Phi^{-1}(p)``."""
    _check_prob(p)
    if p == 0.5:
        return 0.0
    if p > 0.5:
        return -std_normal_quantile(1.0 - p)
    g = lambda x: 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    root, _ = brent(g, -40.0, 0.0, xtol=1e-15, rtol=1e-15)
    return root
