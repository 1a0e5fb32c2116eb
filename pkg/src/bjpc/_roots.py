"""Scalar bracketing root finder shared by the quantile and estimation code."""

import math

EPS = 2.220446049250313e-16


class RootFindingError(ArithmeticError):
    """Raised when a root cannot be bracketed or the iteration cap is hit."""


def brent(f, a, b, xtol=1e-14, rtol=4 * EPS, maxiter=200):
    """Find a root of ``f`` in ``[a, b]`` with Brent's method.

    ``f(a)`` and ``f(b)`` must have opposite signs (or one of them must be
    zero).  Returns ``(root, iterations)``.
    """
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a, 0
    if fb == 0.0:
        return b, 0
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise RootFindingError(f"root not bracketed: f({a})={fa}, f({b})={fb}")

    xpre, xcur = a, b
    fpre, fcur = fa, fb
    xblk = fblk = spre = scur = 0.0
    for it in range(1, maxiter + 1):
        if fpre != 0.0 and fcur != 0.0 and (fpre < 0.0) != (fcur < 0.0):
            xblk, fblk = xpre, fpre
            spre = scur = xcur - xpre
        if abs(fblk) < abs(fcur):
            xpre, xcur, xblk = xcur, xblk, xcur
            fpre, fcur, fblk = fcur, fblk, fcur

        delta = 0.5 * (xtol + rtol * abs(xcur))
        sbis = 0.5 * (xblk - xcur)
        if fcur == 0.0 or abs(sbis) < delta:
            return xcur, it

        if abs(spre) > delta and abs(fcur) < abs(fpre):
            if xpre == xblk:
                stry = -fcur * (xcur - xpre) / (fcur - fpre)
            else:
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                stry = -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            if 2.0 * abs(stry) < min(abs(spre), 3.0 * abs(sbis) - delta):
                spre, scur = scur, stry
            else:
                spre, scur = sbis, sbis
        else:
            spre, scur = sbis, sbis

        xpre, fpre = xcur, fcur
        if abs(scur) > delta:
            xcur += scur
        else:
            xcur += delta if sbis > 0 else -delta
        fcur = f(xcur)
    raise RootFindingError(f"no convergence after {maxiter} iterations")


def expand_bracket(f, x0, factor=2.0, lower=1e-300, upper=1e300, increasing=True):
    """Grow a multiplicative bracket around ``x0`` for a monotone ``f``.

    Returns ``(lo, hi)`` with ``f(lo) <= 0 <= f(hi)`` when ``f`` is increasing
    (reversed signs when decreasing).
    """
    sign = 1.0 if increasing else -1.0
    g = lambda x: sign * f(x)
    lo = hi = x0
    glo = ghi = g(x0)
    while glo > 0.0:
        hi, ghi = lo, glo
        lo /= factor
        if lo < lower:
            raise RootFindingError(f"bracket fell below {lower}")
        glo = g(lo)
    while ghi < 0.0:
        lo, glo = hi, ghi
        hi *= factor
        if hi > upper:
            raise RootFindingError(f"bracket exceeded {upper}")
        ghi = g(hi)
    return lo, hi
