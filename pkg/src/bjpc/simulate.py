"""Random generation of BJPC samples.

Two generators are provided.  :func:`simulate_spacings` is the production
path: given the alive counts ``a_j``, the power-transformed failure times
``W_i**alpha`` are partial sums of independent exponentials with rates
``(lambda1 + lambda2) * a_j``.  The line indicators are drawn as independent
Bernoulli(``lambda1 / (lambda1 + lambda2)``) variables: the joint likelihood
factorises as ``lambda1**k1 * lambda2**k2`` times a function of
``lambda1 + lambda2`` and ``w`` only, so given ``W`` each failure comes from
line A with that probability, independently of the others.

:func:`simulate_mechanism` runs the withdrawal protocol literally and is
used as a distributional oracle for the spacings generator.
"""

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from scipy.linalg import fractional_matrix_power

from .model import BjpcSample, spacings_matrix


@dataclass(frozen=True)
class RngStream:
    """Seed plus 64-bit stream id; each pair yields an independent generator."""

    seed: int
    stream: int = 0

    def generator(self):
        ss = np.random.SeedSequence(entropy=int(self.seed), spawn_key=(int(self.stream),))
        return np.random.Generator(np.random.PCG64(ss))

    def substream(self, *labels):
        """Stream id derived by hashing ``labels`` onto this stream."""
        h = hashlib.blake2b(digest_size=8)
        h.update(str((self.stream,) + tuple(labels)).encode())
        return RngStream(self.seed, int.from_bytes(h.digest(), "little"))


def _as_generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def simulate_power_times(scheme, total_rate, reps, rng):
    """Draw ``(reps, k)`` partial sums ``W_i**alpha`` of scaled exponentials."""
    gen = _as_generator(rng)
    rates = total_rate * scheme.alive
    gaps = gen.standard_exponential((reps, scheme.k)) / rates
    return np.cumsum(gaps, axis=1)


def simulate_spacings_batch(scheme, params, reps, rng):
    """Draw ``reps`` samples at once; returns arrays ``W`` and ``Z`` of shape ``(reps, k)``."""
    gen = _as_generator(rng)
    t = simulate_power_times(scheme, params.total_rate, reps, gen)
    w = t ** (1.0 / params.alpha)
    p1 = params.lambda1 / params.total_rate
    z = (gen.random((reps, scheme.k)) < p1).astype(int)
    return w, z


def simulate_spacings(scheme, params, rng):
    """One BJPC sample through the exponential-spacings representation."""
    w, z = simulate_spacings_batch(scheme, params, 1, rng)
    return BjpcSample(w[0], z[0], scheme)


def simulate_mechanism(scheme, params, rng, trace=None):
    """One BJPC sample by running the two-line withdrawal protocol.

    If ``trace`` is a list, the survivor counts of both lines after each
    failure-and-withdrawal step are appended to it.
    """
    gen = _as_generator(rng)
    m = scheme.m
    # Weibull lifetimes via inversion of S(x) = exp(-lambda x**alpha)
    pools = [
        list((gen.standard_exponential(m) / params.lambda1) ** (1.0 / params.alpha)),
        list((gen.standard_exponential(m) / params.lambda2) ** (1.0 / params.alpha)),
    ]
    w = np.empty(scheme.k)
    z = np.empty(scheme.k, dtype=int)
    for i in range(scheme.k):
        first = [min(p) for p in pools]
        line = 0 if first[0] < first[1] else 1
        w[i] = first[line]
        z[i] = 1 if line == 0 else 0
        pools[line].remove(first[line])
        if i == scheme.k - 1:
            pools = [[], []]
        else:
            r = scheme.R[i]
            for j, drop in ((line, r), (1 - line, r + 1)):
                keep = gen.permutation(len(pools[j]))[drop:]
                pools[j] = [pools[j][t] for t in sorted(keep)]
        if trace is not None:
            trace.append((len(pools[0]), len(pools[1])))
    return BjpcSample(w, z, scheme)


def expected_time_on_test(scheme, params, reps, rng):
    """Monte-Carlo mean and standard error of the terminal failure time ``W_k``."""
    if reps < 2:
        raise ValueError("reps must be at least 2")
    t = simulate_power_times(scheme, params.total_rate, reps, rng)[:, -1]
    wk = t ** (1.0 / params.alpha)
    return float(wk.mean()), float(wk.std(ddof=1) / np.sqrt(reps))


def expected_time_on_test_exact(scheme, params):
    """Closed-form ``E(W_k)``.

    ``W_k**alpha`` is phase-type with sub-generator ``-B`` (see
    :func:`~bjpc.model.spacings_matrix`), so
    ``E(W_k) = Gamma(1 + 1/alpha) e_1' B**(-1/alpha) 1``.
    """
    s = 1.0 / params.alpha
    b = spacings_matrix(scheme, params.total_rate)
    return math.gamma(1.0 + s) * float(np.real(fractional_matrix_power(b, -s)[0].sum()))
