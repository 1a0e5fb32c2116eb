"""Optimum censoring scheme search by expected joint-region volume."""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .model import SchemeError, validate_scheme
from .region import DEFAULT_GRID, region_volume_batch, split_gamma
from .simulate import RngStream, _as_generator, simulate_spacings_batch

DEFAULT_REPS = 5000
EXHAUSTIVE_CAP = 10 ** 6


@dataclass(frozen=True)
class SchemeEvaluation:
    scheme: object
    expected_volume: float
    volume_se: float
    etot: float
    etot_se: float
    reps: int

    def sort_key(self):
        return (self.expected_volume, self.etot, self.scheme.R)

    def to_row(self):
        return {
            "m": self.scheme.m,
            "k": self.scheme.k,
            "R": self.scheme.label(),
            "expected_volume": self.expected_volume,
            "volume_se": self.volume_se,
            "etot": self.etot,
            "etot_se": self.etot_se,
            "reps": self.reps,
        }


def _volumes_and_times(scheme, params, gamma, reps, rng, grid, scale):
    gen = _as_generator(rng)
    w, _ = simulate_spacings_batch(scheme, params, reps, gen)
    g1, g2 = split_gamma(gamma)
    vols, _, _ = region_volume_batch(np.log(w), scheme, g1, g2, grid=grid, scale=scale)
    return vols, w[:, -1]


def _mean_se(x):
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))


def expected_volume(scheme, params, gamma=0.1, reps=DEFAULT_REPS, rng=None,
                    grid=DEFAULT_GRID, scale="table"):
    """Monte-Carlo mean and standard error of the joint-region volume.

    ``scale="table"`` reports on the scale of the published volume tables
    (eight times the geometric volume); use ``"geometric"`` for the volume
    itself.  The ranking of schemes does not depend on the choice.
    """
    if reps < 2:
        raise ValueError("reps must be at least 2")
    vols, _ = _volumes_and_times(scheme, params, gamma, reps, rng, grid, scale)
    return _mean_se(vols)


def evaluate_scheme(scheme, params, gamma=0.1, reps=DEFAULT_REPS, rng=None,
                    grid=DEFAULT_GRID, scale="table"):
    """Expected volume and expected time on test from one set of draws."""
    if reps < 2:
        raise ValueError("reps must be at least 2")
    vols, wk = _volumes_and_times(scheme, params, gamma, reps, rng, grid, scale)
    v, vse = _mean_se(vols)
    t, tse = _mean_se(wk)
    return SchemeEvaluation(scheme, v, vse, t, tse, reps)


def count_exhaustive(m, k):
    # non-negative (k-1)-tuples with sum(R) <= m - k
    return math.comb(m - 1, k - 1)


def _bounded_vectors(length, budget):
    """Non-negative integer vectors of ``length`` entries with sum at most ``budget``."""
    # stars and bars: choose the positions of `length` bars among budget + length slots
    for bars in itertools.combinations(range(budget + length), length):
        prev = -1
        vec = []
        for b in bars:
            vec.append(b - prev - 1)
            prev = b
        yield tuple(vec)


def enumerate_schemes(m, k, family="single_block", block_size=None, cap=EXHAUSTIVE_CAP):
    """List candidate schemes.

    ``exhaustive`` yields every admissible removal vector (refusing when there
    are more than ``cap``); ``single_block`` places one block of
    ``block_size`` removals at each position ``1..k-1``.
    """
    validate_scheme(m, k, [0] * (k - 1))
    if family == "exhaustive":
        n = count_exhaustive(m, k)
        if n > cap:
            raise SchemeError(f"exhaustive family has {n} schemes, above the cap of {cap}")
        return [validate_scheme(m, k, R) for R in _bounded_vectors(k - 1, m - k)]
    if family == "single_block":
        if block_size is None:
            block_size = m - k
        out = []
        for j in range(k - 1):
            R = [0] * (k - 1)
            R[j] = block_size
            out.append(validate_scheme(m, k, R))
        return out
    raise ValueError(f"unknown scheme family {family!r}")


def search_optimum(m, k, params, gamma=0.1, family="single_block", reps=DEFAULT_REPS,
                   rng=None, block_size=None, grid=DEFAULT_GRID, scale="table", schemes=None):
    """Evaluate every candidate and rank by expected volume (then ETOT, then R).

    Schemes with the same ``k`` share one random stream (common random
    numbers): replication ``r`` of every scheme is built from the same
    standard exponential draws, which sharpens the comparison between schemes
    and makes the ranking independent of evaluation order.
    """
    if schemes is None:
        schemes = enumerate_schemes(m, k, family, block_size)
    if not isinstance(rng, RngStream):
        rng = RngStream(0 if rng is None else int(rng))
    evals = [
        evaluate_scheme(s, params, gamma, reps, rng.substream("ocs", s.k), grid, scale)
        for s in schemes
    ]
    return sorted(evals, key=SchemeEvaluation.sort_key)
