"""Censoring schemes, parameters, samples and dataset I/O."""

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class SchemeError(ValueError):
    """A censoring scheme violates one of its defining inequalities."""


class SampleError(ValueError):
    """Observed data are inconsistent with the scheme or the model."""


@dataclass(frozen=True)
class CensoringScheme:
    """Balanced joint progressive Type-II censoring plan.

    ``m`` units per population are tested, the experiment stops at the
    ``k``-th failure, and at failure ``i < k`` the failing line loses ``R[i]``
    survivors and the other line ``R[i] + 1``.
    """

    m: int
    k: int
    R: tuple

    def __post_init__(self):
        object.__setattr__(self, "R", tuple(int(r) for r in self.R))
        _check_scheme(self.m, self.k, self.R)

    @property
    def c(self):
        """Weights ``c_i = R_i + 1`` (i < k) and the terminal count ``c_k``."""
        head = [r + 1 for r in self.R]
        return np.array(head + [self.m - sum(head)], dtype=float)

    @property
    def alive(self):
        """Survivors per line just before each failure, ``a_1 = m > a_2 > ...``."""
        removed = np.concatenate(([0], np.cumsum([r + 1 for r in self.R])))
        return (self.m - removed).astype(float)

    def label(self):
        return "(" + ",".join(str(r) for r in self.R) + ")"

    def to_dict(self):
        return {"m": self.m, "k": self.k, "R": list(self.R)}


def _check_scheme(m, k, R):
    if int(k) != k or k < 2:
        raise SchemeError(f"need k >= 2, got k={k}")
    if int(m) != m or m < k:
        raise SchemeError(f"need m >= k, got m={m}, k={k}")
    if len(R) != k - 1:
        raise SchemeError(f"R must have k-1={k - 1} entries, got {len(R)}")
    if any(r < 0 for r in R):
        raise SchemeError(f"removal counts must be non-negative, got {list(R)}")
    total = sum(r + 1 for r in R)
    if not total < m:
        raise SchemeError(f"sum(R_i + 1) = {total} must be < m = {m}")


def validate_scheme(m, k, R):
    """Build a :class:`CensoringScheme`, raising :class:`SchemeError` if invalid."""
    return CensoringScheme(int(m), int(k), tuple(R))


@dataclass(frozen=True)
class WeibullParams:
    """Common shape ``alpha`` and rates ``lambda1``, ``lambda2``.

    The survival function of line j is ``exp(-lambda_j * x**alpha)``.
    """

    alpha: float
    lambda1: float
    lambda2: float

    def __post_init__(self):
        for name in ("alpha", "lambda1", "lambda2"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive, got {v!r}")

    @property
    def total_rate(self):
        return self.lambda1 + self.lambda2

    def as_tuple(self):
        return (self.alpha, self.lambda1, self.lambda2)


@dataclass(frozen=True)
class BjpcSample:
    """Observed failure times ``w`` and line indicators ``z`` (1 = line A)."""

    w: np.ndarray
    z: np.ndarray
    scheme: CensoringScheme
    log_w: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        z = np.asarray(self.z, dtype=int)
        k = self.scheme.k
        if w.shape != (k,) or z.shape != (k,):
            raise SampleError(f"expected {k} times and indicators, got {w.size} and {z.size}")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise SampleError("failure times must be positive and finite")
        if np.any(np.diff(w) < 0):
            raise SampleError("failure times must be in non-decreasing order")
        if not w[-1] > w[0]:
            raise SampleError("need at least two distinct failure times")
        if np.any((z != 0) & (z != 1)):
            raise SampleError("indicators must be 0 or 1")
        w.flags.writeable = False
        z.flags.writeable = False
        lw = np.log(w)
        lw.flags.writeable = False
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "log_w", lw)

    @property
    def k(self):
        return self.scheme.k

    @property
    def k1(self):
        return int(self.z.sum())

    @property
    def k2(self):
        return self.k - self.k1

    def to_dict(self):
        d = self.scheme.to_dict()
        d["w"] = [float(x) for x in self.w]
        d["z"] = [int(x) for x in self.z]
        return d


def log_a_of_alpha(sample, alpha):
    """``log A(alpha)`` with a max shift so large ``alpha`` cannot overflow."""
    x = alpha * sample.log_w
    top = x.max()
    return top + np.log(np.dot(sample.scheme.c, np.exp(x - top)))


def a_of_alpha(sample, alpha):
    """Total time on test in the power scale, ``sum c_i w_i**alpha``."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    return float(np.exp(log_a_of_alpha(sample, alpha)))


def spacings_matrix(scheme, total_rate=1.0):
    """Upper bidiagonal ``B`` with ``B[j, j] = rate_j`` and ``B[j, j+1] = -rate_j``.

    ``-B`` is the sub-generator of the phase-type law of the partial sums of
    exponentials with rates ``total_rate * a_j``.  Matrix functions of ``B``
    evaluate expectations of those sums without the cancellation of the
    partial-fraction expansion.
    """
    r = total_rate * scheme.alive
    return np.diag(r) - np.diag(r[:-1], 1)


def weighted_log_moments(sample, alpha):
    """Return ``(log A, H, H')`` at ``alpha`` from one shifted accumulation.

    ``H = A'/A`` is the weighted mean of ``log w`` under weights
    ``c_i w_i**alpha`` and ``H'`` the corresponding weighted variance.
    """
    lw = sample.log_w
    x = alpha * lw
    top = x.max()
    wt = sample.scheme.c * np.exp(x - top)
    s = wt.sum()
    h = np.dot(wt, lw) / s
    dh = np.dot(wt, (lw - h) ** 2) / s
    return top + np.log(s), float(h), float(dh)


# -- dataset files -------------------------------------------------------------

def sample_from_dict(d):
    scheme = validate_scheme(d["m"], d["k"], d["R"])
    return BjpcSample(np.array(d["w"], dtype=float), np.array(d["z"], dtype=int), scheme)


def load_dataset(path, scheme=None):
    """Read a JSON dataset, or a two-column ``w,z`` CSV together with ``scheme``."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        if scheme is None:
            raise SampleError("a CSV dataset needs the scheme supplied separately")
        w, z = [], []
        with path.open(newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    w.append(float(row[0]))
                except ValueError:
                    continue  # header
                z.append(int(row[1]))
        return BjpcSample(np.array(w), np.array(z), scheme)
    with path.open() as fh:
        return sample_from_dict(json.load(fh))


def dump_dataset(sample, path=None):
    """Serialise ``sample`` as JSON; floats use ``repr`` so they round-trip exactly."""
    text = json.dumps(sample.to_dict())
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def bundled_path(name):
    return Path(__file__).with_name("data") / name


def load_bundled(name):
    """Load one of the shipped datasets: ``scheme1`` or ``scheme2``."""
    return load_dataset(bundled_path(f"{name}.json"))
