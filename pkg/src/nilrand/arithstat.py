"""Arithmetic statistics of relator weights.

Exact single-coordinate distributions of the unreduced walk (integer counts
over a power-of-2m denominator, so monotonicity checks are exact), plus
Monte Carlo estimates of residue uniformity, primitivity frequency and
determinant-gcd frequency for the reduced-walk relators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import predict
from ._mc import batch_relator_codes, codes_to_weights
from .intlinalg import IntMatrix, det


@dataclass(frozen=True)
class CoordDist:
    """Exact distribution of one coordinate after len unreduced steps."""

    len: int
    m: int
    counts: dict[int, int]  # x -> count over denominator (2m)^len

    @property
    def denominator(self) -> int:
        return (2 * self.m) ** self.len

    def prob(self, x: int) -> Fraction:
        return Fraction(self.counts.get(x, 0), self.denominator)


def exact_coord_dist(m: int, length: int) -> CoordDist:
    """One coordinate of the unreduced walk is a lazy simple walk: step -1 or
    +1 with weight 1 each, stay with weight 2m - 2.  Exact integer DP."""
    if m < 2:
        raise ValueError("lazy-walk decomposition needs m >= 2")
    if length < 0:
        raise ValueError("length must be non-negative")
    counts = {0: 1}
    stay = 2 * m - 2
    for _ in range(length):
        nxt: dict[int, int] = {}
        for x, c in counts.items():
            nxt[x - 1] = nxt.get(x - 1, 0) + c
            nxt[x] = nxt.get(x, 0) + stay * c
            nxt[x + 1] = nxt.get(x + 1, 0) + c
        counts = nxt
    return CoordDist(len=length, m=m, counts=counts)


def check_monotonicity(d: CoordDist) -> bool:
    """Strict decrease of the exact probabilities away from the origin."""
    return all(d.counts.get(x, 0) > d.counts.get(x + 1, 0)
               for x in range(0, d.len))


def _weights(m: int, length: int, trials: int, seed: int,
             relators_per_trial: int = 1) -> np.ndarray:
    out = []
    chunk = max(1, 4_000_000 // max(length, 1))
    for start in range(0, trials, chunk):
        ids = range(start, min(start + chunk, trials))
        codes, lens = batch_relator_codes(m, length, seed, ids, relators_per_trial)
        out.append(codes_to_weights(codes, lens, m))
    return np.concatenate(out, axis=0)


def residue_deviation(m: int, length: int, n: int, trials: int, seed: int,
                      paired: bool = False) -> float:
    """Max over residues of |empirical frequency - uniform| for the first
    weight coordinate mod n (or the first two jointly when paired)."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if n == 1:
        return 0.0
    w = _weights(m, length, trials, seed)
    if paired:
        if m < 2:
            raise ValueError("paired mode needs m >= 2")
        joint = (w[:, 0] % n) * n + (w[:, 1] % n)
        hist = np.bincount(joint, minlength=n * n) / trials
        return float(np.max(np.abs(hist - 1.0 / (n * n))))
    hist = np.bincount(w[:, 0] % n, minlength=n) / trials
    return float(np.max(np.abs(hist - 1.0 / n)))


def primitivity_frequency(m: int, length: int, trials: int, seed: int) -> float:
    """Fraction of relators whose weight vector has coprime entries."""
    if m < 2:
        raise ValueError("need m >= 2")
    w = _weights(m, length, trials, seed)
    g = np.gcd.reduce(np.abs(w), axis=1)
    return float(np.mean(g == 1))


@dataclass(frozen=True)
class DetGcdReport:
    freq_gcd_one: float
    freq_any_singular: float
    predicted: predict.ProbValue
    trials: int


def det_gcd_report(m: int, k: int, length: int, trials: int, seed: int,
                   cutoff: int = predict.DEFAULT_PRIME_CUTOFF) -> DetGcdReport:
    """Per trial: k matrices, each with m relator-weight columns; test whether
    the k exact determinants are coprime."""
    if m < 2 or k < 2:
        raise ValueError("need m >= 2 and k >= 2")
    w = _weights(m, length, trials, seed, relators_per_trial=k * m)
    w = w.reshape(trials, k, m, m)  # per matrix: m columns of m weights
    gcd_one = 0
    any_singular = 0
    for t in range(trials):
        dets = [det(IntMatrix.from_columns([tuple(col) for col in w[t, i]]))
                for i in range(k)]
        g = 0
        for x in dets:
            g = math.gcd(g, x)
        gcd_one += g == 1
        any_singular += any(x == 0 for x in dets)
    return DetGcdReport(
        freq_gcd_one=gcd_one / trials,
        freq_any_singular=any_singular / trials,
        predicted=predict.prob_gcd_dets_one(m, k, cutoff),
        trials=trials)


def det_gcd_frequency(m: int, k: int, length: int, trials: int, seed: int) -> float:
    return det_gcd_report(m, k, length, trials, seed).freq_gcd_one
