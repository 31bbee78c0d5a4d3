"""Batch relator sampling for the Monte Carlo campaigns.

Replays the exact draw protocol of randwalk.random_relator (coin, first
letter, one array of non-backtracking choices) with a fresh generator per
trial id, then reduces whole blocks of walks with numpy.  The only Python
loop over word length runs once per letter position, vectorized across all
walks in the block.

Campaign drivers should call these in trial-id chunks of a few thousand to
bound memory (a block is rows x length int16).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def batch_relator_codes(m: int, length: int, seed: int | tuple,
                        trial_ids: Sequence[int],
                        relators_per_trial: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Letter codes for every relator of every listed trial.

    Returns (codes, lengths): codes has one row per relator, trial-major,
    zero-padded past each row's length.  Codes are 0..2m-1 with even =
    generator, odd = inverse (code ^ 1 is the cancelling letter).
    """
    key = seed if isinstance(seed, tuple) else (seed,)
    n = len(trial_ids) * relators_per_trial
    codes = np.zeros((n, max(length, 1)), dtype=np.int16)
    lengths = np.zeros(n, dtype=np.int64)
    row = 0
    for t in trial_ids:
        gen = np.random.default_rng((*key, t))
        for _ in range(relators_per_trial):
            coin = int(gen.integers(0, 2))
            ell = length - coin
            lengths[row] = ell
            if ell > 0:
                codes[row, 0] = gen.integers(0, 2 * m)
                if ell > 1:
                    codes[row, 1:ell] = gen.integers(0, 2 * m - 1, size=ell - 1)
            row += 1
    # non-backtracking adjustment: bump any choice at or past the cancelling
    # code; sequential in position, vectorized across rows
    prev = codes[:, 0].copy()
    for j in range(1, codes.shape[1]):
        active = j < lengths
        c = codes[:, j] + (active & (codes[:, j] >= (prev ^ 1)))
        codes[:, j] = np.where(active, c, 0)
        prev = np.where(active, c, prev)
    return codes, lengths


def _step_arrays(codes: np.ndarray, lengths: np.ndarray):
    pos = np.arange(codes.shape[1])
    mask = pos[None, :] < lengths[:, None]
    sign = np.where(mask, 1 - 2 * (codes & 1), 0).astype(np.int64)
    return mask, sign


def codes_to_triples(codes: np.ndarray, lengths: np.ndarray):
    """Mal'cev coordinates (A, B, C) of each rank-2 walk, as int64 arrays.

    C is accumulated as the signed area -sum dx * (height before the step),
    which agrees with the normal-form product.
    """
    mask, sign = _step_arrays(codes, lengths)
    is_x = codes < 2
    dx = np.where(is_x, sign, 0)
    dy = np.where(~is_x, sign, 0)
    a = dx.sum(axis=1)
    b = dy.sum(axis=1)
    height_before = np.cumsum(dy, axis=1) - dy
    c = -(dx * height_before).sum(axis=1)
    return a, b, c


def codes_to_weights(codes: np.ndarray, lengths: np.ndarray, m: int) -> np.ndarray:
    """Exponent-sum vectors, one row per walk, shape (rows, m)."""
    _, sign = _step_arrays(codes, lengths)
    idx = codes >> 1
    out = np.empty((codes.shape[0], m), dtype=np.int64)
    for i in range(m):
        out[:, i] = np.where(idx == i, sign, 0).sum(axis=1)
    return out
