"""Random relator generation.

Relators are freely reduced words drawn uniformly (non-backtracking walk on
the free group), with the paper-style length coin: length len or len-1 with
equal probability.  Streams are keyed by (seed, stream_id) through numpy's
SeedSequence so trial t is reproducible regardless of scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class InvalidRankError(ValueError):
    pass


class InvalidLengthError(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    """Freely reduced word: signed indices, +i for a_i and -i for its inverse."""

    letters: tuple[int, ...]
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidRankError("rank must be positive")
        prev = 0
        for x in self.letters:
            if not 1 <= abs(x) <= self.m:
                raise ValueError(f"letter {x} outside rank {self.m}")
            if x == -prev:
                raise ValueError("word is not freely reduced")
            prev = x

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)), self.m)

    def concat_reduced(self, other: "Word") -> "Word":
        """Concatenate and freely reduce."""
        stack = list(self.letters)
        for x in other.letters:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        return Word(tuple(stack), self.m)


@dataclass(frozen=True)
class RngStream:
    """Deterministic per-trial randomness source."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.default_rng((self.seed, self.stream_id))


def _code_to_signed(code: int) -> int:
    # letter codes 0..2m-1: even = generator, odd = its inverse
    idx = code // 2 + 1
    return idx if code % 2 == 0 else -idx


def _draw_reduced_codes(m: int, length: int, rng: np.random.Generator) -> list[int]:
    # Draw protocol (fixed; the batch runner replays it): one uniform first
    # letter, then a single array of length-1 draws over the 2m-1 legal moves.
    if length == 0:
        return []
    codes = [int(rng.integers(0, 2 * m))]
    raw = rng.integers(0, 2 * m - 1, size=length - 1)
    for c in raw:
        c = int(c)
        # skip over the code cancelling the previous letter (its xor-1 partner)
        if c >= (codes[-1] ^ 1):
            c += 1
        codes.append(c)
    return codes


def random_reduced_word(m: int, length: int, rng: RngStream) -> Word:
    """Uniform freely reduced word of exactly the given length."""
    if m < 1:
        raise InvalidRankError("rank must be positive")
    if length < 0:
        raise InvalidLengthError("length must be non-negative")
    gen = rng.generator()
    codes = _draw_reduced_codes(m, length, gen)
    return Word(tuple(_code_to_signed(c) for c in codes), m)


def random_relator(m: int, length: int, rng: RngStream) -> Word:
    """Uniform reduced word of length len or len-1, a fair coin deciding which.

    The coin is drawn first so the letter stream is aligned across the two
    branches for a fixed (seed, stream_id).
    """
    if m < 1:
        raise InvalidRankError("rank must be positive")
    if length < 1:
        raise InvalidLengthError("length must be at least 1")
    gen = rng.generator()
    coin = int(gen.integers(0, 2))
    codes = _draw_reduced_codes(m, length - coin, gen)
    return Word(tuple(_code_to_signed(c) for c in codes), m)


def random_string(m: int, length: int, rng: RngStream) -> tuple[int, ...]:
    """I.i.d. uniform letters; not reduced."""
    if m < 1:
        raise InvalidRankError("rank must be positive")
    if length < 0:
        raise InvalidLengthError("length must be non-negative")
    gen = rng.generator()
    codes = gen.integers(0, 2 * m, size=length)
    return tuple(_code_to_signed(int(c)) for c in codes)


def word_from_letters(letters: Sequence[int], m: int) -> Word:
    """Freely reduce an arbitrary letter sequence into a Word."""
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word(tuple(stack), m)
