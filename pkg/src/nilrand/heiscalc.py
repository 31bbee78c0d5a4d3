"""Mal'cev coordinate arithmetic in the integer Heisenberg group.

Elements are written in the normal form a^A b^B c^C with c = [a, b] central
and the commutation rule ba = abc^{-1}.  A triple (A, B, C) of plain Python
integers represents such an element, so nothing here can overflow.

Also provides abelianization weights for words over any rank and the basis
change that turns a non-central element into b^d c^mu.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .randwalk import Word


class MalcevTriple(NamedTuple):
    A: int
    B: int
    C: int


IDENTITY = MalcevTriple(0, 0, 0)


class WrongRankError(ValueError):
    pass


class CentralElementError(ValueError):
    """Raised when a central element reaches an operation needing (A,B) != (0,0)."""


def heis_mul(g: MalcevTriple, h: MalcevTriple) -> MalcevTriple:
    """Product gh in normal form.

    Moving h's a-block past g's b-block creates h.A * g.B commutators,
    each contributing c^{-1}.
    """
    return MalcevTriple(g.A + h.A, g.B + h.B, g.C + h.C - h.A * g.B)


def heis_inv(g: MalcevTriple) -> MalcevTriple:
    return MalcevTriple(-g.A, -g.B, -g.C - g.A * g.B)


def heis_conj(g: MalcevTriple, h: MalcevTriple) -> MalcevTriple:
    """h g h^{-1}; fixes the abelianization, shifts C by the 2x2 determinant."""
    return MalcevTriple(g.A, g.B, g.C + h.A * g.B - h.B * g.A)


def heis_pow(g: MalcevTriple, n: int) -> MalcevTriple:
    """g^n for any integer n; the C-correction is the triangular number twist."""
    return MalcevTriple(n * g.A, n * g.B, n * g.C - g.A * g.B * (n * (n - 1) // 2))


_GEN = {1: MalcevTriple(1, 0, 0), -1: MalcevTriple(-1, 0, 0),
        2: MalcevTriple(0, 1, 0), -2: MalcevTriple(0, -1, 0)}


def malcev_coords(w: Word) -> MalcevTriple:
    """Coordinates of the image of w under a_1 -> a, a_2 -> b."""
    if w.m != 2:
        raise WrongRankError(f"need rank 2, got {w.m}")
    g = IDENTITY
    for letter in w.letters:
        g = heis_mul(g, _GEN[letter])
    return g


def signed_area(w: Word) -> int:
    """Signed area between the lattice path of w and the x-axis.

    Accumulated as -sum of (x-step * current height), independent of
    heis_mul so the two act as cross-checks.
    """
    if w.m != 2:
        raise WrongRankError(f"need rank 2, got {w.m}")
    area = 0
    y = 0
    for letter in w.letters:
        if abs(letter) == 1:
            dx = 1 if letter > 0 else -1
            area -= dx * y
        else:
            y += 1 if letter > 0 else -1
    return area


def weight_vector(w: Word) -> tuple[int, ...]:
    """Exponent sum of each generator."""
    weights = [0] * w.m
    for letter in w.letters:
        weights[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(weights)


def basis_change_reduce(t: MalcevTriple) -> tuple[int, int]:
    """Rewrite a non-central element as b^d c^mu after a basis change.

    d = gcd(A, B) and mu = (A*B/(2d))*(d-1) + C, always an exact integer
    since d^2 divides A*B.
    """
    if t.A == 0 and t.B == 0:
        raise CentralElementError("element is central; no basis change applies")
    d = math.gcd(t.A, t.B)
    mu = (t.A // d) * (t.B // d) * (d * (d - 1) // 2) + t.C
    return d, mu
