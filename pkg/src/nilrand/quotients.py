"""Classification and construction of Heisenberg quotients.

A relator set R in H(Z) is given by Mal'cev triples.  From the abelianized
weight lattice and the c-exponents we get the quotient's order data (d,
Delta, K, gamma); a single relator additionally gets a full isomorphism
descriptor.  Finite quotients can be realized as explicit multiplication
tables for census work.

Also: abelianization profiles of general relator quotients (rank, finiteness
and cyclicity only depend on the weight matrix, for every nilpotency step),
lower-central-series flags, and necklace/Hirsch bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import intlinalg
from .heiscalc import (MalcevTriple, basis_change_reduce, heis_mul, heis_pow)
from .intlinalg import IntMatrix
from .randwalk import Word


class DegenerateRelatorError(ValueError):
    pass


class EmptyRelatorSetError(ValueError):
    pass


class InfiniteGroupError(ValueError):
    pass


class CapExceededError(ValueError):
    pass


CENTRAL_RELATOR = "CENTRAL_RELATOR"
GENERIC = "GENERIC"


@dataclass(frozen=True)
class GroupDescriptor:
    """Isomorphism data of a one-relator Heisenberg quotient.

    GENERIC relators give (Z/(d^2/DD) x Z/DD) semidirect Z with DD =
    gcd(d, mu); a central relator c^k gives (Z x Z/kZ) semidirect Z with the
    action left unspecified.
    """

    kind: str
    d: int
    mu: int
    DD: int
    k: Optional[int]
    torsion_pair: Optional[tuple[int, int]]
    is_abelian: bool
    is_cyclic_Z: bool
    is_bs_type: bool


@dataclass(frozen=True)
class QuotientOrder:
    d: int
    Delta: int
    K: int
    gamma: int
    order: Optional[int]  # None means infinite

    @property
    def is_finite(self) -> bool:
        return self.order is not None


@dataclass(frozen=True)
class FiniteGroupTable:
    """Explicit finite quotient: canonical triples and an index-based table.

    The reduction data (triangular lattice basis lifts) is kept so arbitrary
    group elements can be mapped to their canonical representative.
    """

    elements: tuple[MalcevTriple, ...]
    mul: tuple[tuple[int, ...], ...]
    meta: QuotientOrder
    ab_invariants: tuple[int, int]
    lifts: tuple[MalcevTriple, MalcevTriple]

    def __len__(self):
        return len(self.elements)

    @property
    def identity_index(self) -> int:
        return self.elements.index(MalcevTriple(0, 0, 0))

    def canonical(self, g: MalcevTriple) -> MalcevTriple:
        lift1, lift2 = self.lifts
        h11, h22 = lift1.A, lift2.B
        g = heis_mul(g, heis_pow(lift2, -(g.B // h22)))
        g = heis_mul(g, heis_pow(lift1, -(g.A // h11)))
        return MalcevTriple(g.A, g.B, g.C % self.meta.gamma)

    def index_of(self, g: MalcevTriple) -> int:
        return self.elements.index(self.canonical(g))


def classify_one_relator(t: MalcevTriple) -> GroupDescriptor:
    """Isomorphism type of H(Z) modulo the normal closure of one element."""
    if t == (0, 0, 0):
        raise DegenerateRelatorError("trivial relator leaves the group unchanged")
    if t.A == 0 and t.B == 0:
        k = abs(t.C)
        return GroupDescriptor(
            kind=CENTRAL_RELATOR, d=0, mu=0, DD=0, k=k, torsion_pair=None,
            is_abelian=(k == 1), is_cyclic_Z=False, is_bs_type=False)
    d, mu = basis_change_reduce(t)
    dd = math.gcd(d, abs(mu))
    return GroupDescriptor(
        kind=GENERIC, d=d, mu=mu, DD=dd, k=None,
        torsion_pair=(d * d // dd, dd),
        is_abelian=(d == 1), is_cyclic_Z=(d == 1),
        is_bs_type=(dd == 1 and d > 1))


def weight_matrix(relators: Sequence[MalcevTriple]) -> IntMatrix:
    """2 x r matrix of abelianized columns (A, B)."""
    return IntMatrix.from_columns([(t.A, t.B) for t in relators], rows=2)


def heis_quotient_order(relators: Sequence[MalcevTriple]) -> QuotientOrder:
    """Order data of H(Z) modulo the normal closure of the relator set.

    d is the gcd of all weight entries, Delta the index of the weight
    lattice (0 if rank-deficient), K the gcd of the c-exponent functional on
    the weight kernel, and gamma = gcd(d, K) the order of c.
    """
    if not relators:
        raise EmptyRelatorSetError("need at least one relator")
    mat = weight_matrix(relators)
    d = intlinalg.gcd_vec(mat.entries)
    inv = intlinalg.cokernel_invariants(mat)
    delta = inv[0] * inv[1]
    kern = intlinalg.kernel_matrix(mat)
    kvec = [t.C for t in relators]
    combos = [sum(k * w for k, w in zip(kvec, col)) for col in kern.columns()]
    big_k = intlinalg.gcd_vec(combos)
    gamma = math.gcd(d, big_k)
    order = delta * gamma if delta > 0 else None
    return QuotientOrder(d=d, Delta=delta, K=big_k, gamma=gamma, order=order)


def _hnf_basis(mat: IntMatrix) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Column-style triangular basis of the weight lattice.

    Returns ([(h11, 0), (h21, h22)], exponents) with h11, h22 > 0, where
    exponents[s] gives integer relator exponents whose weight sum is basis
    vector s.
    """
    sf = intlinalg.snf(mat)
    # columns of M @ V with nonzero invariant span the lattice
    prod = mat.matmul(sf.V)
    b = [list(prod.column(0)), list(prod.column(1))]
    coeffs = [list(sf.V.column(0)), list(sf.V.column(1))]

    def colop(dst, src, q):
        b[dst] = [x + q * y for x, y in zip(b[dst], b[src])]
        coeffs[dst] = [x + q * y for x, y in zip(coeffs[dst], coeffs[src])]

    # clear the y-entry of column 0 by gcd steps on the second row
    while b[0][1] != 0:
        if b[1][1] != 0 and abs(b[1][1]) <= abs(b[0][1]):
            colop(0, 1, -(b[0][1] // b[1][1]))
        else:
            b[0], b[1] = b[1], b[0]
            coeffs[0], coeffs[1] = coeffs[1], coeffs[0]
    if b[0][0] < 0:
        b[0] = [-x for x in b[0]]
        coeffs[0] = [-x for x in coeffs[0]]
    if b[1][1] < 0:
        b[1] = [-x for x in b[1]]
        coeffs[1] = [-x for x in coeffs[1]]
    basis = [(b[0][0], 0), (b[1][0], b[1][1])]
    return basis, coeffs


def _lift(relators: Sequence[MalcevTriple], exps: Sequence[int]) -> MalcevTriple:
    """Product of relator powers in list order; a specific normal-closure
    element over the prescribed weight vector."""
    g = MalcevTriple(0, 0, 0)
    for t, e in zip(relators, exps):
        g = heis_mul(g, heis_pow(t, e))
    return g


def build_finite_quotient(relators: Sequence[MalcevTriple],
                          cap: int = 10_000) -> FiniteGroupTable:
    """Multiplication table of a finite quotient on canonical representatives.

    Representatives are {(x, y, z) : 0 <= x < h11, 0 <= y < h22,
    0 <= z < gamma}.  Reduction right-multiplies by powers of fixed lifts of
    the triangular lattice basis; any two lifts of the same basis vector
    differ by a central normal-closure element, so the canonical form is
    independent of the choice modulo c^gamma.
    """
    qo = heis_quotient_order(relators)
    if qo.order is None:
        raise InfiniteGroupError("quotient is infinite")
    if qo.order > cap:
        raise CapExceededError(f"order {qo.order} exceeds cap {cap}")
    mat = weight_matrix(relators)
    basis, coeffs = _hnf_basis(mat)
    (h11, _), (h21, h22) = basis
    lift1 = _lift(relators, coeffs[0])
    lift2 = _lift(relators, coeffs[1])
    assert (lift1.A, lift1.B) == (h11, 0)
    assert (lift2.A, lift2.B) == (h21, h22)
    gamma = qo.gamma

    def reduce_triple(g: MalcevTriple) -> MalcevTriple:
        g = heis_mul(g, heis_pow(lift2, -(g.B // h22)))
        g = heis_mul(g, heis_pow(lift1, -(g.A // h11)))
        return MalcevTriple(g.A, g.B, g.C % gamma)

    elements = tuple(MalcevTriple(x, y, z)
                     for x in range(h11) for y in range(h22)
                     for z in range(gamma))
    index = {e: i for i, e in enumerate(elements)}
    mul = tuple(tuple(index[reduce_triple(heis_mul(g, h))] for h in elements)
                for g in elements)
    inv = intlinalg.cokernel_invariants(mat)
    return FiniteGroupTable(elements=elements, mul=mul, meta=qo,
                            ab_invariants=(inv[0], inv[1]),
                            lifts=(lift1, lift2))


def element_order_census(table: FiniteGroupTable) -> dict[int, int]:
    """Multiset {element order: count}; orders computed by iterated table
    multiplication."""
    e = table.identity_index
    census: dict[int, int] = {}
    for i in range(len(table)):
        order = 1
        cur = i
        while cur != e:
            cur = table.mul[cur][i]
            order += 1
        census[order] = census.get(order, 0) + 1
    return census


def _is_commutative(table: FiniteGroupTable) -> bool:
    n = len(table)
    return all(table.mul[i][j] == table.mul[j][i]
               for i in range(n) for j in range(i + 1, n))


def identify_small_group(table: FiniteGroupTable) -> str:
    """Canonical name for tables of order <= 16.

    Order 8 nonabelian splits on involution count (Q8 has one, D4 five);
    abelian groups are named by invariant factors; everything else gets a
    signature of order, abelianization and order census.
    """
    n = len(table)
    census = element_order_census(table)
    if n == 8 and not _is_commutative(table):
        involutions = census.get(2, 0)
        if involutions == 1:
            return "Q8"
        if involutions == 5:
            return "D4"
    if _is_commutative(table):
        factors = [x for x in (*table.ab_invariants, table.meta.gamma) if x > 1]
        # gamma > 1 cannot happen in the abelian case, but keep the guard
        if not factors:
            return "1"
        return " x ".join(f"Z/{f}" for f in sorted(factors))
    spectrum = ",".join(f"{o}:{c}" for o, c in sorted(census.items()))
    ab = "x".join(str(x) for x in table.ab_invariants)
    return f"order{n}_ab{ab}_census[{spectrum}]"


@dataclass(frozen=True)
class QuotientProfile:
    invariants: tuple[int, ...]
    rank: int
    dim: int
    is_trivial: bool
    is_finite: bool
    is_cyclic: bool


def nilpotent_quotient_profile(m: int, relators: Sequence[Word]) -> QuotientProfile:
    """Rank/finiteness/cyclicity of a free nilpotent group (any step) modulo
    the relators; all three are read off the abelianization.
    """
    from .heiscalc import weight_vector
    for w in relators:
        if w.m != m:
            raise ValueError(f"relator over rank {w.m}, expected {m}")
    mat = IntMatrix.from_columns([weight_vector(w) for w in relators], rows=m)
    inv = intlinalg.cokernel_invariants(mat)
    rank, dim = intlinalg.rank_and_dim(inv)
    return QuotientProfile(invariants=inv, rank=rank, dim=dim,
                           is_trivial=(rank == 0), is_finite=(dim == 0),
                           is_cyclic=(rank <= 1))


@dataclass(frozen=True)
class LcsReport:
    step: int
    flags: tuple[str, ...]


def lcs_report(m: int, s: int, relators: Sequence[MalcevTriple]) -> LcsReport:
    """Lower-central-series flags for the free-group lift of a Heisenberg
    quotient G: triviality of G makes the lift perfect, step 1 makes its
    series stabilize after one term, step 2 gives term-by-term agreement.
    """
    if (m, s) != (2, 2):
        raise ValueError("only the rank-2 step-2 case is computable here")
    qo = heis_quotient_order(relators)
    trivial = qo.order == 1
    if trivial:
        return LcsReport(step=0, flags=("perfect",))
    if qo.gamma == 1:
        return LcsReport(step=1, flags=("stabilizes_after_one_step",))
    return LcsReport(step=2, flags=("quotients_agree_to_step_2",))


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        else:
            p += 1
    if n > 1:
        result = -result
    return result


def necklace(j: int, m: int) -> int:
    """Number of basic commutators of depth j on m generators:
    (1/j) * sum over d | j of mobius(d) * m^(j/d)."""
    if j < 1 or m < 1:
        raise ValueError("need j >= 1 and m >= 1")
    total = sum(_mobius(d) * m ** (j // d) for d in range(1, j + 1) if j % d == 0)
    return total // j


def hirsch_length(s: int, m: int) -> int:
    """Hirsch length of the free step-s nilpotent group on m generators."""
    if s < 1 or m < 1:
        raise ValueError("need s >= 1 and m >= 1")
    return sum(necklace(j, m) for j in range(1, s + 1))
