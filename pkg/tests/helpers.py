"""Random instance generators and small independent oracles for the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from subtorus import (
    FgAbGroup,
    IntMatrix,
    Lattice,
    TorsionPoint,
    TranslatedSubgroup,
    saturation,
    subgroup_from_generators,
    sufficient_modulus,
)

ORACLE_MODULUS_CAP = 72


def rand_vectors(rng: random.Random, n: int, k: int, lo: int = -3, hi: int = 3) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(k)]


def rand_matrix(rng: random.Random, m: int, n: int, lo: int = -3, hi: int = 3) -> IntMatrix:
    return IntMatrix.from_rows(rand_vectors(rng, n, m, lo, hi), n)


def rand_unimodular(rng: random.Random, n: int, steps: int = 8) -> IntMatrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        if rng.random() < 0.3:
            rows[i], rows[j] = rows[j], rows[i]
    return IntMatrix.from_rows(rows, n)


def rand_lattice(rng: random.Random, n: int, max_gens: int | None = None) -> Lattice:
    k = rng.randint(0, n if max_gens is None else max_gens)
    return Lattice.span(n, rand_vectors(rng, n, k))


def rand_primitive(rng: random.Random, n: int, k: int) -> Lattice:
    return saturation(Lattice.span(n, rand_vectors(rng, n, k)))


def rand_point(rng: random.Random, H: FgAbGroup, max_den: int = 6) -> TorsionPoint:
    free = []
    for _ in range(H.free_rank):
        q = rng.randint(1, max_den)
        free.append(Fraction(rng.randrange(q), q))
    tors = [Fraction(rng.randrange(k), k) for k in H.torsion_moduli]
    return TorsionPoint(H, free + tors)


def rand_subgroup(rng: random.Random, H: FgAbGroup, max_gens: int | None = None):
    k = rng.randint(0, H.ambient if max_gens is None else max_gens)
    gens = [
        [rng.randint(-3, 3) for _ in range(H.free_rank)] + [rng.randrange(m) for m in H.torsion_moduli]
        for _ in range(k)
    ]
    return subgroup_from_generators(H, gens)


def rand_coset(rng: random.Random, H: FgAbGroup, max_gens: int | None = None, max_den: int = 6):
    return TranslatedSubgroup(rand_point(rng, H, max_den), rand_subgroup(rng, H, max_gens))


def oracle_sized(rng: random.Random, make, cap: int = ORACLE_MODULUS_CAP):
    """Draw instances from ``make(rng)`` until the oracle modulus is at most ``cap``."""
    while True:
        cosets = make(rng)
        if sufficient_modulus(cosets) <= cap:
            return cosets


def sympy_invariant_factors(columns, n: int) -> tuple[int, ...]:
    """Nontrivial invariant factors of the column matrix, computed by sympy."""
    if not columns:
        return ()
    M = Matrix([list(c) for c in columns]).T
    return tuple(int(d) for d in invariant_factors(M, domain=ZZ) if abs(int(d)) > 1)


def subgroups_of_index(r: int, k: int) -> int:
    """Count index-k sublattices of Z^r by brute force over (Z/k)^r.

    Every index-k sublattice contains k Z^r, so it is the preimage of an
    order k^(r-1) subgroup of (Z/k)^r; such a subgroup needs at most r
    generators.
    """
    elems = list(itertools.product(range(k), repeat=r))
    target = k ** (r - 1)
    seen = set()
    for gens in itertools.combinations_with_replacement(elems, r):
        span = {tuple([0] * r)}
        frontier = list(span)
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = tuple((a + b) % k for a, b in zip(v, g))
                    if w not in span:
                        span.add(w)
                        nxt.append(w)
            frontier = nxt
        if len(span) == target:
            seen.add(frozenset(span))
    return len(seen)


def sigma1(k: int) -> int:
    return sum(d for d in range(1, k + 1) if k % d == 0)
