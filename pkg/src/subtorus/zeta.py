"""Counting algebraic subgroups with a fixed identity component.

An algebraic subgroup W of (C*)^r with identity component T0 ~ (C*)^n and
|W / T0| = k corresponds to an index-k sublattice of Z^(r-n), so the
coefficients are those of zeta(s) zeta(s-1) ... zeta(s-r+n+1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SubtorusError
from .lattice import IntMatrix, Lattice


@dataclass(frozen=True)
class ZetaCoefficients:
    r: int
    coefficients: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        """a_k, 1-based."""
        if k < 1:
            raise IndexError("coefficients start at a_1")
        return self.coefficients[k - 1]

    def __len__(self):
        return len(self.coefficients)


def _dirichlet(a: list[int], b: list[int]) -> list[int]:
    K = len(a)
    out = [0] * K
    for i in range(1, K + 1):
        if a[i - 1]:
            for j in range(1, K // i + 1):
                out[i * j - 1] += a[i - 1] * b[j - 1]
    return out


def count_sublattices(r: int, K: int) -> ZetaCoefficients:
    """a_1..a_K of zeta(Z^r, s): the Dirichlet convolution of k -> k^j for j < r."""
    if r < 0 or K < 1:
        raise SubtorusError("need r >= 0 and K >= 1")
    acc = [1] + [0] * (K - 1)
    for j in range(r):
        acc = _dirichlet(acc, [k**j for k in range(1, K + 1)])
    return ZetaCoefficients(r, tuple(acc))


def count_with_fixed_identity_component(r: int, n: int, K: int) -> ZetaCoefficients:
    if not 0 <= n <= r:
        raise SubtorusError(f"identity component dimension {n} must lie in [0, {r}]")
    return ZetaCoefficients(r, count_sublattices(r - n, K).coefficients)


def _ordered_factorizations(k: int, r: int):
    if r == 1:
        yield (k,)
        return
    for d in range(1, k + 1):
        if k % d == 0:
            for rest in _ordered_factorizations(k // d, r - 1):
                yield (d,) + rest


def enumerate_hnf(r: int, k: int) -> list[Lattice]:
    """Every index-k sublattice of Z^r, as lower-triangular HNF bases.

    Column j has diagonal d_j and, in row j, the entries left of the pivot
    run over [0, d_j).  Output is ordered by diagonal, then off-diagonal
    entries, lexicographically.
    """
    if r < 1 or k < 1:
        raise SubtorusError("need r >= 1 and k >= 1")
    out = []
    for diag in _ordered_factorizations(k, r):
        slots = [(i, j) for i in range(r) for j in range(i)]
        for vals in itertools.product(*(range(diag[i]) for i, _ in slots)):
            rows = [[0] * r for _ in range(r)]
            for i in range(r):
                rows[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                rows[i][j] = v
            out.append(Lattice(r, IntMatrix.from_rows(rows, r)))
    return out
