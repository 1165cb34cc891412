"""Brute-force verification on grids of roots of unity.

The M-grid of T is the set of points whose free exponents are multiples of
1/M (torsion exponents are multiples of 1/k_i).  Every torsion coset
``eta_i V(xi_i)`` is cut out by the integrality of ``<mu, lam - lam_i>``, so
each grid point is tested character by character in exact integer
arithmetic after clearing one common denominator.

If the intersection of the cosets is nonempty it contains a point of order
dividing ``ord(eta) * c``, where c is the exponent of the determinant group
of the sum subgroup.  On the grid with that modulus, an empty scan therefore
proves the intersection is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Iterator, Sequence

import numpy as np

from .duality import FgAbGroup, TorsionPoint, _same_parent, join
from .intersect import IntersectionResult, TranslatedSubgroup
from .lattice import lcm_all

CHUNK = 1 << 18
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class GridSpec:
    ambient: FgAbGroup
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("grid modulus must be positive")

    def axis_sizes(self) -> list[int]:
        return [self.modulus] * self.ambient.free_rank + list(self.ambient.torsion_moduli)

    def size(self) -> int:
        return prod(self.axis_sizes())


def sufficient_modulus(cosets: Sequence[TranslatedSubgroup]) -> int:
    """lcm of the translation orders times the exponent of the sum's determinant group."""
    xi = cosets[0].subgroup
    for q in cosets[1:]:
        xi = join(xi, q.subgroup)
    return lcm_all(q.translation.order() for q in cosets) * xi.det_group().exponent()


class _Constraint:
    """A coset as integer data: grid point a is in it iff a @ mus.T == targets (mod D)."""

    def __init__(self, coset: TranslatedSubgroup, D: int):
        mus = [list(mu) for mu in coset.subgroup.lattice.columns]
        self.mus = np.array(mus, dtype=object).reshape(len(mus), coset.parent.ambient)
        self.targets = [(coset.translation.pair(mu) * D) for mu in mus]
        if any(t.denominator != 1 for t in self.targets):
            raise ValueError("common denominator does not clear the translation")
        self.targets = np.array([int(t) for t in self.targets], dtype=object)


def _common_denominator(grid: GridSpec, cosets: Sequence[TranslatedSubgroup]) -> int:
    dens = [grid.modulus, *grid.ambient.torsion_moduli]
    dens += [x.denominator for q in cosets for x in q.translation.exponents]
    return lcm(*dens)


def _scan(grid: GridSpec, cosets: Sequence[TranslatedSubgroup], mode: str) -> Iterator[np.ndarray]:
    """Yield chunks of grid points (as integer numerators over D) selected by ``mode``.

    ``mode`` is "all" (in every coset) or "any" (in at least one coset).
    """
    sizes = grid.axis_sizes()
    n = len(sizes)
    D = _common_denominator(grid, cosets)
    scale = np.array([D // s for s in sizes], dtype=np.int64)
    cons = [_Constraint(q, D) for q in cosets]
    bound = max((int(abs(c.mus).sum(axis=1).max()) for c in cons if c.mus.size), default=0) * D + D
    dtype = np.int64 if bound < _INT64_SAFE else object
    mats = [(c.mus.T.astype(dtype), c.targets.astype(dtype)) for c in cons]
    total = prod(sizes)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        coords = np.empty((idx.size, n), dtype=np.int64)
        rem = idx
        for j in range(n - 1, -1, -1):
            rem, coords[:, j] = np.divmod(rem, sizes[j])
        nums = (coords * scale).astype(dtype)
        if mode == "all":
            keep = np.ones(idx.size, dtype=bool)
            for M, t in mats:
                if M.shape[1]:
                    keep &= np.all((nums @ M - t) % D == 0, axis=1)
        else:
            keep = np.zeros(idx.size, dtype=bool)
            for M, t in mats:
                keep |= np.all((nums @ M - t) % D == 0, axis=1) if M.shape[1] else True
        if keep.any():
            yield nums[keep], D


def _to_points(H: FgAbGroup, chunks) -> list[TorsionPoint]:
    pts = []
    for nums, D in chunks:
        for row in nums.tolist():
            pts.append(TorsionPoint(H, tuple(Fraction(int(a), D) for a in row)))
    return sorted(pts, key=lambda p: p.exponents)


def brute_points(cosets: Sequence[TranslatedSubgroup], M: int) -> list[TorsionPoint]:
    """All M-grid points lying in every coset, in lexicographic order."""
    H = _same_parent(*cosets)
    return _to_points(H, _scan(GridSpec(H, M), cosets, "all"))


def grid_trace(cosets: Sequence[TranslatedSubgroup], M: int) -> list[TorsionPoint]:
    """All M-grid points lying in at least one of the cosets (a union), sorted."""
    if not cosets:
        return []
    H = _same_parent(*cosets)
    return _to_points(H, _scan(GridSpec(H, M), cosets, "any"))


def grid_nonempty(cosets: Sequence[TranslatedSubgroup], M: int) -> bool:
    """Early-exit emptiness probe on the M-grid."""
    H = _same_parent(*cosets)
    return next(_scan(GridSpec(H, M), cosets, "all"), None) is not None


def verify(result: IntersectionResult, cosets: Sequence[TranslatedSubgroup]) -> bool:
    """Check a reported intersection against the brute-force grid.

    The verdict must match a scan at the sufficient modulus.  For a nonempty
    answer, every brute point must fall in a reported component, every
    component representative must lie in all the input cosets (a point of a
    finer grid), and the components must be pairwise distinct and as many as
    the determinant group of the sum subgroup.
    """
    M = sufficient_modulus(cosets)
    if result.empty:
        return not grid_nonempty(cosets, M)
    pts = brute_points(cosets, M)
    if not pts:
        return False
    comps = list(result.components)
    if len(comps) != result.sum_subgroup.det_group().order() or len(set(comps)) != len(comps):
        return False
    for c in comps:
        if not all(q.contains(c.translation) for q in cosets):
            return False
    if result.representative is None or not all(q.contains(result.representative) for q in cosets):
        return False
    return all(any(c.contains(p) for c in comps) for p in pts)
