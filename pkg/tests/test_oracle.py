import random
from dataclasses import replace
from fractions import Fraction as F

import pytest

from subtorus import (
    FgAbGroup,
    GridSpec,
    TorsionPoint,
    TranslatedSubgroup,
    brute_points,
    grid_trace,
    intersect_many,
    subgroup_from_generators,
    sufficient_modulus,
    verify,
)
from subtorus.oracle import grid_nonempty
from helpers import oracle_sized, rand_coset

H3 = FgAbGroup(3)
XI1 = subgroup_from_generators(H3, [(1, 0, 0), (0, 1, 0)])
XI2 = subgroup_from_generators(H3, [(1, 0, 0), (0, 0, 1)])


def naive_points(cosets, M):
    """Plain Python double loop over the grid, no vectorisation."""
    import itertools

    H = cosets[0].parent
    axes = [range(M)] * H.free_rank + [range(k) for k in H.torsion_moduli]
    dens = [M] * H.free_rank + list(H.torsion_moduli)
    out = []
    for a in itertools.product(*axes):
        p = TorsionPoint(H, [F(x, d) for x, d in zip(a, dens)])
        if all(q.contains(p) for q in cosets):
            out.append(p)
    return out


def test_grid_spec():
    g = GridSpec(FgAbGroup(2, (3,)), 4)
    assert g.axis_sizes() == [4, 4, 3]
    assert g.size() == 48
    with pytest.raises(ValueError):
        GridSpec(H3, 0)


def test_example_case_one_single_point():
    T1 = TranslatedSubgroup(H3.identity(), XI1)
    T2 = TranslatedSubgroup(TorsionPoint(H3, (0, F(1, 3), 0)), XI2)
    M = sufficient_modulus([T1, T2])
    assert M == 3
    assert [p.exponents for p in brute_points([T1, T2], M)] == [(0, 0, 0)]


def test_example_case_two_empty():
    T1 = TranslatedSubgroup(H3.identity(), XI1)
    T2 = TranslatedSubgroup(TorsionPoint(H3, (F(3, 4), 0, 0)), XI2)
    assert brute_points([T1, T2], sufficient_modulus([T1, T2])) == []


@pytest.mark.parametrize("H", [FgAbGroup(2), FgAbGroup(1, (2,)), FgAbGroup(1, (2, 4))])
def test_vectorised_scan_matches_naive(H):
    rng = random.Random(hash(H) & 0xFFFF)
    for _ in range(25):
        cosets = oracle_sized(rng, lambda g: [rand_coset(g, H) for _ in range(2)], cap=24)
        M = sufficient_modulus(cosets)
        assert brute_points(cosets, M) == naive_points(cosets, M)


def test_points_sorted_and_trace_union():
    rng = random.Random(2)
    H = FgAbGroup(2)
    for _ in range(20):
        cosets = oracle_sized(rng, lambda g: [rand_coset(g, H) for _ in range(2)], cap=30)
        M = sufficient_modulus(cosets)
        pts = brute_points(cosets, M)
        assert pts == sorted(pts, key=lambda p: p.exponents)
        union = grid_trace(cosets, M)
        for p in union:
            assert any(q.contains(p) for q in cosets)
        assert set(pts) <= set(union)


def test_verify_accepts_correct_and_rejects_corrupted():
    rng = random.Random(9)
    H = FgAbGroup(2)
    rejected = 0
    checked = 0
    while checked < 30:
        cosets = oracle_sized(rng, lambda g: [rand_coset(g, H, max_gens=1) for _ in range(2)], cap=36)
        res = intersect_many(cosets)
        assert verify(res, cosets)
        if res.empty:
            continue
        checked += 1
        bad_rep = res.representative + TorsionPoint(H, (F(1, 7), F(3, 7)))
        bad = replace(res, representative=bad_rep)
        if not all(q.contains(bad_rep) for q in cosets):
            assert not verify(bad, cosets)
            rejected += 1
        assert not verify(replace(res, empty=True), cosets)
    assert rejected > 0


def test_early_exit_probe():
    T1 = TranslatedSubgroup(H3.identity(), XI1)
    assert grid_nonempty([T1], 5)
