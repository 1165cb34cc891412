import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from subtorus import (
    FgAbGroup,
    FiniteAbelianGroup,
    IntersectionResult,
    Lattice,
    TorsionPoint,
    TranslatedSubgroup,
    brute_points,
    dimtori_construct,
    dual_quotient,
    exp_identity_lattice,
    exp_intersect,
    exp_subtorus,
    intersect_many,
    intersect_two,
    intersect_two_virtual,
    intersect_unions,
    is_finite_intersection,
    join,
    lattice_sum,
    det_group,
    subgroup_from_generators,
    sufficient_modulus,
    virtually_belongs,
)
from subtorus.errors import NonTorsionError, SubtorusError, TorsionParentError
from helpers import oracle_sized, rand_coset, rand_point, rand_primitive, rand_subgroup

seeds = st.randoms(use_true_random=False)
H3 = FgAbGroup(3)
XI1 = subgroup_from_generators(H3, [(1, 0, 0), (0, 1, 0)])
XI2 = subgroup_from_generators(H3, [(1, 0, 0), (0, 0, 1)])


def coset(H, lam, xi):
    return TranslatedSubgroup(TorsionPoint(H, [F(x) for x in lam]), xi)


def test_translation_kept_as_given_and_semantic_equality():
    H = FgAbGroup(2)
    xi = subgroup_from_generators(H, [(1, 1)])
    a = coset(H, (F(1, 3), F(2, 3)), xi)
    b = coset(H, (0, 0), xi)
    assert a.translation.order() == 3
    assert a == b and hash(a) == hash(b)
    assert a != coset(H, (F(1, 2), 0), xi)


def test_rejects_float_translations():
    with pytest.raises(NonTorsionError):
        TranslatedSubgroup(TorsionPoint(H3, (0.5, 0, 0)), XI1)


def test_meet_criterion_on_line_example():
    H = FgAbGroup(2)
    T1 = coset(H, (0, 0), subgroup_from_generators(H, [(1, 0)]))
    T2 = coset(H, (0, F(1, 2)), subgroup_from_generators(H, [(0, 1)]))
    res = intersect_two(T1, T2)
    assert not res.empty and res.dimension == 0
    assert res.representative.exponents == (0, F(1, 2))


def test_many_cosets_component_structure():
    H = FgAbGroup(2)
    xi = subgroup_from_generators(H, [(2, 0)])
    other = subgroup_from_generators(H, [(0, 2)])
    res = intersect_many([coset(H, (F(1, 4), 0), xi), coset(H, (0, F(1, 4)), other)])
    assert not res.empty
    assert len(res.components) == 4
    for c in res.components:
        assert c.dimension == 0
    assert res.order_bound_data.bounds_hold()


def test_virtual_method_rejects_torsion_parent():
    H = FgAbGroup(1, (2,))
    T = coset(H, (0, 0), H.zero())
    with pytest.raises(TorsionParentError):
        intersect_two_virtual(T, T)


def test_virtual_method_lifts_must_match():
    T1 = coset(H3, (0, 0, 0), XI1)
    T2 = coset(H3, (0, F(1, 3), 0), XI2)
    with pytest.raises(SubtorusError):
        intersect_two_virtual(T1, T2, lifts=((0, 0, 0), (0, F(2, 3), 0)))


def test_virtual_method_verdict_independent_of_lifts():
    T1 = coset(H3, (0, 0, 0), XI1)
    T2 = coset(H3, (F(3, 4), 0, 0), XI2)
    a = intersect_two_virtual(T1, T2)
    b = intersect_two_virtual(T1, T2, lifts=((0, 0, 0), (F(3, 4), 0, 1)))
    assert a.empty and b.empty
    assert b.checks[0].d == 3


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), seeds)
def test_lift_invariance(r, rng):
    chi = rand_primitive(rng, r, rng.randint(0, r))
    lam = [F(rng.randrange(6), rng.randint(1, 6)) for _ in range(r)]
    shift = [rng.randint(-3, 3) for _ in range(r)]
    b0, _ = virtually_belongs(lam, chi)
    b1, _ = virtually_belongs([a + m for a, m in zip(lam, shift)], chi)
    assert b0 == b1
    # membership of exp(2 pi i lam) in exp(chi (x) C): pairing with the dual quotient
    point = TorsionPoint(FgAbGroup(r), lam)
    assert b0 == all(point.pair(mu).denominator == 1 for mu in dual_quotient(chi).columns)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), seeds)
def test_components_and_hironaka(r, rng):
    H = FgAbGroup(r)
    cosets = [rand_coset(rng, H) for _ in range(rng.randint(1, 3))]
    res = intersect_many(cosets)
    if res.empty:
        return
    xi = res.sum_subgroup
    assert len(res.components) == xi.det_group().order()
    for c in res.components:
        assert c.dimension == r - xi.closure().lattice.rank
        assert all(q.contains(c.translation) for q in cosets)
    assert res.order_bound_data.bounds_hold()


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_representative_independence(rng):
    """Any grid point of the intersection gives the same coset as the reported one."""
    H = FgAbGroup(2, (2,))
    cosets = oracle_sized(rng, lambda g: [rand_coset(g, H) for _ in range(2)])
    res = intersect_many(cosets)
    pts = brute_points(cosets, sufficient_modulus(cosets))
    assert res.empty == (not pts)
    for p in pts[:5]:
        assert TranslatedSubgroup(p, res.sum_subgroup) == res.as_coset()


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_unions(rng):
    H = FgAbGroup(2)
    W1 = [rand_coset(rng, H, max_den=4) for _ in range(2)]
    W2 = [rand_coset(rng, H, max_den=4) for _ in range(2)]
    full = intersect_unions(W1, W2, simplify=False)
    kept = intersect_unions(W1, W2)
    assert len(kept) <= len(full)
    for q in full:
        assert any(q.is_subset_of(k) for k in kept)
    for i, a in enumerate(kept):
        for b in kept[i + 1:]:
            assert not a.is_subset_of(b) and not b.is_subset_of(a)


def test_finite_intersection_flag():
    H = FgAbGroup(2)
    assert is_finite_intersection([coset(H, (0, 0), H.whole())])
    assert not is_finite_intersection([coset(H, (0, 0), subgroup_from_generators(H, [(1, 0)]))])


def test_exp_subtorus_is_primitive_dual():
    chi = Lattice.span(3, [(1, 2, 0)])
    xi = exp_subtorus(chi)
    assert xi.is_primitive() and xi.rank == 2


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_transverse_subtori_component_group(rng):
    for _ in range(10):
        a = rng.randint(1, 2)
        chi1 = rand_primitive(rng, 4, a)
        chi2 = rand_primitive(rng, 4, 4 - a)
        s = lattice_sum(chi1, chi2)
        if (chi1 & chi2).rank == 0 and s.rank == 4:
            W = exp_intersect(chi1, chi2)
            assert W.component_group == det_group(s)
            assert W.dimension == 0
            return


@pytest.mark.parametrize("n,factors", [(0, ()), (1, (2,)), (2, (2, 4)), (0, (3, 6))])
def test_dimtori_small(n, factors):
    A = FiniteAbelianGroup(factors)
    chi1, chi2, amb = dimtori_construct(n, A)
    W = exp_intersect(chi1, chi2)
    assert (W.dimension, W.component_group) == (n, A)
    assert exp_identity_lattice(W).rank == n
    assert amb == n + 2 * len(factors)
