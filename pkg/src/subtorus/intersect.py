"""Intersections of torsion-translated subgroups rho * V(xi) of T.

Three routes decide whether ``eta_1 V(xi_1) cap ... cap eta_k V(xi_k)`` is
empty:

* :func:`intersect_many` solves the congruences ``<mu, x - lam_i> in Z`` over
  the generators ``mu`` of every ``xi_i``.  A solution is a point of the
  intersection, which is then ``rho * V(xi_1 + ... + xi_k)``.
* :func:`intersect_two` tests whether ``eta_1 / eta_2`` lies in
  ``V(xi_1) V(xi_2) = V(xi_1 cap xi_2)``.
* :func:`intersect_two_virtual` (torsion-free H only) runs the
  virtual-belonging test against the dual of ``Z^r / (xi_1 cap xi_2)``, once
  per component of ``V(xi_1 cap xi_2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

from .duality import (
    AlgSubgroupDescriptor,
    FgAbGroup,
    Subgroup,
    TorsionPoint,
    _exact,
    _same_parent,
    char_representatives,
    contains_point,
    coset_rep,
    join,
    meet,
    v_of,
)
from .errors import (
    InvariantViolation,
    NotPrimitive,
    ShapeError,
    SubtorusError,
    TorsionParentError,
)
from .lattice import (
    FiniteAbelianGroup,
    IntMatrix,
    Lattice,
    dual_quotient,
    frac_part,
    lattice_sum,
    lcm_all,
    minor_gcd,
    saturation,
    solve_mod_one,
)

__all__ = [
    "TranslatedSubgroup",
    "IntersectionResult",
    "OrderData",
    "VirtualCheck",
    "CongruenceSystem",
    "contains_point",
    "virtually_belongs",
    "virtual_check",
    "intersect_two",
    "intersect_two_virtual",
    "intersect_many",
    "intersect_unions",
    "is_finite_intersection",
    "exp_subtorus",
    "exp_intersect",
    "dimtori_construct",
]


@dataclass(frozen=True, eq=False)
class TranslatedSubgroup:
    """The coset ``translation * V(subgroup)``.

    The translation is kept exactly as given (its order feeds the order
    bounds); equality and hashing go through the canonical representative.
    """

    translation: TorsionPoint
    subgroup: Subgroup

    def __post_init__(self):
        _same_parent(self.translation, self.subgroup)

    @property
    def parent(self) -> FgAbGroup:
        return self.subgroup.parent

    @property
    def dimension(self) -> int:
        return self.parent.ambient - self.subgroup.lattice.rank

    def canonical_translation(self) -> TorsionPoint:
        return TorsionPoint(self.parent, coset_rep(self.subgroup.lattice, self.translation.exponents))

    def canonical(self) -> "TranslatedSubgroup":
        return TranslatedSubgroup(self.canonical_translation(), self.subgroup)

    def contains(self, point: TorsionPoint) -> bool:
        return contains_point(self.subgroup, point - self.translation)

    def is_subset_of(self, other: "TranslatedSubgroup") -> bool:
        """rho V(xi) inside rho' V(xi') iff xi' <= xi and rho - rho' in V(xi')."""
        return other.subgroup <= self.subgroup and other.contains(self.translation)

    def __eq__(self, other):
        if not isinstance(other, TranslatedSubgroup):
            return NotImplemented
        return (
            self.parent == other.parent
            and self.subgroup == other.subgroup
            and contains_point(self.subgroup, self.translation - other.translation)
        )

    def __hash__(self):
        return hash((self.subgroup, self.canonical_translation()))

    def __repr__(self):
        return f"TranslatedSubgroup({self.translation!r}, gens={self.subgroup.generators()})"


class OrderData(NamedTuple):
    """ord of gamma-hat(eta), ord(rho), ord(eta), and c = exponent of the determinant group."""

    gamma_eta: int
    rho: int
    eta: int
    c: int

    def bounds_hold(self) -> bool:
        return self.rho % self.gamma_eta == 0 and (self.eta * self.c) % self.rho == 0


class VirtualCheck(NamedTuple):
    """One virtual-belonging test: vector lam, value d, the product d * lam, verdict."""

    vector: tuple[Fraction, ...]
    d: int
    scaled: tuple[Fraction, ...]
    belongs: bool
    shift: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class IntersectionResult:
    empty: bool
    sum_subgroup: Subgroup
    dimension: int
    representative: TorsionPoint | None = None
    components: tuple[TranslatedSubgroup, ...] = ()
    order_bound_data: OrderData | None = None
    checks: tuple[VirtualCheck, ...] = ()

    def as_coset(self) -> TranslatedSubgroup | None:
        if self.empty:
            return None
        return TranslatedSubgroup(self.representative, self.sum_subgroup)

    def same_answer(self, other: "IntersectionResult") -> bool:
        """Same verdict and, when nonempty, the same coset."""
        if self.empty or other.empty:
            return self.empty == other.empty and self.sum_subgroup == other.sum_subgroup
        return self.as_coset() == other.as_coset()


@dataclass(frozen=True)
class CongruenceSystem:
    """``M x = rhs (mod Z)``: one row per generator mu of each xi_i, rhs = <mu, lam_i>.

    Solvable exactly when gamma-hat(eta) lies in the image of sigma-hat.
    """

    parent: FgAbGroup
    matrix: IntMatrix
    rhs: tuple[Fraction, ...]

    @classmethod
    def from_cosets(cls, cosets: Sequence[TranslatedSubgroup]) -> "CongruenceSystem":
        H = _same_parent(*cosets)
        rows, rhs = [], []
        for q in cosets:
            for mu in q.subgroup.lattice.columns:
                rows.append(mu)
                rhs.append(q.translation.pair(mu))
        return cls(H, IntMatrix.from_rows(rows, H.ambient) if rows else IntMatrix.zeros(0, H.ambient), tuple(rhs))

    def gamma_eta_order(self) -> int:
        return lcm_all(x.denominator for x in self.rhs)

    def solve(self) -> tuple[Fraction, ...] | None:
        return solve_mod_one(self.matrix, self.rhs)


def _empty_result(xi: Subgroup, checks=()) -> IntersectionResult:
    return IntersectionResult(empty=True, sum_subgroup=xi, dimension=-1, checks=tuple(checks))


def intersect_many(cosets: Sequence[TranslatedSubgroup]) -> IntersectionResult:
    """Intersect k >= 1 torsion-translated subgroups."""
    if not cosets:
        raise SubtorusError("at least one coset is required")
    H = _same_parent(*cosets)
    xi = cosets[0].subgroup
    for q in cosets[1:]:
        xi = join(xi, q.subgroup)
    system = CongruenceSystem.from_cosets(cosets)
    x = system.solve()
    if x is None:
        return _empty_result(xi)
    rho = TorsionPoint(H, coset_rep(xi.lattice, x))
    for q in cosets:
        if not q.contains(rho):
            raise InvariantViolation(f"representative {rho} is not in {q}")
    closure = xi.closure()
    components = tuple(
        TranslatedSubgroup(rho + tau, closure).canonical() for tau in char_representatives(xi)
    )
    order_data = OrderData(
        gamma_eta=system.gamma_eta_order(),
        rho=rho.order(),
        eta=lcm_all(q.translation.order() for q in cosets),
        c=xi.det_group().exponent(),
    )
    return IntersectionResult(
        empty=False,
        sum_subgroup=xi,
        dimension=H.ambient - xi.lattice.rank,
        representative=rho,
        components=components,
        order_bound_data=order_data,
    )


def intersect_two(T1: TranslatedSubgroup, T2: TranslatedSubgroup) -> IntersectionResult:
    """Nonempty iff eta1 / eta2 lies in V(xi1) V(xi2) = V(xi1 cap xi2)."""
    _same_parent(T1, T2)
    nonempty = contains_point(meet(T1.subgroup, T2.subgroup), T1.translation - T2.translation)
    if not nonempty:
        return _empty_result(join(T1.subgroup, T2.subgroup))
    result = intersect_many([T1, T2])
    if result.empty:
        raise InvariantViolation("meet criterion and congruence solver disagree")
    return result


def virtual_check(lam: Sequence, chi: Lattice) -> VirtualCheck:
    """Virtual-belonging test of the rational vector ``lam`` against primitive ``chi``.

    ``chi0`` is the saturated line through ``lam`` (zero if ``lam == 0``) and
    ``d`` is the gcd of the maximal minors of ``[chi | chi0]``, which is
    ``|det|`` when that matrix is square and 0 when ``lam`` is in chi (x) Q.
    """
    lam = tuple(_exact(x) for x in lam)
    if len(lam) != chi.ambient_rank:
        raise ShapeError("vector and lattice have different ambient ranks")
    if not chi.is_primitive():
        raise NotPrimitive("virtual belonging is defined for primitive lattices only")
    m = lcm_all(x.denominator for x in lam)
    ints = [int(x * m) for x in lam]
    g = 0
    for v in ints:
        g = gcd(g, v)
    cols = list(chi.columns)
    if g:
        cols.append(tuple(v // g for v in ints))
    if len(cols) > chi.ambient_rank:
        d = 0  # no minors of that size: chi has full rank, so lam lies in chi (x) Q
    else:
        d = minor_gcd(IntMatrix.from_columns(cols, chi.ambient_rank), len(cols))
    scaled = tuple(d * x for x in lam)
    return VirtualCheck(lam, d, scaled, all(x.denominator == 1 for x in scaled))


def virtually_belongs(lam: Sequence, chi: Lattice) -> tuple[bool, int]:
    check = virtual_check(lam, chi)
    return check.belongs, check.d


def intersect_two_virtual(
    T1: TranslatedSubgroup,
    T2: TranslatedSubgroup,
    lifts: tuple[Sequence, Sequence] | None = None,
) -> IntersectionResult:
    """Decide emptiness by virtual belonging, one test per component of V(xi1 cap xi2).

    ``lifts`` optionally fixes the exponent vectors lam1, lam2 used for the
    tests (they must agree with the translations modulo Z^r); by default the
    reduced exponents are used.  Every test performed is recorded in
    ``checks``; the verdict does not depend on the choice of lifts.
    """
    H = _same_parent(T1, T2)
    if not H.is_torsion_free():
        raise TorsionParentError("the virtual-belonging criterion is stated over Z^r")
    if lifts is None:
        lam1, lam2 = T1.translation.exponents, T2.translation.exponents
    else:
        lam1, lam2 = (tuple(_exact(x) for x in v) for v in lifts)
        if TorsionPoint(H, lam1) != T1.translation or TorsionPoint(H, lam2) != T2.translation:
            raise SubtorusError("lifts must reduce to the given translations modulo Z^r")
    eps = meet(T1.subgroup, T2.subgroup)
    chi = dual_quotient(eps.lattice)
    checks = []
    found = False
    for mu in char_representatives(eps):
        vec = tuple(a - b - c for a, b, c in zip(lam1, lam2, mu.exponents))
        check = virtual_check(vec, chi)._replace(shift=mu.exponents)
        checks.append(check)
        if check.belongs:
            found = True
            break
    if not found:
        return _empty_result(join(T1.subgroup, T2.subgroup), checks)
    result = intersect_many([T1, T2])
    if result.empty:
        raise InvariantViolation("virtual belonging and congruence solver disagree")
    return replace(result, checks=tuple(checks))


def intersect_unions(
    W: Sequence[TranslatedSubgroup],
    W2: Sequence[TranslatedSubgroup],
    simplify: bool = True,
) -> list[TranslatedSubgroup]:
    """``W cap W'`` as a list of cosets, in (i, j) order.

    With ``simplify`` a coset contained in an earlier-kept one (or in a later
    one) is dropped, so the output is irredundant.
    """
    out: list[TranslatedSubgroup] = []
    for q1 in W:
        for q2 in W2:
            res = intersect_two(q1, q2)
            if not res.empty:
                out.append(res.as_coset().canonical())
    if not simplify:
        return out
    kept: list[TranslatedSubgroup] = []
    for i, q in enumerate(out):
        redundant = any(q.is_subset_of(p) for p in kept) or any(
            q.is_subset_of(p) and not p.is_subset_of(q) for p in out[i + 1:]
        )
        if not redundant:
            kept.append(q)
    return kept


def is_finite_intersection(cosets: Sequence[TranslatedSubgroup]) -> bool:
    return all(q.subgroup.rank == q.parent.dim for q in cosets)


def _torsion_free(chi: Lattice, parent: FgAbGroup | None) -> FgAbGroup:
    if parent is None:
        return FgAbGroup(chi.ambient_rank)
    if not parent.is_torsion_free():
        raise TorsionParentError("exponential subtori are handled over Z^r only")
    if parent.ambient != chi.ambient_rank:
        raise ShapeError("lattice and group have different ranks")
    return parent


def exp_subtorus(chi: Lattice, parent: FgAbGroup | None = None) -> Subgroup:
    """The primitive subgroup xi with V(xi) = exp(chi (x) C)."""
    H = _torsion_free(chi, parent)
    return Subgroup(H, dual_quotient(chi))


def exp_intersect(chi1: Lattice, chi2: Lattice, parent: FgAbGroup | None = None) -> AlgSubgroupDescriptor:
    """exp(chi1 (x) C) cap exp(chi2 (x) C) as V(xi), xi the sum of the dual quotients."""
    H = _torsion_free(chi1, parent)
    _torsion_free(chi2, H)
    return v_of(join(exp_subtorus(chi1, H), exp_subtorus(chi2, H)))


def exp_identity_lattice(W: AlgSubgroupDescriptor) -> Lattice:
    """chi with exp(chi (x) C) the identity component of W."""
    return dual_quotient(W.identity_component_lattice)


def dimtori_construct(n: int, A: FiniteAbelianGroup) -> tuple[Lattice, Lattice, int]:
    """Two subtori of (C*)^(n + 2k) meeting in (C*)^n x A, with k = #invariant factors.

    On the last 2k coordinates the lattices are the column spans of (I; 0)
    and (I; D) with D = diag(invariant factors); both also contain the first
    n coordinate axes.
    """
    if n < 0:
        raise SubtorusError("n must be nonnegative")
    d = A.invariant_factors
    k = len(d)
    amb = n + 2 * k

    def axis(i: int) -> list[int]:
        return [int(j == i) for j in range(amb)]

    shared = [axis(i) for i in range(n)]
    chi1 = shared + [axis(n + i) for i in range(k)]
    chi2 = shared + [[a + (d[i] if j == n + k + i else 0) for j, a in enumerate(axis(n + i))] for i in range(k)]
    return Lattice.span(amb, chi1), Lattice.span(amb, chi2), amb
