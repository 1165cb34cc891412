"""Subgroups of H = Z^r + Z/k1 + ... + Z/ks and algebraic subgroups of T = Hom(H, C*).

H is modelled as Z^n / K with n = r + s and K spanned by the vectors
``k_i * e_{r+i}``; a subgroup of H is a lattice in Z^n containing K.  A point
of T is ``exp(2 pi i lam)`` for a rational exponent vector ``lam`` whose
torsion coordinates have denominators dividing the ``k_i``.  A character
``mu`` takes the value ``exp(2 pi i <mu, lam>)`` there, so ``lam`` lies in
V(xi) exactly when ``<mu, lam>`` is an integer for every ``mu`` in xi.

Closures and determinant groups are taken inside Z^n.  Because K is in every
subgroup, ``saturation(L) / L`` is the determinant group of the subgroup of H.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import HypothesisViolated, NonTorsionError, ParentMismatch, ShapeError, SubtorusError
from .lattice import (
    FiniteAbelianGroup,
    IntMatrix,
    Lattice,
    det_group,
    dual_quotient,
    frac_part,
    kernel,
    lattice_intersect,
    lattice_sum,
    lcm_all,
    saturation,
    snf,
    solve_mod_one,
)


@dataclass(frozen=True)
class FgAbGroup:
    """H = Z^free_rank + Z/k1 + ... + Z/ks with k1 | k2 | ... (invariant-factor form)."""

    free_rank: int
    torsion_moduli: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise SubtorusError("free rank must be nonnegative")
        moduli = tuple(self.torsion_moduli)
        try:
            FiniteAbelianGroup(moduli)
        except (ValueError, TypeError) as exc:
            raise SubtorusError(f"bad torsion moduli: {exc}") from None
        object.__setattr__(self, "torsion_moduli", moduli)

    @property
    def ambient(self) -> int:
        """n = r + s, the rank of the covering lattice Z^n."""
        return self.free_rank + len(self.torsion_moduli)

    @property
    def dim(self) -> int:
        """Dimension of T, which equals the free rank of H."""
        return self.free_rank

    def is_torsion_free(self) -> bool:
        return not self.torsion_moduli

    def constraint_lattice(self) -> Lattice:
        n, r = self.ambient, self.free_rank
        return Lattice.span(n, [[k if j == r + i else 0 for j in range(n)] for i, k in enumerate(self.torsion_moduli)])

    def torsion_axes(self) -> Lattice:
        """Saturation of the constraint lattice: the preimage of Tors(H)."""
        n, r = self.ambient, self.free_rank
        return Lattice.span(n, [[int(j == r + i) for j in range(n)] for i in range(len(self.torsion_moduli))])

    def zero(self) -> "Subgroup":
        return Subgroup(self, self.constraint_lattice())

    def whole(self) -> "Subgroup":
        return Subgroup(self, Lattice.full(self.ambient))

    def identity(self) -> "TorsionPoint":
        return TorsionPoint(self, (0,) * self.ambient)


def _same_parent(*objs) -> FgAbGroup:
    parents = {o.parent for o in objs}
    if len(parents) != 1:
        raise ParentMismatch("objects belong to different groups")
    return parents.pop()


@dataclass(frozen=True)
class Subgroup:
    """A subgroup xi of H, stored as its lattice (which contains K) in Z^n."""

    parent: FgAbGroup
    lattice: Lattice

    def __post_init__(self):
        if self.lattice.ambient_rank != self.parent.ambient:
            raise ShapeError("lattice ambient rank does not match the parent group")
        if not self.parent.constraint_lattice() <= self.lattice:
            raise SubtorusError("a subgroup lattice must contain the torsion constraint lattice")

    @property
    def rank(self) -> int:
        """Rank of xi as an abelian group (torsion relations removed)."""
        return self.lattice.rank - len(self.parent.torsion_moduli)

    def closure(self) -> "Subgroup":
        return Subgroup(self.parent, saturation(self.lattice))

    def det_group(self) -> FiniteAbelianGroup:
        return det_group(self.lattice)

    def is_primitive(self) -> bool:
        return self.lattice.is_primitive()

    def generators(self) -> list[tuple[int, ...]]:
        """A generating set in H, torsion coordinates reduced into [0, k_i)."""
        r = self.parent.free_rank
        out = []
        for col in self.lattice.columns:
            v = tuple(x if j < r else x % self.parent.torsion_moduli[j - r] for j, x in enumerate(col))
            if any(v):
                out.append(v)
        return out

    def __le__(self, other: "Subgroup") -> bool:
        _same_parent(self, other)
        return self.lattice <= other.lattice


def subgroup_from_generators(H: FgAbGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    gens = [list(g) for g in gens]
    r = H.free_rank
    for g in gens:
        if len(g) != H.ambient:
            raise ShapeError(f"generator {g} should have length {H.ambient}")
        for j, k in enumerate(H.torsion_moduli):
            if not 0 <= g[r + j] < k:
                raise SubtorusError(f"torsion coordinate {g[r + j]} of {g} is outside [0, {k})")
    K = H.constraint_lattice()
    return Subgroup(H, Lattice.span(H.ambient, gens + [list(c) for c in K.columns]))


def _exact(x) -> Fraction:
    if isinstance(x, (float, complex)) or isinstance(x, bool):
        raise NonTorsionError(f"{x!r} is not an exact rational exponent; only torsion translations are supported")
    try:
        return Fraction(x)
    except (TypeError, ValueError):
        raise NonTorsionError(f"{x!r} is not an exact rational exponent") from None


@dataclass(frozen=True)
class TorsionPoint:
    """The point exp(2 pi i lam) of T, with lam reduced into [0, 1)^n."""

    parent: FgAbGroup
    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        lam = tuple(frac_part(_exact(x)) for x in self.exponents)
        if len(lam) != self.parent.ambient:
            raise ShapeError(f"point needs {self.parent.ambient} exponents, got {len(lam)}")
        r = self.parent.free_rank
        for j, k in enumerate(self.parent.torsion_moduli):
            if k % lam[r + j].denominator:
                raise SubtorusError(
                    f"torsion coordinate {lam[r + j]} is not a {k}-th root of unity exponent"
                )
        object.__setattr__(self, "exponents", lam)

    def order(self) -> int:
        return lcm_all(x.denominator for x in self.exponents)

    def pair(self, mu: Sequence[int]) -> Fraction:
        """<mu, lam>; the character t^mu takes the value exp(2 pi i <mu, lam>) here."""
        return sum((m * x for m, x in zip(mu, self.exponents)), Fraction(0))

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        _same_parent(self, other)
        return TorsionPoint(self.parent, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __sub__(self, other: "TorsionPoint") -> "TorsionPoint":
        _same_parent(self, other)
        return TorsionPoint(self.parent, tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __neg__(self) -> "TorsionPoint":
        return TorsionPoint(self.parent, tuple(-a for a in self.exponents))

    def __repr__(self):
        return f"TorsionPoint({[str(x) for x in self.exponents]})"


def contains_point(xi: Subgroup, point: TorsionPoint) -> bool:
    """Whether the point lies in V(xi): every basis character evaluates to 1."""
    _same_parent(xi, point)
    return all(point.pair(mu).denominator == 1 for mu in xi.lattice.columns)


def coset_rep(lattice: Lattice, exponents: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Canonical exponent vector of the coset exp(2 pi i lam) * V(lattice).

    The coset is determined by the pairings with the HNF basis modulo 1;
    solving for those reduced pairings gives the same vector for every
    member of the coset.
    """
    B = lattice.basis
    c = [frac_part(sum((m * x for m, x in zip(mu, exponents)), Fraction(0))) for mu in B.columns()]
    x = solve_mod_one(B.T, c)
    assert x is not None, "pairings of a point are always solvable"
    return x


@dataclass(frozen=True)
class AlgSubgroupDescriptor:
    """The algebraic subgroup V(xi) = union of tau_j * V(closure(xi))."""

    parent: FgAbGroup
    dimension: int
    component_group: FiniteAbelianGroup
    identity_component_lattice: Lattice
    component_representatives: tuple[TorsionPoint, ...] = field(default=())

    def __post_init__(self):
        if len(self.component_representatives) != self.component_group.order():
            raise SubtorusError("one representative per component is required")


def char_representatives(xi: Subgroup) -> list[TorsionPoint]:
    """One torsion point in each irreducible component of V(xi), sorted.

    With ``U B V = S`` for the basis ``B`` of xi, the point ``U^T w`` pairs
    with the basis to ``V^-T S^T w``; it lies in V(xi) when ``s_i w_i`` is
    integral and in V(closure) only when every ``w_i`` is.  Running ``w_i``
    over ``j / s_i`` therefore hits each component exactly once.  Each point
    is then replaced by the canonical representative of its component.
    """
    L = xi.lattice
    n = L.ambient_rank
    S, U, _ = snf(L.basis)
    diag = [S[i, i] for i in range(L.rank)]
    closure = saturation(L)
    reps = set()
    for w in itertools.product(*(range(d) for d in diag)):
        lam = [Fraction(0)] * n
        for i, (wi, d) in enumerate(zip(w, diag)):
            if wi:
                for j in range(n):
                    lam[j] += Fraction(wi * U[i, j], d)
        reps.add(coset_rep(closure, lam))
    return [TorsionPoint(xi.parent, lam) for lam in sorted(reps)]


def v_of(xi: Subgroup) -> AlgSubgroupDescriptor:
    n = xi.parent.ambient
    return AlgSubgroupDescriptor(
        parent=xi.parent,
        dimension=n - xi.lattice.rank,
        component_group=xi.det_group(),
        identity_component_lattice=saturation(xi.lattice),
        component_representatives=tuple(char_representatives(xi)),
    )


def epsilon_of(W: AlgSubgroupDescriptor) -> Subgroup:
    """Characters vanishing on W, recovered from the descriptor alone.

    A character kills the identity component V(closure) iff it lies in the
    (primitive) closure lattice, so epsilon(W) consists of the ``B a`` with
    ``<B a, tau_j>`` integral for every component representative.  Writing
    ``N`` for a common denominator, that is ``C a == 0 (mod N)`` where row j
    of ``C`` is ``N * B^T tau_j``.
    """
    H = W.parent
    cl = W.identity_component_lattice
    B = cl.basis
    k = cl.rank
    reps = W.component_representatives
    if not reps or k == 0:
        return Subgroup(H, cl)
    rows = [[tau.pair(mu) for mu in B.columns()] for tau in reps]
    N = lcm_all(x.denominator for row in rows for x in row)
    C = [[int(x * N) for x in row] for row in rows]
    m = len(C)
    # kernel of [C | -N I] projected onto the first k coordinates
    big = IntMatrix.from_rows([C[i] + [-N if j == i else 0 for j in range(m)] for i in range(m)], k + m)
    sols = kernel(big)
    vecs = [(B @ IntMatrix.from_columns([col[:k]], k)).column(0) for col in sols.columns]
    return Subgroup(H, Lattice.span(H.ambient, vecs))


def join(xi1: Subgroup, xi2: Subgroup) -> Subgroup:
    H = _same_parent(xi1, xi2)
    return Subgroup(H, lattice_sum(xi1.lattice, xi2.lattice))


def meet(xi1: Subgroup, xi2: Subgroup) -> Subgroup:
    H = _same_parent(xi1, xi2)
    return Subgroup(H, lattice_intersect(xi1.lattice, xi2.lattice))


def _free_projection(L: Lattice, r: int) -> Lattice:
    return Lattice.span(r, [c[:r] for c in L.columns])


def prop_xi_pair(xi1: Subgroup, xi2: Subgroup) -> tuple[FiniteAbelianGroup, FiniteAbelianGroup]:
    """Determinant groups of ``(H/xi1)^v + (H/xi2)^v`` in H^v and of ``xi1 + xi2`` in H.

    Requires primitive subgroups with finite intersection.  Primitive
    subgroups contain Tors(H), so the dual side is computed on the free
    quotient Z^r.
    """
    H = _same_parent(xi1, xi2)
    if not (xi1.is_primitive() and xi2.is_primitive()):
        raise HypothesisViolated("both subgroups must be primitive")
    if meet(xi1, xi2).rank != 0:
        raise HypothesisViolated("the intersection of the subgroups must be finite")
    r = H.free_rank
    chi1 = dual_quotient(_free_projection(xi1.lattice, r))
    chi2 = dual_quotient(_free_projection(xi2.lattice, r))
    return det_group(lattice_sum(chi1, chi2)), join(xi1, xi2).det_group()
