"""Exact integer lattices.

Matrices are small, dense and hold Python ints, so every routine here is
plain Python: no floating point and no overflow.  Conventions:

* ``hnf(A)`` returns ``(H, U)`` with ``H = A @ U``; ``H`` is in *column*
  Hermite normal form (pivot rows strictly increase from column to column,
  pivots are positive, and entries to the left of a pivot lie in
  ``[0, pivot)``), and the zero columns come last.
* ``snf(A)`` returns ``SnfResult(S, U, V)`` with ``U @ A @ V == S``.
* A :class:`Lattice` is stored as the nonzero columns of its HNF basis, so
  two equal lattices compare equal field by field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Iterable, NamedTuple, Sequence

from .errors import AmbientMismatch, ShapeError

__all__ = [
    "IntMatrix",
    "SnfResult",
    "Lattice",
    "FiniteAbelianGroup",
    "hnf",
    "snf",
    "kernel",
    "lattice_sum",
    "lattice_intersect",
    "saturation",
    "det_group",
    "dual_quotient",
    "minor_gcd",
    "membership",
    "xgcd",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _check_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        # Fractions with denominator 1 are tolerated, floats never are.
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise TypeError(f"expected an exact integer, got {x!r}")
    return x


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major in an immutable tuple."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative dimension")
        entries = tuple(_check_int(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ShapeError("column count of an empty matrix is ambiguous")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if any(len(c) != nrows for c in columns):
            raise ShapeError(f"every column must have length {nrows}")
        return cls(nrows, len(columns), tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.entries[i * self.cols + j] for i in range(self.rows)) for j in range(self.cols))

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = other.columns()
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(sum(a * b for a, b in zip(self.row(i), c)) for i in range(self.rows) for c in ocols),
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ShapeError("row counts differ")
        return IntMatrix.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)], self.cols + other.cols)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        return _bareiss_det(self.to_rows())

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0x{self.cols})"


def _bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer input."""
    n = len(a)
    if n == 0:
        return 1
    a = [r[:] for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _elimination(x: int, y: int) -> tuple[int, int, int, int]:
    """Coefficients of the unimodular map (x, y) -> (g, 0), namely [[s, t], [-y/g, x/g]].

    When x already divides y this is plain elimination, which keeps the pivot
    in place; a gcd step there could swap equal-magnitude entries forever.
    """
    if x and y % x == 0:
        return 1, 0, 1, y // x
    g, s, t = xgcd(x, y)
    return s, t, x // g, y // g


def _combine_rows(a: list[list[int]], p: int, i: int, c: int, w: list[list[int]] | None) -> None:
    """Unimodular 2x2 row operation putting gcd(a[p][c], a[i][c]) in row p and 0 in row i."""
    s, t, xg, yg = _elimination(a[p][c], a[i][c])
    for m in (a,) if w is None else (a, w):
        rp, ri = m[p], m[i]
        m[p] = [s * u + t * v for u, v in zip(rp, ri)]
        m[i] = [-yg * u + xg * v for u, v in zip(rp, ri)]


def _row_hnf(a: list[list[int]], ncols: int, track: bool = True):
    """Row-style HNF of the rows of ``a``.

    Returns ``(R, W, pivots)`` with ``W @ a == R`` (``W`` unimodular, or None
    when ``track`` is false).  Nonzero rows of ``R`` come first with strictly
    increasing pivot columns, positive pivots and entries above each pivot
    reduced into ``[0, pivot)``.
    """
    m = len(a)
    a = [list(r) for r in a]
    w = _identity(m) if track else None
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][c]:
                _combine_rows(a, r, i, c, w)
        p = a[r][c]
        if p == 0:
            continue
        if p < 0:
            a[r] = [-x for x in a[r]]
            if track:
                w[r] = [-x for x in w[r]]
            p = -p
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if track:
                    w[i] = [x - q * y for x, y in zip(w[i], w[r])]
        pivots.append(c)
        r += 1
    return a, w, pivots


def hnf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form: returns ``(H, U)`` with ``H = A @ U``, ``U`` unimodular."""
    R, W, _ = _row_hnf(A.T.to_rows(), A.rows)
    H = IntMatrix.from_rows(R, A.rows).T if A.cols else IntMatrix.zeros(A.rows, 0)
    U = IntMatrix.from_rows(W, A.cols).T if A.cols else IntMatrix.zeros(0, 0)
    return H, U


class SnfResult(NamedTuple):
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    @property
    def nonzero_diagonal(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)


def _snf_lists(a: list[list[int]], m: int, n: int):
    u = _identity(m)
    v = _identity(n)

    def col_op(j: int, k: int, c: int, row: int) -> None:
        # Mirror of _combine_rows acting on columns j, k with pivot row `row`.
        s, t, xg, yg = _elimination(a[row][j], a[row][k])
        for mat in (a, v):
            for r in mat:
                cj, ck = r[j], r[k]
                r[j] = s * cj + t * ck
                r[k] = -yg * cj + xg * ck

    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        u[t], u[pi] = u[pi], u[t]
        for mat in (a, v):
            for r in mat:
                r[t], r[pj] = r[pj], r[t]
        while True:
            for i in range(t + 1, m):
                if a[i][t]:
                    _combine_rows(a, t, i, t, u)
            for j in range(t + 1, n):
                if a[t][j]:
                    col_op(t, j, t, t)
            if any(a[i][t] for i in range(t + 1, m)):
                continue
            p = a[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            # Pull the offending row into row t; the next sweep lowers the pivot.
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form ``U @ A @ V == S`` with nonnegative diagonal d1 | d2 | ..."""
    a, u, v = _snf_lists(A.to_rows(), A.rows, A.cols)
    return SnfResult(
        IntMatrix.from_rows(a, A.cols) if A.rows else IntMatrix.zeros(0, A.cols),
        IntMatrix.from_rows(u, A.rows) if A.rows else IntMatrix.zeros(0, 0),
        IntMatrix.from_rows(v, A.cols) if A.cols else IntMatrix.zeros(0, 0),
    )


def _snf_diagonal(columns: Sequence[Sequence[int]], nrows: int) -> list[int]:
    """Nonzero SNF diagonal of the matrix with the given columns (no transforms)."""
    if not columns:
        return []
    a, _, _ = _snf_lists([list(r) for r in zip(*columns)], nrows, len(columns))
    return [a[i][i] for i in range(min(nrows, len(columns))) if a[i][i]]


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^n held by its canonical column-HNF basis.

    Construct with :meth:`span`; calling the constructor directly requires a
    basis that is already canonical and raises otherwise.
    """

    ambient_rank: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_rank:
            raise ShapeError("basis rows must equal the ambient rank")
        if not _is_canonical(self.basis):
            raise ValueError("basis is not in canonical column Hermite normal form; use Lattice.span")

    @classmethod
    def span(cls, ambient_rank: int, vectors: Iterable[Sequence[int]] = ()) -> "Lattice":
        """The lattice spanned by ``vectors`` (any generating set, dependent or not)."""
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_rank:
                raise ShapeError(f"generator {v} does not have length {ambient_rank}")
        R, _, pivots = _row_hnf(vectors, ambient_rank, track=False)
        cols = R[: len(pivots)]
        return cls(ambient_rank, IntMatrix.from_columns(cols, ambient_rank))

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n))

    @property
    def rank(self) -> int:
        return self.basis.cols

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return self.basis.columns()

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(c) if x) for c in self.columns]

    def contains(self, x: Sequence[int]) -> bool:
        return membership(self, x)

    def is_primitive(self) -> bool:
        return all(d == 1 for d in _snf_diagonal(self.columns, self.ambient_rank))

    def __le__(self, other: "Lattice") -> bool:
        _same_ambient(self, other)
        return all(other.contains(c) for c in self.columns)

    def __add__(self, other: "Lattice") -> "Lattice":
        return lattice_sum(self, other)

    def __and__(self, other: "Lattice") -> "Lattice":
        return lattice_intersect(self, other)

    def __repr__(self):
        return f"Lattice(n={self.ambient_rank}, basis={[list(c) for c in self.columns]})"


def _is_canonical(B: IntMatrix) -> bool:
    last = -1
    for j, col in enumerate(B.columns()):
        nz = [i for i, x in enumerate(col) if x]
        if not nz:
            return False
        p = nz[0]
        if p <= last or col[p] <= 0:
            return False
        for k in range(j):
            if not 0 <= B[p, k] < col[p]:
                return False
        last = p
    return True


def _same_ambient(L1: Lattice, L2: Lattice) -> None:
    if L1.ambient_rank != L2.ambient_rank:
        raise AmbientMismatch(f"ambient ranks {L1.ambient_rank} and {L2.ambient_rank} differ")


def kernel(A: IntMatrix) -> Lattice:
    """The saturated lattice ``{x in Z^cols : A @ x == 0}``."""
    H, U = hnf(A)
    r = sum(1 for c in H.columns() if any(c))
    return Lattice.span(A.cols, U.columns()[r:])


def lattice_sum(L1: Lattice, L2: Lattice) -> Lattice:
    _same_ambient(L1, L2)
    return Lattice.span(L1.ambient_rank, L1.columns + L2.columns)


def lattice_intersect(L1: Lattice, L2: Lattice) -> Lattice:
    """Meet, via the kernel of ``[B1 | -B2]``: ``B1 a == B2 b`` gives ``B1 a`` in both."""
    _same_ambient(L1, L2)
    n, k1 = L1.ambient_rank, L1.rank
    if k1 == 0 or L2.rank == 0:
        return Lattice.zero(n)
    neg = IntMatrix.from_columns([[-x for x in c] for c in L2.columns], n)
    K = kernel(L1.basis.hstack(neg))
    return Lattice.span(n, [(L1.basis @ IntMatrix.from_columns([c[:k1]], k1)).column(0) for c in K.columns])


def dual_quotient(L: Lattice) -> Lattice:
    """``(Z^n / L)^dual`` inside ``Z^n``: every mu with ``<mu, x> == 0`` for x in L."""
    if L.rank == 0:
        return Lattice.full(L.ambient_rank)
    return kernel(L.basis.T)


def saturation(L: Lattice) -> Lattice:
    """``{x : m*x in L for some m >= 1}``, the double orthogonal complement."""
    D = dual_quotient(L)
    return kernel(D.basis.T if D.rank else IntMatrix.zeros(0, L.ambient_rank))


def membership(L: Lattice, x: Sequence[int]) -> bool:
    """Integer-combination test by back substitution along the HNF pivots."""
    if len(x) != L.ambient_rank:
        raise ShapeError(f"vector of length {len(x)} tested against Z^{L.ambient_rank}")
    res = [_check_int(v) for v in x]
    for col, p in zip(L.columns, L.pivots()):
        if any(res[:p]):
            return False
        q, rem = divmod(res[p], col[p])
        if rem:
            return False
        res = [a - q * b for a, b in zip(res, col)]
    return not any(res)


def minor_gcd(A: IntMatrix, k: int) -> int:
    """gcd of all k x k minors of ``A`` by direct enumeration (0 iff rank < k).

    Exponential in the matrix size; meant for the small matrices of the
    virtual-belonging test and as an independent check on :func:`snf`.
    """
    if not 0 <= k <= min(A.rows, A.cols):
        raise ShapeError(f"minor size {k} out of range for a {A.rows}x{A.cols} matrix")
    if k == 0:
        return 1
    rows = A.to_rows()
    g = 0
    for rs in itertools.combinations(range(A.rows), k):
        for cs in itertools.combinations(range(A.cols), k):
            g = gcd(g, _bareiss_det([[rows[i][j] for j in cs] for i in rs]))
            if g == 1:
                return 1
    return g


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group by invariant factors d1 | d2 | ... (all >= 2)."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(_check_int(d) for d in self.invariant_factors)
        if any(d < 2 for d in f):
            raise ValueError(f"invariant factors must be >= 2, got {f}")
        if any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"invariant factors {f} do not form a divisibility chain")
        object.__setattr__(self, "invariant_factors", f)

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FiniteAbelianGroup":
        """Normalize a direct sum of cyclic groups Z/a (a >= 1) to invariant-factor form."""
        orders = [abs(_check_int(a)) for a in orders]
        if any(a == 0 for a in orders):
            raise ValueError("Z/0 is infinite")
        diag = _snf_diagonal([[a if i == j else 0 for i in range(len(orders))] for j, a in enumerate(orders)], len(orders))
        return cls(tuple(d for d in diag if d > 1))

    def order(self) -> int:
        return prod(self.invariant_factors)

    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.invariant_factors)})"


def det_group(L: Lattice) -> FiniteAbelianGroup:
    """The determinant group ``saturation(L) / L``."""
    return FiniteAbelianGroup(tuple(d for d in _snf_diagonal(L.columns, L.ambient_rank) if d > 1))


def lcm_all(values: Iterable[int]) -> int:
    return lcm(1, *values)


def frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def solve_mod_one(M: IntMatrix, rhs: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """A rational ``x`` with ``M @ x - rhs`` integral, or None if there is none.

    Uses ``U M V = S``: the system becomes ``s_i y_i = (U rhs)_i (mod 1)`` in
    ``y = V^-1 x``.  Free directions of ``y`` are set to zero, so the answer
    is a deterministic function of ``rhs`` (not merely of ``rhs`` mod 1).
    """
    if len(rhs) != M.rows:
        raise ShapeError("right-hand side length must equal the row count")
    S, U, V = snf(M)
    c = [sum((U[i, j] * Fraction(rhs[j]) for j in range(M.rows)), Fraction(0)) for i in range(M.rows)]
    y = [Fraction(0)] * M.cols
    for i in range(M.rows):
        s = S[i, i] if i < M.cols else 0
        if s:
            y[i] = c[i] / s
        elif c[i].denominator != 1:
            return None
    return tuple(frac_part(sum((V[i, j] * y[j] for j in range(M.cols)), Fraction(0))) for i in range(M.cols))
