"""Exact integer linear algebra.

Normal forms, sublattices of Z^n, and finitely generated abelian groups
given by presentations.  Everything runs on Python ints and
``fractions.Fraction``; nothing here ever touches a float.

Conventions
-----------
``hnf`` returns the *column* Hermite normal form: ``M @ U == H`` with ``U``
unimodular and ``H`` a lower staircase.  In column ``j`` the first nonzero
entry (the pivot, at row ``p_j``) is positive, ``p_0 < p_1 < ...``, and the
entries of row ``p_j`` to the left of the pivot lie in ``[0, pivot)``.
Zero columns come last.

>>> H, U = hnf(IntMatrix([[1, 1], [1, -1]]))
>>> H.tolist()
[[1, 0], [1, 2]]
>>> snf(IntMatrix([[6, 0], [0, 4]]))[0].tolist()
[[2, 0], [0, 12]]
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

INFINITE = math.inf


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    if a != 0 and b % a == 0:
        return abs(a), (1 if a > 0 else -1), 0
    if b != 0 and a % b == 0:
        return abs(b), 0, (1 if b > 0 else -1)
    s0, s1, t0, t1 = 1, 0, 0, 1
    r0, r1 = a, b
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("empty matrix needs an explicit column count")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = cols
        self.data = data
        self._hash = None

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length mismatch")
        return cls([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self.data for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "IntMatrix":
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        cols = list(cols)
        return IntMatrix([[self.data[i][j] for j in cols] for i in rows], cols=len(cols))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix([a + b for a, b in zip(self.data, other.data)], cols=self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return IntMatrix(self.data + other.data, cols=self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ocols = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self.data],
            cols=other.cols,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in r] for r in self.data], cols=self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, cols={self.cols})"

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.data]
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

    def rank(self) -> int:
        """Rank by integer elimination, dividing each row by its content."""
        a = [list(r) for r in self.data if any(r)]
        rank = 0
        for c in range(self.cols):
            p = next((i for i in range(rank, len(a)) if a[i][c]), None)
            if p is None:
                continue
            a[rank], a[p] = a[p], a[rank]
            piv = a[rank]
            for i in range(rank + 1, len(a)):
                if a[i][c]:
                    row = [x * piv[c] - y * a[i][c] for x, y in zip(a[i], piv)]
                    g = math.gcd(*row)
                    a[i] = [x // g for x in row] if g > 1 else row
            rank += 1
            if rank == len(a):
                break
        return rank


def _row_echelon(a: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``a`` in place to reduced row echelon form; return pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return pivots


def _as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


# -- normal forms -----------------------------------------------------------


def _col_op(A: list[list[int]], j: int, k: int, a: int, b: int, c: int, d: int) -> None:
    """Replace columns (j, k) by (a*col_j + b*col_k, c*col_j + d*col_k)."""
    for r in A:
        x, y = r[j], r[k]
        r[j], r[k] = a * x + b * y, c * x + d * y


def _row_op(A: list[list[int]], i: int, k: int, a: int, b: int, c: int, d: int) -> None:
    ri, rk = A[i], A[k]
    A[i] = [a * x + b * y for x, y in zip(ri, rk)]
    A[k] = [c * x + d * y for x, y in zip(ri, rk)]


def hnf(M) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form ``(H, U)`` with ``M @ U == H``."""
    M = _as_matrix(M)
    m, n = M.rows, M.cols
    H = [list(r) for r in M.data]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    k = 0
    for i in range(m):
        if k == n:
            break
        for j in range(k + 1, n):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][k]
            g, s, t = xgcd(a, b)
            _col_op(H, k, j, s, t, -b // g, a // g)
            _col_op(U, k, j, s, t, -b // g, a // g)
        p = H[i][k]
        if p == 0:
            continue
        if p < 0:
            _col_op(H, k, k, -1, 0, -1, 0)
            _col_op(U, k, k, -1, 0, -1, 0)
            p = -p
        for j in range(k):
            q = H[i][j] // p
            if q:
                _col_op(H, j, k, 1, -q, 0, 1)
                _col_op(U, j, k, 1, -q, 0, 1)
        k += 1
    return IntMatrix(H, cols=n), IntMatrix(U, cols=n)


def snf(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(S, U, V)`` with ``U @ M @ V == S``."""
    M = _as_matrix(M)
    m, n = M.rows, M.cols
    A = [list(r) for r in M.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            _col_op(A, t, pj, 0, 1, 1, 0)
            _col_op(V, t, pj, 0, 1, 1, 0)
        while True:
            for i in range(t + 1, m):
                b = A[i][t]
                if b == 0:
                    continue
                a = A[t][t]
                g, s, x = xgcd(a, b)
                _row_op(A, t, i, s, x, -b // g, a // g)
                _row_op(U, t, i, s, x, -b // g, a // g)
            for j in range(t + 1, n):
                b = A[t][j]
                if b == 0:
                    continue
                a = A[t][t]
                g, s, x = xgcd(a, b)
                _col_op(A, t, j, s, x, -b // g, a // g)
                _col_op(V, t, j, s, x, -b // g, a // g)
            if any(A[i][t] for i in range(t + 1, m)):
                continue
            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            # pull a non-multiple into row t and go again
            _row_op(A, t, bad, 1, 1, 0, 1)
            _row_op(U, t, bad, 1, 1, 0, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return IntMatrix(A, cols=n), IntMatrix(U, cols=m), IntMatrix(V, cols=n)


def snf_diagonal(M) -> list[int]:
    S = snf(M)[0]
    return [S.data[i][i] for i in range(min(S.rows, S.cols))]


def inverse_unimodular(M: IntMatrix) -> IntMatrix:
    n = M.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.data)]
    piv = _row_echelon(a, n)
    if len(piv) != n:
        raise ValueError("matrix is singular")
    out = []
    for r in a:
        row = r[n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return IntMatrix(out, cols=n)


# -- solving ------------------------------------------------------------------


def solve_rational(M, b: Sequence) -> tuple[Fraction, ...] | None:
    """Some rational ``x`` with ``M x = b``, or ``None`` if inconsistent."""
    M = _as_matrix(M)
    if len(b) != M.rows:
        raise ValueError("right-hand side has the wrong length")
    n = M.cols
    a = [[Fraction(x) for x in r] + [Fraction(bi)] for r, bi in zip(M.data, b)]
    pivots = _row_echelon(a, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = a[r][n]
    return tuple(x)


def solve_integer(M, b: Sequence[int]) -> tuple[int, ...] | None:
    """Some integer ``x`` with ``M x = b``, or ``None``."""
    M = _as_matrix(M)
    if len(b) != M.rows:
        raise ValueError("right-hand side has the wrong length")
    H, U = hnf(M)
    y = [0] * M.cols
    k = 0
    for i in range(M.rows):
        acc = sum(H.data[i][j] * y[j] for j in range(k))
        if k < M.cols and H.data[i][k] != 0:
            q, r = divmod(b[i] - acc, H.data[i][k])
            if r:
                return None
            y[k] = q
            k += 1
        elif acc != b[i]:
            return None
    return U.apply(y)


def integer_kernel(M) -> IntMatrix:
    """Columns form a basis of ``{x in Z^n : M x = 0}``."""
    M = _as_matrix(M)
    H, U = hnf(M)
    zero = [j for j in range(M.cols) if not any(H.column(j))]
    return IntMatrix.from_columns([U.column(j) for j in zero], M.cols)


def gcd_minors(M, k: int) -> int:
    """gcd of all ``k x k`` minors; 1 for ``k == 0``, 0 when there are none."""
    M = _as_matrix(M)
    if k == 0:
        return 1
    if k > min(M.rows, M.cols):
        return 0
    g = 0
    for rs in itertools.combinations(range(M.rows), k):
        for cs in itertools.combinations(range(M.cols), k):
            g = math.gcd(g, M.submatrix(rs, cs).det())
            if g == 1:
                return 1
    return g


# -- sublattices ----------------------------------------------------------------


class SubLattice:
    """The lattice spanned by the columns of ``generators``, possibly shifted.

    Equality compares the HNF basis and the offset modulo the lattice.
    """

    def __init__(self, ambient_dim: int, generators=None, offset: Sequence[int] | None = None):
        self.ambient_dim = ambient_dim
        if generators is None:
            generators = IntMatrix.zeros(ambient_dim, 0)
        generators = _as_matrix(generators)
        if generators.rows != ambient_dim:
            raise ValueError("generators must have ambient_dim rows")
        self.generators = generators
        if offset is not None:
            offset = tuple(int(x) for x in offset)
            if len(offset) != ambient_dim:
                raise ValueError("offset has the wrong length")
            if not any(offset):
                offset = None
        self.offset = offset

    @classmethod
    def full(cls, n: int) -> "SubLattice":
        return cls(n, IntMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "SubLattice":
        return cls(n)

    @cached_property
    def basis(self) -> IntMatrix:
        H, _ = hnf(self.generators)
        cols = [c for c in H.columns() if any(c)]
        return IntMatrix.from_columns(cols, self.ambient_dim)

    @property
    def rank(self) -> int:
        return self.basis.cols

    @cached_property
    def _pivots(self) -> list[tuple[int, int]]:
        out = []
        for c in self.basis.columns():
            p = next(i for i, x in enumerate(c) if x)
            out.append((p, c[p]))
        return out

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of ``v`` modulo the (linear) lattice."""
        v = list(v)
        for (p, piv), c in zip(self._pivots, self.basis.columns()):
            q = v[p] // piv
            if q:
                v = [x - q * y for x, y in zip(v, c)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        if self.offset is not None:
            v = [a - b for a, b in zip(v, self.offset)]
        return not any(self.reduce(v))

    __contains__ = contains

    @property
    def canonical_offset(self) -> tuple[int, ...]:
        if self.offset is None:
            return (0,) * self.ambient_dim
        return self.reduce(self.offset)

    def linear(self) -> "SubLattice":
        return SubLattice(self.ambient_dim, self.generators)

    def includes(self, other: "SubLattice") -> bool:
        """Containment of linear lattices."""
        return all(self.contains(c) for c in other.generators.columns())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubLattice)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
            and self.canonical_offset == other.canonical_offset
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis, self.canonical_offset))

    def __repr__(self) -> str:
        extra = f", offset={self.offset}" if self.offset else ""
        return f"SubLattice({self.ambient_dim}, basis={self.basis.tolist()}{extra})"


def lattice_member(L: SubLattice, v: Sequence[int]) -> bool:
    return L.contains(v)


def saturate(L: SubLattice) -> SubLattice:
    """``span_Q(L) ∩ Z^n``."""
    if L.offset is not None:
        raise ValueError("saturate needs a linear lattice")
    r = L.rank
    if r == 0:
        return SubLattice.zero(L.ambient_dim)
    _, U, _ = snf(L.basis)
    Uinv = inverse_unimodular(U)
    return SubLattice(L.ambient_dim, Uinv.submatrix(None, range(r)))


def _coordinates(big: SubLattice, small: SubLattice) -> IntMatrix:
    """Coordinates of small's generators in big's HNF basis."""
    cols = []
    for c in small.generators.columns():
        y = solve_integer(big.basis, c)
        if y is None:
            raise ValueError("not a sublattice")
        cols.append(y)
    return IntMatrix.from_columns(cols, big.rank)


def lattice_index(big: SubLattice, small: SubLattice):
    """``[big : small]`` as an int, or ``INFINITE``."""
    if big.offset is not None or small.offset is not None:
        raise ValueError("lattice_index needs linear lattices")
    C = _coordinates(big, small)
    if small.rank < big.rank:
        return INFINITE
    return math.prod(d for d in snf_diagonal(C) if d)


def coset_representatives(big: SubLattice, small: SubLattice) -> list[tuple[int, ...]]:
    """One vector from each coset of ``small`` in ``big`` (finite index only)."""
    C = _coordinates(big, small)
    r = big.rank
    if small.rank < r:
        raise ValueError("infinite index")
    S, U, _ = snf(C)
    diag = [S.data[i][i] for i in range(r)]
    Uinv = inverse_unimodular(U)
    out = []
    for j in itertools.product(*(range(d) for d in diag)):
        y = Uinv.apply(j)
        out.append(big.basis.apply(y))
    return out


# -- abelian groups ----------------------------------------------------------


class FgAbGroup:
    """Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with d_1 | d_2 | ... and every d_i >= 2."""

    __slots__ = ("free_rank", "invariant_factors")

    def __init__(self, free_rank: int = 0, invariant_factors: Iterable[int] = ()):
        factors = tuple(int(d) for d in invariant_factors if d != 1)
        if free_rank < 0:
            raise ValueError("negative free rank")
        for d in factors:
            if d < 2:
                raise ValueError(f"bad invariant factor {d}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors must divide each other: {a}, {b}")
        self.free_rank = free_rank
        self.invariant_factors = factors

    @classmethod
    def from_relations(cls, ngens: int, relations) -> "FgAbGroup":
        relations = _as_matrix(relations) if relations is not None else IntMatrix.zeros(ngens, 0)
        diag = [d for d in snf_diagonal(relations) if d]
        return cls(ngens - len(diag), sorted(diag))

    @property
    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def order(self):
        return INFINITE if self.free_rank else self.torsion_order

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def ngens(self) -> int:
        """Minimal number of generators."""
        return self.free_rank + len(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_cyclic(self) -> bool:
        return self.ngens <= 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FgAbGroup)
            and self.free_rank == other.free_rank
            and self.invariant_factors == other.invariant_factors
        )

    def __hash__(self) -> int:
        return hash((self.free_rank, self.invariant_factors))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"FgAbGroup({self.free_rank}, {self.invariant_factors})"


class Presentation:
    """Z^ngens modulo the column span of ``relations``."""

    def __init__(self, ngens: int, relations=None):
        self.ngens = ngens
        self.relations = IntMatrix.zeros(ngens, 0) if relations is None else _as_matrix(relations)
        if self.relations.rows != ngens:
            raise ValueError("relation matrix must have ngens rows")

    @classmethod
    def standard(cls, G: FgAbGroup) -> "Presentation":
        n = G.ngens
        cols = [[d if i == G.free_rank + k else 0 for i in range(n)] for k, d in enumerate(G.invariant_factors)]
        return cls(n, IntMatrix.from_columns(cols, n))

    @cached_property
    def lattice(self) -> SubLattice:
        return SubLattice(self.ngens, self.relations)

    @cached_property
    def group(self) -> FgAbGroup:
        return FgAbGroup.from_relations(self.ngens, self.relations)

    def is_zero(self, v: Sequence[int]) -> bool:
        return self.lattice.contains(v)

    def __repr__(self) -> str:
        return f"Presentation({self.ngens}, {self.relations.tolist()})"


class GroupMap:
    """Homomorphism between presented groups, given on generators.

    ``matrix`` has shape ``target.ngens x source.ngens``; column ``j`` is the
    image of generator ``j``.
    """

    def __init__(self, source: Presentation, target: Presentation, matrix):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(matrix, cols=source.ngens) if target.ngens == 0 else IntMatrix(matrix)
        if (matrix.rows, matrix.cols) != (target.ngens, source.ngens):
            raise ValueError("map matrix has the wrong shape")
        self.source = source
        self.target = target
        self.matrix = matrix
        image = matrix @ source.relations
        for c in image.columns():
            if not target.is_zero(c):
                raise ValueError("map is not well defined on relations")

    @classmethod
    def identity(cls, P: Presentation) -> "GroupMap":
        return cls(P, P, IntMatrix.identity(P.ngens))

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(v)

    def then(self, g: "GroupMap") -> "GroupMap":
        """``g ∘ self``."""
        return GroupMap(self.source, g.target, g.matrix @ self.matrix)

    def agrees_with(self, g: "GroupMap") -> bool:
        return all(self.target.is_zero(c) for c in (self.matrix - g.matrix).columns())

    @cached_property
    def kernel(self) -> FgAbGroup:
        return map_kernel(self)

    @property
    def is_surjective(self) -> bool:
        return map_is_surjective(self)

    @property
    def is_isomorphism(self) -> bool:
        # f.g. abelian groups are Hopfian: an onto map between isomorphic groups is injective
        return self.source.group == self.target.group and self.is_surjective

    def __repr__(self) -> str:
        return f"GroupMap({self.matrix.tolist()})"


def map_kernel(f: GroupMap) -> FgAbGroup:
    n = f.source.ngens
    K = integer_kernel(f.matrix.hstack(f.target.relations))
    gens = SubLattice(n, K.submatrix(range(n), None))
    coords = _coordinates(gens, SubLattice(n, f.source.relations))
    return FgAbGroup.from_relations(gens.rank, coords)


def map_is_surjective(f: GroupMap) -> bool:
    m = f.target.ngens
    return FgAbGroup.from_relations(m, f.matrix.hstack(f.target.relations)).is_trivial


def kernel_is_cyclic(f: GroupMap) -> bool:
    return f.kernel.is_cyclic


def pushout(f: GroupMap, g: GroupMap) -> tuple[Presentation, GroupMap, GroupMap]:
    """Pushout of ``B <-f- A -g-> C`` as ``(D, B -> D, C -> D)``."""
    if f.source.ngens != g.source.ngens or f.source.relations != g.source.relations:
        raise ValueError("maps must share their source")
    B, C = f.target, g.target
    nb, nc = B.ngens, C.ngens
    cols = [c + (0,) * nc for c in B.relations.columns()]
    cols += [(0,) * nb + c for c in C.relations.columns()]
    cols += [a + tuple(-x for x in b) for a, b in zip(f.matrix.columns(), g.matrix.columns())]
    D = Presentation(nb + nc, IntMatrix.from_columns(cols, nb + nc))
    ib = IntMatrix.identity(nb).vstack(IntMatrix.zeros(nc, nb)) if nb + nc else IntMatrix.zeros(0, nb)
    ic = IntMatrix.zeros(nb, nc).vstack(IntMatrix.identity(nc)) if nb + nc else IntMatrix.zeros(0, nc)
    return D, GroupMap(B, D, ib), GroupMap(C, D, ic)


def quotient(ambient_dim: int, L: SubLattice) -> FgAbGroup:
    """Z^n / L."""
    if L.offset is not None:
        raise ValueError("quotient needs a linear lattice")
    if L.ambient_dim != ambient_dim:
        raise ValueError("dimension mismatch")
    return FgAbGroup.from_relations(ambient_dim, L.generators)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)
