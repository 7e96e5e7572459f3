"""Periodic arrangements in R^d and their toric quotients.

Column ``a_i`` of the d x n integer matrix ``A`` and offset ``alpha_i`` give
the hyperplanes ``<a_i, x> = alpha_i + k`` for ``k`` in Z; the translation
action of Z^d permutes them.  For a subset ``X`` of column indices:

* ``I(X) = A[X]^T Z^d``, the translates that are realised by the action;
* ``W(X)``, the integer shift vectors ``k`` for which the shifted
  hyperplanes of ``X`` meet;
* ``m(X) = [W(X) : I(X)]``, the number of orbits of such intersections.

A layer is a connected component on the torus, stored as its support
(every column whose hyperplane contains it) and a coset of ``I(F)`` in
``W(F)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import LayerData, QuotientData, rho
from .exact_lattice import (
    FgAbGroup,
    IntMatrix,
    SubLattice,
    coset_representatives,
    integer_kernel,
    lattice_index,
    saturate,
    solve_integer,
    solve_rational,
)
from .geomsl import FinitePoset, char_poly
from .polys import UniPoly
from .semimatroid import bits, molecule_split, popcount


class PeriodicArrangement:
    def __init__(self, d: int, columns: Sequence[Sequence[int]], offsets: Sequence | None = None):
        self.d = int(d)
        self.columns = tuple(tuple(int(x) for x in c) for c in columns)
        for c in self.columns:
            if len(c) != self.d:
                raise ValueError(f"column {list(c)} does not have length {self.d}")
        n = len(self.columns)
        self.offsets = (Fraction(0),) * n if offsets is None else tuple(Fraction(o) for o in offsets)
        if len(self.offsets) != n:
            raise ValueError("need one offset per column")
        self.labels = [str(i + 1) for i in range(n)]
        self._memo: dict = {}

    def _cached(self, key, compute):
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    @classmethod
    def from_matrix(cls, A, offsets=None) -> "PeriodicArrangement":
        A = A if isinstance(A, IntMatrix) else IntMatrix(A)
        return cls(A.rows, A.columns(), offsets)

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def centered(self) -> bool:
        return not any(self.offsets)

    @property
    def matrix(self) -> IntMatrix:
        return IntMatrix.from_columns(self.columns, self.d)

    def sub(self, X: int) -> IntMatrix:
        """A[X], the d x |X| submatrix."""
        return IntMatrix.from_columns([self.columns[i] for i in bits(X)], self.d)

    def rank(self, X: int) -> int:
        return self._cached(("rank", X), lambda: self.sub(X).rank() if X else 0)

    def fmt(self, X: int) -> str:
        return "{" + ",".join(self.labels[i] for i in bits(X)) + "}"

    def mask(self, X) -> int:
        if isinstance(X, int):
            return X
        m = 0
        for i in X:
            i = int(i)
            if not 1 <= i <= self.n:
                raise ValueError(f"column index {i} out of range")
            m |= 1 << (i - 1)
        return m

    def __repr__(self) -> str:
        return f"PeriodicArrangement(d={self.d}, columns={[list(c) for c in self.columns]})"


def i_lattice(arr: PeriodicArrangement, X) -> SubLattice:
    X = arr.mask(X)
    return arr._cached(("I", X), lambda: SubLattice(popcount(X), arr.sub(X).T))


def z_group(arr: PeriodicArrangement, X) -> FgAbGroup:
    """Z(X) = Z^X / I(X)."""
    X = arr.mask(X)
    return FgAbGroup.from_relations(popcount(X), arr.sub(X).T)


def w_lattice(arr: PeriodicArrangement, X) -> SubLattice | None:
    """W(X), or ``None`` when no shift of the hyperplanes of X meets."""
    X = arr.mask(X)
    return arr._cached(("W", X), lambda: _w_lattice(arr, X))


def _w_lattice(arr: PeriodicArrangement, X: int) -> SubLattice | None:
    k = popcount(X)
    W0 = saturate(i_lattice(arr, X))
    if arr.centered:
        return W0
    # k in W iff alpha_X + k lies in the column space of A[X]^T, i.e. N(alpha + k) = 0
    N = integer_kernel(arr.sub(X)).T
    alpha = [arr.offsets[i] for i in bits(X)]
    rhs = [-sum(Fraction(a) * b for a, b in zip(row, alpha)) for row in N.data]
    if any(r.denominator != 1 for r in rhs):
        return None
    k0 = solve_integer(N, [int(r) for r in rhs]) if N.rows else (0,) * k
    if k0 is None:
        return None
    return SubLattice(k, W0.generators, offset=k0)


def multiplicity(arr: PeriodicArrangement, X) -> int:
    """[W(X) : I(X)], and 0 when W(X) is empty."""
    X = arr.mask(X)
    return arr._cached(("m", X), lambda: _multiplicity(arr, X))


def _multiplicity(arr: PeriodicArrangement, X: int) -> int:
    W = w_lattice(arr, X)
    if W is None:
        return 0
    return lattice_index(W.linear(), i_lattice(arr, X))


def arithmetic_matroid(arr: PeriodicArrangement) -> QuotientData:
    """Orbit data (E, central sets, rk, m); all subsets are central when centered."""
    return arr._cached("D", lambda: _arithmetic_matroid(arr))


def _arithmetic_matroid(arr: PeriodicArrangement) -> QuotientData:
    rank, mult = {}, {}
    for X in range(1 << arr.n):
        if any(not (Y in rank) for Y in (X & ~(1 << i) for i in bits(X))):
            continue
        m = multiplicity(arr, X)
        if m:
            rank[X], mult[X] = arr.rank(X), m
    return QuotientData(arr.labels, rank, mult)


@dataclass(frozen=True)
class Layer:
    support: int
    coset: tuple[int, ...]
    rank: int

    def label(self, arr: PeriodicArrangement) -> str:
        return f"{arr.fmt(self.support)} | ({','.join(map(str, self.coset))}) | {self.rank}"


def _point(arr: PeriodicArrangement, X: int, k: Sequence[int]):
    rows = [arr.columns[i] for i in bits(X)]
    rhs = [arr.offsets[i] + kk for i, kk in zip(bits(X), k)]
    if not rows:
        return (Fraction(0),) * arr.d
    return solve_rational(IntMatrix(rows, cols=arr.d), rhs)


def _in_span(arr: PeriodicArrangement, X: int, e: int) -> bool:
    return arr.rank(X | 1 << e) == arr.rank(X)


def layer_closure(arr: PeriodicArrangement, X, k: Sequence[int]) -> Layer:
    """The layer of H(X, k): its full support and canonical coset."""
    X = arr.mask(X)
    k = tuple(int(v) for v in k)
    return arr._cached(("closure", X, k), lambda: _layer_closure(arr, X, k))


def _layer_closure(arr: PeriodicArrangement, X: int, k: tuple[int, ...]) -> Layer:
    if len(k) != popcount(X):
        raise ValueError("shift vector has the wrong length")
    W = w_lattice(arr, X)
    if W is None or not W.contains(k):
        raise ValueError(f"{list(k)} is not in W({arr.fmt(X)})")
    x = _point(arr, X, k)
    F = 0
    vals = []
    for e in range(arr.n):
        if not _in_span(arr, X, e):
            continue
        v = sum(Fraction(a) * b for a, b in zip(arr.columns[e], x)) - arr.offsets[e]
        if v.denominator == 1:
            F |= 1 << e
            vals.append(int(v))
    coset = i_lattice(arr, F).reduce(vals)
    return Layer(F, coset, arr.rank(F))


def shift_representatives(arr: PeriodicArrangement, X) -> list[tuple[int, ...]]:
    """One k from each class of W(X)/I(X)."""
    X = arr.mask(X)
    W = w_lattice(arr, X)
    if W is None:
        return []
    off = W.offset or (0,) * popcount(X)
    reps = coset_representatives(W.linear(), i_lattice(arr, X))
    return [tuple(a + b for a, b in zip(r, off)) for r in reps]


def layers(arr: PeriodicArrangement) -> list[Layer]:
    """All layers, by increasing support size."""
    seen: dict[tuple[int, tuple], Layer] = {}
    for X in sorted(range(1 << arr.n), key=lambda m: (popcount(m), m)):
        for k in shift_representatives(arr, X):
            L = layer_closure(arr, X, k)
            if L.support == X:
                seen.setdefault((L.support, L.coset), L)
    return list(seen.values())


def layer_leq(arr: PeriodicArrangement, p: Layer, q: Layer) -> bool:
    """(F,[k]) <= (G,[l]) iff F ⊆ G and l restricted to F lies in k + I(F)."""
    if p.support & ~q.support:
        return False
    gpos = bits(q.support)
    restricted = [q.coset[gpos.index(i)] for i in bits(p.support)]
    I = i_lattice(arr, p.support)
    return I.reduce(restricted) == I.reduce(p.coset)


def layer_poset(arr: PeriodicArrangement) -> FinitePoset:
    return arr._cached("poset", lambda: _layer_poset(arr))


def _layer_poset(arr: PeriodicArrangement) -> FinitePoset:
    Ls = layers(arr)
    ids = [f"L{i}" for i in range(len(Ls))]
    leq = {(i, j) for i in range(len(Ls)) for j in range(len(Ls)) if i != j and layer_leq(arr, Ls[i], Ls[j])}
    covers = []
    for i, j in leq:
        if not any((i, k) in leq and (k, j) in leq for k in range(len(Ls))):
            covers.append((ids[i], ids[j]))
    covers.sort()
    return FinitePoset(ids, covers, rank={ids[i]: L.rank for i, L in enumerate(Ls)},
                       payload={ids[i]: L for i, L in enumerate(Ls)})


def quotient_with_layers(arr: PeriodicArrangement) -> QuotientData:
    """``arithmetic_matroid`` together with its layer poset and kappa."""
    D = arithmetic_matroid(arr)
    P = layer_poset(arr)
    by_key = {(L.support, L.coset): pid for pid, L in P.payload.items()}
    kappa = {}
    for X in D.rank:
        kappa[X] = [by_key[(L.support, L.coset)] for L in
                    (layer_closure(arr, X, k) for k in shift_representatives(arr, X))]
    support = {pid: L.support for pid, L in P.payload.items()}
    return QuotientData(D.ground, D.rank, D.mult, LayerData(P, support, kappa))


def eta(arr: PeriodicArrangement, T, layer: Layer) -> int:
    """Number of t in T whose hyperplane contains the layer."""
    T = arr.mask(T)
    return popcount(T & layer.support)


def eta_sides(arr: PeriodicArrangement, R, T) -> tuple[UniPoly, UniPoly]:
    """Both sides of Σ_L ρ(R∪L, R∪T) x^|L| = Σ_O x^η_T(O)."""
    R, T = arr.mask(R), arr.mask(T)
    if R & T:
        raise ValueError("R and T must be disjoint")
    D = arithmetic_matroid(arr)
    mol = molecule_split(D.triple, R, R | T) if (R | T) in D.rank else None
    if mol is None or mol.F:
        raise ValueError(f"({arr.fmt(R)}, {{}}, {arr.fmt(T)}) is not a molecule")
    lhs: dict[int, int] = {}
    for L in range(1 << arr.n):
        if L & ~T:
            continue
        lhs[popcount(L)] = lhs.get(popcount(L), 0) + rho(D, R | L, R | T)
    rhs: dict[int, int] = {}
    for k in shift_representatives(arr, R):
        h = eta(arr, T, layer_closure(arr, R, k))
        rhs[h] = rhs.get(h, 0) + 1
    return UniPoly(lhs), UniPoly(rhs)


def check_eta_identity(arr: PeriodicArrangement, R, T) -> bool:
    lhs, rhs = eta_sides(arr, R, T)
    return lhs == rhs


def theorem_cp_sides(arr: PeriodicArrangement) -> tuple[UniPoly, UniPoly]:
    from .arith import g_tutte

    loops = [arr.labels[i] for i in range(arr.n) if not any(arr.columns[i])]
    if loops:
        raise ValueError(f"arrangement has loops: {', '.join(loops)}")
    D = arithmetic_matroid(arr)
    r = D.full_rank
    chi = char_poly(layer_poset(arr), r)
    t = UniPoly.var()
    return chi, (-1) ** r * g_tutte(D).substitute(1 - t, UniPoly())


def check_theorem_cp(arr: PeriodicArrangement) -> bool:
    chi, rhs = theorem_cp_sides(arr)
    return chi == rhs
