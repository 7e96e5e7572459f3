"""Finite semimatroids and locally ranked triples.

Subsets of the ground set are int bitmasks over the ground order, so
``0b101`` is the set of the first and third labels.  A triple stores its
central family as the key set of ``rank``.

>>> t = LocallyRankedTriple.from_sets("abc", [((), 0), ("a", 1), ("b", 1), ("c", 1),
...     ("ab", 2), ("ac", 2), ("bc", 2), ("abc", 2)])
>>> print(tutte(t))
x^2 + x + y
>>> check_semimatroid(t)
[]
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .exact_lattice import IntMatrix, solve_rational
from .polys import BivariatePoly


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, the empty set included."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


@dataclass(frozen=True)
class Violation:
    axiom: str
    sets: tuple
    message: str

    def __str__(self) -> str:
        return f"({self.axiom}): {self.message}"


class LocallyRankedTriple:
    """Ground labels plus a rank function whose domain is the central family."""

    def __init__(self, ground: Sequence[str], rank: Mapping[int, int]):
        self.ground = tuple(str(g) for g in ground)
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("duplicate ground labels")
        self.index = {g: i for i, g in enumerate(self.ground)}
        self.rank = dict(rank)
        self._validate()

    @classmethod
    def from_sets(cls, ground: Sequence[str], entries: Iterable[tuple[Iterable[str], int]]):
        ground = tuple(ground)
        index = {g: i for i, g in enumerate(ground)}
        rank = {}
        for labels, r in entries:
            m = 0
            for x in labels:
                if x not in index:
                    raise ValueError(f"unknown element {x!r}")
                m |= 1 << index[x]
            if m in rank:
                raise ValueError(f"central set listed twice: {sorted(labels)}")
            rank[m] = int(r)
        return cls(ground, rank)

    def _validate(self) -> None:
        if self.rank.get(0) != 0:
            raise ValueError("the empty set must be central with rank 0")
        full = (1 << self.n) - 1
        for X in self.rank:
            if X & ~full:
                raise ValueError("central set outside the ground set")
            for i in bits(X):
                if X & ~(1 << i) not in self.rank:
                    raise ValueError(
                        f"central family is not a complex: {self.fmt(X)} is central "
                        f"but {self.fmt(X & ~(1 << i))} is not"
                    )
        for i in range(self.n):
            if 1 << i not in self.rank:
                raise ValueError(f"singleton {{{self.ground[i]}}} must be central")

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def central(self) -> list[int]:
        return sorted(self.rank, key=lambda m: (popcount(m), m))

    def is_central(self, X: int) -> bool:
        return X in self.rank

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for x in labels:
            if x not in self.index:
                raise ValueError(f"unknown element {x!r}")
            m |= 1 << self.index[x]
        return m

    def labels(self, X: int) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in bits(X))

    def fmt(self, X: int) -> str:
        return "{" + ",".join(self.labels(X)) + "}"

    @property
    def full_rank(self) -> int:
        return max(self.rank.values())

    @property
    def is_matroid(self) -> bool:
        return len(self.rank) == 1 << self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, LocallyRankedTriple) and self.ground == other.ground and self.rank == other.rank

    def __repr__(self) -> str:
        return f"LocallyRankedTriple({list(self.ground)}, {len(self.rank)} central sets)"

    def relabel(self, keep: Sequence[int]) -> "LocallyRankedTriple":
        """Restrict to central sets inside ``keep`` (ground indices, in order)."""
        pos = {i: k for k, i in enumerate(keep)}
        keepmask = sum(1 << i for i in keep)
        rank = {}
        for X, r in self.rank.items():
            if X & ~keepmask == 0:
                rank[sum(1 << pos[i] for i in bits(X))] = r
        return LocallyRankedTriple([self.ground[i] for i in keep], rank)


def _unions_of_pairs(t: LocallyRankedTriple):
    cen = t.central
    for X in cen:
        for Y in cen:
            yield X, Y


def check_locally_ranked(t: LocallyRankedTriple) -> list[Violation]:
    """Every violated instance of (R1), (R2), (R3)."""
    out = []
    rk = t.rank
    for X in t.central:
        r = rk[X]
        if not 0 <= r <= popcount(X):
            out.append(Violation("R1", (t.labels(X),), f"rk({t.fmt(X)})={r} outside [0,{popcount(X)}]"))
        for i in bits(X):
            Y = X & ~(1 << i)
            if rk[Y] > r:
                out.append(Violation("R2", (t.labels(Y), t.labels(X)),
                                     f"rk({t.fmt(Y)})={rk[Y]} > rk({t.fmt(X)})={r}"))
        # local submodularity inside 2^X is equivalent to the global form
        xs = bits(X)
        for a in range(len(xs)):
            for b in range(a + 1, len(xs)):
                i, j = xs[a], xs[b]
                Z = X & ~(1 << i) & ~(1 << j)
                Zi, Zj = Z | 1 << i, Z | 1 << j
                if rk[Zi] + rk[Zj] < r + rk[Z]:
                    out.append(Violation(
                        "R3", (t.labels(Zi), t.labels(Zj)),
                        f"rk({t.fmt(Zi)})+rk({t.fmt(Zj)}) < rk({t.fmt(X)})+rk({t.fmt(Z)})"))
    return out


def check_semimatroid(t: LocallyRankedTriple) -> list[Violation]:
    """Violations of (CR1), (CR2) and of the derived forms (CR1'), (CR2')."""
    out = []
    rk = t.rank
    for X, Y in _unions_of_pairs(t):
        U = X | Y
        if rk[X] == rk[X & Y]:
            if U not in rk:
                out.append(Violation("CR1", (t.labels(X), t.labels(Y)),
                                     f"rk({t.fmt(X)})=rk({t.fmt(X & Y)}) but {t.fmt(U)} is not central"))
            elif rk[U] != rk[Y]:
                out.append(Violation("CR1'", (t.labels(X), t.labels(Y)),
                                     f"rk({t.fmt(U)})={rk[U]} differs from rk({t.fmt(Y)})={rk[Y]}"))
        if rk[X] < rk[Y]:
            cand = [X | 1 << y for y in bits(Y & ~X)]
            if not any(Z in rk for Z in cand):
                out.append(Violation("CR2", (t.labels(X), t.labels(Y)),
                                     f"no y in {t.fmt(Y & ~X)} makes {t.fmt(X)}+y central"))
            elif not any(Z in rk and rk[Z] == rk[X] + 1 for Z in cand):
                out.append(Violation("CR2'", (t.labels(X), t.labels(Y)),
                                     f"no y in {t.fmt(Y & ~X)} raises the rank of {t.fmt(X)}"))
    return out


def _as_mask(t: LocallyRankedTriple, X) -> int:
    return X if isinstance(X, int) else t.mask(X)


def closure(t: LocallyRankedTriple, X) -> int:
    X = _as_mask(t, X)
    if X not in t.rank:
        raise ValueError(f"{t.fmt(X)} is not central")
    r = t.rank[X]
    cl = X
    for i in range(t.n):
        Y = X | 1 << i
        if Y in t.rank and t.rank[Y] == r:
            cl |= 1 << i
    return cl


def flats(t: LocallyRankedTriple) -> list[int]:
    return [X for X in t.central if closure(t, X) == X]


def flats_poset(t: LocallyRankedTriple):
    """Flats ordered by inclusion, as a ``FinitePoset`` whose payloads are masks."""
    from .geomsl import FinitePoset

    fl = flats(t)
    ids = {F: t.fmt(F) for F in fl}
    covers = []
    for F in fl:
        above = [G for G in fl if G != F and G & F == F]
        for G in above:
            if not any(H != G and H & F == F and G & H == H for H in above):
                covers.append((ids[F], ids[G]))
    return FinitePoset(
        [ids[F] for F in fl], covers,
        rank={ids[F]: t.rank[F] for F in fl},
        payload={ids[F]: F for F in fl},
    )


def delete(t: LocallyRankedTriple, T) -> LocallyRankedTriple:
    T = _as_mask(t, T)
    return t.relabel([i for i in range(t.n) if not T >> i & 1])


def contract(t: LocallyRankedTriple, X) -> LocallyRankedTriple:
    X = _as_mask(t, X)
    if X not in t.rank:
        raise ValueError(f"{t.fmt(X)} is not central")
    keep = [i for i in range(t.n) if not X >> i & 1 and X | 1 << i in t.rank]
    pos = {i: k for k, i in enumerate(keep)}
    keepmask = sum(1 << i for i in keep)
    rX = t.rank[X]
    rank = {}
    for Y, r in t.rank.items():
        if Y & X == X and (Y & ~X) & ~keepmask == 0:
            rank[sum(1 << pos[i] for i in bits(Y & ~X))] = r - rX
    return LocallyRankedTriple([t.ground[i] for i in keep], rank)


def tutte(t: LocallyRankedTriple) -> BivariatePoly:
    r = t.full_rank
    acc: dict[tuple[int, int], int] = {}
    for X, rX in t.rank.items():
        key = (r - rX, popcount(X) - rX)
        acc[key] = acc.get(key, 0) + 1
    out = BivariatePoly()
    for (a, b), c in acc.items():
        out = out + BivariatePoly.shifted_monomial(a, b, c)
    return out


def is_independent(t: LocallyRankedTriple, X: int) -> bool:
    return X in t.rank and t.rank[X] == popcount(X)


def bases(t: LocallyRankedTriple) -> list[int]:
    r = t.full_rank
    return [X for X in t.central if popcount(X) == r and t.rank[X] == r]


def _order_positions(t: LocallyRankedTriple, order) -> list[int]:
    """Position of each ground index in the activity order."""
    if order is None:
        return list(range(t.n))
    order = list(order)
    if sorted(order) != sorted(t.ground):
        raise ValueError("order must list every ground element exactly once")
    return [order.index(g) for g in t.ground]


def activities(t: LocallyRankedTriple, B, order=None) -> tuple[int, int]:
    """Internally and externally active elements of the basis ``B``.

    ``b`` in ``B`` is internal when no smaller ``e`` outside ``B`` makes
    ``B - b + e`` a basis.  ``e`` outside ``B`` is external when ``B + e`` is
    central and no smaller ``b`` in ``B`` makes ``B - b + e`` a basis.
    """
    B = _as_mask(t, B)
    r = t.full_rank
    if not (popcount(B) == r and t.rank.get(B) == r):
        raise ValueError(f"{t.fmt(B)} is not a basis")
    pos = _order_positions(t, order)

    def is_basis(X):
        return t.rank.get(X) == r

    internal = 0
    for b in bits(B):
        base = B & ~(1 << b)
        if not any(is_basis(base | 1 << e) for e in range(t.n) if not B >> e & 1 and pos[e] < pos[b]):
            internal |= 1 << b
    external = 0
    for e in range(t.n):
        if B >> e & 1 or (B | 1 << e) not in t.rank:
            continue
        if not any(is_basis(B & ~(1 << b) | 1 << e) for b in bits(B) if pos[b] < pos[e]):
            external |= 1 << e
    return internal, external


def crapo_sum(t: LocallyRankedTriple, order=None) -> BivariatePoly:
    """Σ_B x^|I(B)| y^|E(B)|."""
    acc: dict[tuple[int, int], int] = {}
    for B in bases(t):
        i, e = activities(t, B, order)
        key = (popcount(i), popcount(e))
        acc[key] = acc.get(key, 0) + 1
    return BivariatePoly(acc)


@dataclass(frozen=True)
class Molecule:
    R: int
    F: int
    T: int

    @property
    def top(self) -> int:
        return self.R | self.F | self.T


def molecule_split(t: LocallyRankedTriple, R: int, M: int) -> Molecule | None:
    """The molecule ``(R, F, T)`` with ``R ∪ F ∪ T = M``, if there is one.

    The split is forced: ``F`` holds the elements raising the rank of ``R``.
    """
    rk = t.rank
    if R & ~M or M not in rk:
        return None
    rR = rk[R]
    F = T = 0
    for i in bits(M & ~R):
        if rk[R | 1 << i] == rR + 1:
            F |= 1 << i
        else:
            T |= 1 << i
    for A in submasks(M & ~R):
        if rk[R | A] != rR + popcount(A & F):
            return None
    return Molecule(R, F, T)


def is_molecule(t: LocallyRankedTriple, R: int, F: int, T: int) -> bool:
    if R & F or R & T or F & T:
        return False
    m = molecule_split(t, R, R | F | T)
    return m is not None and m.F == F and m.T == T


def molecules(t: LocallyRankedTriple) -> Iterator[Molecule]:
    for M in t.central:
        for R in submasks(M):
            m = molecule_split(t, R, M)
            if m is not None:
                yield m


def crapo_intervals(t: LocallyRankedTriple, order=None) -> list[tuple[int, int, int, int]]:
    """``(B, R_B, I(B), E(B))`` for every basis."""
    out = []
    for B in bases(t):
        i, e = activities(t, B, order)
        out.append((B, B & ~i, i, e))
    return out


def crapo_partition_check(t: LocallyRankedTriple, order=None) -> bool:
    """Every central set lies in exactly one ``[R_B, B ∪ E(B)]``, each a molecule."""
    ivs = crapo_intervals(t, order)
    for B, R, i, e in ivs:
        if not is_molecule(t, R, i, e):
            return False
    count = {X: 0 for X in t.rank}
    for B, R, i, e in ivs:
        for A in submasks(i | e):
            X = R | A
            if X not in count:
                return False
            count[X] += 1
    return all(c == 1 for c in count.values())


def is_loop(t: LocallyRankedTriple, i: int) -> bool:
    return t.rank[1 << i] == 0


def is_isthmus(t: LocallyRankedTriple, i: int) -> bool:
    e = 1 << i
    for X, r in t.rank.items():
        if X & e:
            continue
        if t.rank.get(X | e) != r + 1:
            return False
    return True


def is_simple(t: LocallyRankedTriple) -> bool:
    if any(is_loop(t, i) for i in range(t.n)):
        return False
    return not any(
        popcount(X) == 2 and r == 1 for X, r in t.rank.items()
    )


def simplification(t: LocallyRankedTriple) -> LocallyRankedTriple:
    """Drop loops and keep the first element of each parallel class."""
    keep: list[int] = []
    for i in range(t.n):
        if is_loop(t, i):
            continue
        if any(t.rank.get(1 << i | 1 << j) == 1 for j in keep):
            continue
        keep.append(i)
    return t.relabel(keep)


def affine_semimatroid(normals: Sequence[Sequence[int]], offsets: Sequence | None = None,
                       labels: Sequence[str] | None = None) -> LocallyRankedTriple:
    """Semimatroid of the affine hyperplanes ``<normal_i, x> = offset_i``.

    A set is central when its hyperplanes meet; its rank is the rank of the
    normals.
    """
    n = len(normals)
    offsets = [Fraction(0)] * n if offsets is None else [Fraction(o) for o in offsets]
    labels = [str(i + 1) for i in range(n)] if labels is None else list(labels)
    rank = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for X in frontier:
            top = max(bits(X), default=-1)
            for i in range(top + 1, n):
                Y = X | 1 << i
                idx = bits(Y)
                rows = [normals[j] for j in idx]
                if solve_rational(IntMatrix(rows), [offsets[j] for j in idx]) is not None:
                    rank[Y] = IntMatrix(rows).rank()
                    nxt.append(Y)
        frontier = nxt
    return LocallyRankedTriple(labels, rank)


def matroid_from_vectors(vectors: Sequence[Sequence[int]], labels=None) -> LocallyRankedTriple:
    return affine_semimatroid(vectors, None, labels)


def uniform_matroid(r: int, n: int, labels=None) -> LocallyRankedTriple:
    labels = [chr(ord("a") + i) for i in range(n)] if labels is None else labels
    return LocallyRankedTriple(labels, {X: min(r, popcount(X)) for X in range(1 << n)})
