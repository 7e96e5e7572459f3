"""Finite posets, Möbius functions and geometric (semi)lattices.

Also the passage between simple semimatroids and geometric semilattices:
a semimatroid goes to its poset of flats, and a semilattice goes to the
triple on its atoms whose central sets are the atom sets with a join.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Iterable, Mapping, Sequence

from .polys import UniPoly
from .semimatroid import LocallyRankedTriple, Violation, flats_poset, is_simple, popcount


class FinitePoset:
    """A finite poset given by its cover relation.

    ``rank`` may be supplied; otherwise it is computed when every maximal
    chain from the bottom has the same length.  ``payload`` attaches an
    arbitrary value to each element (flats, layers, ...).
    """

    def __init__(self, elements: Sequence[str], covers: Iterable[tuple[str, str]],
                 rank: Mapping[str, int] | None = None, payload: Mapping[str, Any] | None = None):
        self.elements = [str(e) for e in elements]
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate poset elements")
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        self.up: list[list[int]] = [[] for _ in range(n)]
        self.down: list[list[int]] = [[] for _ in range(n)]
        self.covers = []
        for a, b in covers:
            if a not in self.index or b not in self.index:
                raise ValueError(f"cover ({a}, {b}) names an unknown element")
            i, j = self.index[a], self.index[b]
            if i == j:
                raise ValueError(f"element {a} covers itself")
            if j not in self.up[i]:
                self.up[i].append(j)
                self.down[j].append(i)
                self.covers.append((a, b))
        self._topo = self._toposort()
        # below[i]: bitmask of elements <= i
        self.below = [0] * n
        for i in self._topo:
            m = 1 << i
            for j in self.down[i]:
                m |= self.below[j]
            self.below[i] = m
        self.above = [0] * n
        for i in range(n):
            for j in range(n):
                if self.below[j] >> i & 1:
                    self.above[i] |= 1 << j
        self.payload = dict(payload or {})
        if rank is not None:
            self.rank = {str(k): int(v) for k, v in rank.items()}
            if set(self.rank) != set(self.elements):
                raise ValueError("rank must be given for every element")
            for a, b in self.covers:
                if self.rank[b] != self.rank[a] + 1:
                    raise ValueError(f"rank does not increase by one along the cover ({a}, {b})")
        else:
            self.rank = self._compute_rank()

    def _toposort(self) -> list[int]:
        n = len(self.elements)
        indeg = [len(self.down[i]) for i in range(n)]
        queue = [i for i in range(n) if indeg[i] == 0]
        out = []
        while queue:
            i = queue.pop()
            out.append(i)
            for j in self.up[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        if len(out) != n:
            raise ValueError("cover relation has a cycle")
        return out

    def _compute_rank(self) -> dict[str, int] | None:
        if self.bottom is None:
            return None
        r = {}
        for i in self._topo:
            vals = {r[j] + 1 for j in self.down[i]} or {0}
            if len(vals) != 1:
                return None
            r[i] = vals.pop()
        return {self.elements[i]: v for i, v in r.items()}

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_ranked(self) -> bool:
        return self.rank is not None

    def _ids(self, mask: int) -> list[str]:
        return [self.elements[i] for i in range(len(self.elements)) if mask >> i & 1]

    def leq(self, a: str, b: str) -> bool:
        return bool(self.below[self.index[b]] >> self.index[a] & 1)

    def lower_set(self, a: str) -> list[str]:
        return self._ids(self.below[self.index[a]])

    def upper_set(self, a: str) -> list[str]:
        return self._ids(self.above[self.index[a]])

    @property
    def minimal(self) -> list[str]:
        return [e for i, e in enumerate(self.elements) if not self.down[i]]

    @property
    def maximal(self) -> list[str]:
        return [e for i, e in enumerate(self.elements) if not self.up[i]]

    @property
    def bottom(self) -> str | None:
        m = self.minimal
        return m[0] if len(m) == 1 else None

    @property
    def top(self) -> str | None:
        m = self.maximal
        return m[0] if len(m) == 1 else None

    @property
    def atoms(self) -> list[str]:
        b = self.bottom
        if b is None:
            return []
        return [self.elements[j] for j in self.up[self.index[b]]]

    def _lub(self, ubs: int) -> str | None:
        for i in range(len(self.elements)):
            if ubs >> i & 1 and self.above[i] & ubs == ubs:
                return self.elements[i]
        return None

    def _glb(self, lbs: int) -> str | None:
        for i in range(len(self.elements)):
            if lbs >> i & 1 and self.below[i] & lbs == lbs:
                return self.elements[i]
        return None

    def meet(self, a: str, b: str) -> str | None:
        return self._glb(self.below[self.index[a]] & self.below[self.index[b]])

    def join(self, a: str, b: str) -> str | None:
        return self._lub(self.above[self.index[a]] & self.above[self.index[b]])

    def join_set(self, xs: Iterable[str]) -> str | None:
        ubs = (1 << len(self.elements)) - 1
        for x in xs:
            ubs &= self.above[self.index[x]]
        return self._lub(ubs)

    def interval(self, a: str, b: str) -> "FinitePoset":
        if not self.leq(a, b):
            raise ValueError(f"{a} is not below {b}")
        keep = self.above[self.index[a]] & self.below[self.index[b]]
        ids = self._ids(keep)
        covers = [(x, y) for x, y in self.covers if keep >> self.index[x] & 1 and keep >> self.index[y] & 1]
        rank = None
        if self.rank is not None:
            rank = {e: self.rank[e] - self.rank[a] for e in ids}
        return FinitePoset(ids, covers, rank=rank, payload={e: self.payload[e] for e in ids if e in self.payload})

    def to_dot(self, label: Callable[[str], str] | None = None, name: str = "P") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for e in self.elements:
            attrs = [f'label="{(label(e) if label else e)}"']
            if self.rank is not None:
                attrs.append(f"rank={self.rank[e]}")
            lines.append(f'  "{e}" [{", ".join(attrs)}];')
        for a, b in self.covers:
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "elements": [{"id": e, "rank": self.rank[e]} if self.rank else {"id": e} for e in self.elements],
            "covers": [list(c) for c in self.covers],
        }

    def __repr__(self) -> str:
        return f"FinitePoset({len(self.elements)} elements, {len(self.covers)} covers)"


def mobius(P: FinitePoset, a: str, b: str) -> int:
    if not P.leq(a, b):
        raise ValueError(f"{a} and {b} are not comparable as a <= b")
    return mobius_from(P, a)[b]


def mobius_from(P: FinitePoset, a: str) -> dict[str, int]:
    """μ(a, p) for every p >= a."""
    ia = P.index[a]
    mu: dict[int, int] = {}
    for i in P._topo:
        if not P.above[ia] >> i & 1:
            continue
        if i == ia:
            mu[i] = 1
            continue
        interval = P.below[i] & P.above[ia] & ~(1 << i)
        mu[i] = -sum(mu[j] for j in mu if interval >> j & 1)
    return {P.elements[i]: v for i, v in mu.items()}


def char_poly(P: FinitePoset, top_rank: int | None = None) -> UniPoly:
    """Σ_p μ(0̂, p) t^(r - rk p)."""
    b = P.bottom
    if b is None:
        raise ValueError("characteristic polynomial needs a unique bottom element")
    if P.rank is None:
        raise ValueError("characteristic polynomial needs a ranked poset")
    r = max(P.rank.values()) if top_rank is None else top_rank
    out: dict[int, int] = {}
    for p, m in mobius_from(P, b).items():
        e = r - P.rank[p]
        out[e] = out.get(e, 0) + m
    return UniPoly(out)


def _lattice_violations(P: FinitePoset) -> list[Violation]:
    out = []
    if P.bottom is None:
        out.append(Violation("lattice", (), "no unique bottom element"))
    if P.top is None:
        out.append(Violation("lattice", (), "no unique top element"))
    for a, b in itertools.combinations(P.elements, 2):
        if P.meet(a, b) is None:
            out.append(Violation("lattice", (a, b), f"{a} and {b} have no meet"))
        if P.join(a, b) is None:
            out.append(Violation("lattice", (a, b), f"{a} and {b} have no join"))
    return out


def check_geometric_lattice(P: FinitePoset) -> list[Violation]:
    """Lattice, ranked, atomic and semimodular (as the inequality)."""
    out = _lattice_violations(P)
    if out:
        return out
    if P.rank is None:
        return [Violation("ranked", (), "poset is not ranked")]
    atoms = P.atoms
    for x in P.elements:
        below = [a for a in atoms if P.leq(a, x)]
        if P.join_set(below) != x:
            out.append(Violation("atomic", (x,), f"{x} is not the join of the atoms below it"))
    rk = P.rank
    for a, b in itertools.combinations(P.elements, 2):
        j, m = P.join(a, b), P.meet(a, b)
        if rk[j] + rk[m] > rk[a] + rk[b]:
            out.append(Violation("semimodular", (a, b),
                                 f"rk({j})+rk({m}) > rk({a})+rk({b})"))
    return out


def independent_atom_sets(P: FinitePoset) -> list[frozenset]:
    atoms = P.atoms
    rmax = max(P.rank.values())
    out = []
    for k in range(rmax + 1):
        for A in itertools.combinations(atoms, k):
            j = P.join_set(A)
            if j is not None and P.rank[j] == k:
                out.append(frozenset(A))
    return out


def check_geometric_semilattice(P: FinitePoset) -> list[Violation]:
    """Meet-semilattice, ranked, (G3), (G4); (G1)+(G2) cross-checked."""
    out = []
    if P.bottom is None:
        return [Violation("semilattice", (), "no unique bottom element")]
    for a, b in itertools.combinations(P.elements, 2):
        if P.meet(a, b) is None:
            out.append(Violation("semilattice", (a, b), f"{a} and {b} have no meet"))
    if out:
        return out
    if P.rank is None:
        return [Violation("ranked", (), "poset is not ranked")]
    g34 = []
    for x in P.maximal:
        for v in check_geometric_lattice(P.interval(P.bottom, x)):
            g34.append(Violation("G3", (x,) + v.sets, f"interval below {x}: {v}"))
    indep = independent_atom_sets(P)
    for A in indep:
        rA = len(A)
        for x in P.elements:
            if P.rank[x] >= rA:
                continue
            if not any(not P.leq(a, x) and P.join(x, a) is not None for a in A):
                g34.append(Violation("G4", (tuple(sorted(A)), x),
                                     f"no atom of {{{','.join(sorted(A))}}} extends {x}"))
    g12 = []
    atoms = P.atoms
    for x in P.elements:
        if P.join_set([a for a in atoms if P.leq(a, x)]) != x:
            g12.append(Violation("G1", (x,), f"{x} is not a join of atoms"))
    indep_set = set(indep)
    for A in indep:
        for a in A:
            if A - {a} not in indep_set:
                g12.append(Violation("G2", (tuple(sorted(A)),), "independent atom sets are not hereditary"))
    for I, J in itertools.product(indep, repeat=2):
        if len(I) < len(J) and not any(I | {j} in indep_set for j in J - I):
            g12.append(Violation("G2", (tuple(sorted(I)), tuple(sorted(J))), "augmentation fails"))
    out.extend(g34)
    if bool(g12) != bool(g34):
        out.extend(g12)
        out.append(Violation("G1G2", (), "(G1)+(G2) and (G3)+(G4) disagree"))
    return out


# -- cryptomorphism -------------------------------------------------------------


def flats_to_semilattice(t: LocallyRankedTriple) -> FinitePoset:
    return flats_poset(t)


def semilattice_to_semimatroid(P: FinitePoset) -> LocallyRankedTriple:
    """Atoms as ground set; a set is central when its join exists."""
    bad = check_geometric_semilattice(P)
    if bad:
        raise ValueError(f"not a geometric semilattice: {bad[0]}")
    atoms = P.atoms
    rank = {}
    for X in range(1 << len(atoms)):
        j = P.join_set(atoms[i] for i in range(len(atoms)) if X >> i & 1)
        if j is not None:
            rank[X] = P.rank[j]
    return LocallyRankedTriple(atoms, rank)


def is_semimatroid_isomorphism(t1: LocallyRankedTriple, t2: LocallyRankedTriple, phi: Mapping[str, str]) -> bool:
    if sorted(phi) != sorted(t1.ground) or sorted(phi.values()) != sorted(t2.ground):
        return False
    if len(t1.rank) != len(t2.rank):
        return False
    for X, r in t1.rank.items():
        Y = t2.mask(phi[x] for x in t1.labels(X))
        if t2.rank.get(Y) != r:
            return False
    return True


def is_poset_isomorphism(P: FinitePoset, Q: FinitePoset, phi: Mapping[str, str]) -> bool:
    if sorted(phi) != sorted(P.elements) or sorted(phi.values()) != sorted(Q.elements):
        return False
    if P.rank is not None and Q.rank is not None:
        if any(P.rank[e] != Q.rank[phi[e]] for e in P.elements):
            return False
    return {(phi[a], phi[b]) for a, b in P.covers} == set(Q.covers)


def poset_isomorphism(P: FinitePoset, Q: FinitePoset) -> dict[str, str] | None:
    """Backtracking search, pruned by (rank, degrees, down-set size)."""
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return None

    def sig(R, i):
        return (R.rank[R.elements[i]] if R.rank else None, len(R.up[i]), len(R.down[i]),
                popcount(R.below[i]), popcount(R.above[i]))

    sp = [sig(P, i) for i in range(len(P))]
    sq = [sig(Q, i) for i in range(len(Q))]
    if sorted(sp, key=repr) != sorted(sq, key=repr):
        return None
    order = P._topo
    assign: dict[int, int] = {}
    used: set[int] = set()

    def ok(i, j):
        for k, l in assign.items():
            if (k in P.down[i]) != (l in Q.down[j]) or (k in P.up[i]) != (l in Q.up[j]):
                return False
        return True

    def search(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for j in range(len(Q)):
            if j in used or sq[j] != sp[i] or not ok(i, j):
                continue
            assign[i] = j
            used.add(j)
            if search(pos + 1):
                return True
            del assign[i]
            used.discard(j)
        return False

    if not search(0):
        return None
    phi = {P.elements[i]: Q.elements[j] for i, j in assign.items()}
    return phi if is_poset_isomorphism(P, Q, phi) else None


def semimatroid_isomorphism(t1: LocallyRankedTriple, t2: LocallyRankedTriple) -> dict[str, str] | None:
    if t1.n != t2.n or len(t1.rank) != len(t2.rank):
        return None

    def sig(t, i):
        e = 1 << i
        return (t.rank[e], sum(1 for X in t.rank if X & e),
                sorted(r for X, r in t.rank.items() if X & e))

    s1 = [sig(t1, i) for i in range(t1.n)]
    s2 = [sig(t2, i) for i in range(t2.n)]
    assign: list[int] = []

    def partial_ok():
        k = len(assign)
        sub = (1 << k) - 1
        for X, r in t1.rank.items():
            if X & ~sub:
                continue
            Y = sum(1 << assign[i] for i in range(k) if X >> i & 1)
            if t2.rank.get(Y) != r:
                return False
        return True

    def search():
        if len(assign) == t1.n:
            return True
        i = len(assign)
        for j in range(t2.n):
            if j in assign or s1[i] != s2[j]:
                continue
            assign.append(j)
            if partial_ok() and search():
                return True
            assign.pop()
        return False

    if not search():
        return None
    phi = {t1.ground[i]: t2.ground[j] for i, j in enumerate(assign)}
    return phi if is_semimatroid_isomorphism(t1, t2, phi) else None


def roundtrip_semimatroid(t: LocallyRankedTriple) -> dict[str, str] | None:
    """Semimatroid -> flats -> semimatroid, with the isomorphism s ↦ cl({s})."""
    if not is_simple(t):
        raise ValueError("the round trip needs a simple semimatroid")
    t2 = semilattice_to_semimatroid(flats_to_semilattice(t))
    phi = {s: t.fmt(1 << t.index[s]) for s in t.ground}
    return phi if is_semimatroid_isomorphism(t, t2, phi) else None


def roundtrip_semilattice(P: FinitePoset) -> dict[str, str] | None:
    """Semilattice -> semimatroid -> flats, with x ↦ {atoms below x}."""
    t = semilattice_to_semimatroid(P)
    Q = flats_to_semilattice(t)
    phi = {x: t.fmt(t.mask(a for a in P.atoms if P.leq(a, x))) for x in P.elements}
    return phi if is_poset_isomorphism(P, Q, phi) else None


def cryptomorphism_roundtrip(x) -> bool:
    if isinstance(x, LocallyRankedTriple):
        return roundtrip_semimatroid(x) is not None
    if isinstance(x, FinitePoset):
        return roundtrip_semilattice(x) is not None
    raise TypeError("expected a semimatroid or a poset")
