"""Matroids over Z.

A matroid over Z on [n] assigns a finitely generated abelian group M(A) to
each subset and a map M(A) -> M(A ∪ e) to each extension, such that every
map is onto with cyclic kernel and every square over (A, e1, e2) is a
pushout.  ``from_matrix`` builds the realizable one, M(I) = Z([n] \\ I).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .arith import QuotientData
from .exact_lattice import FgAbGroup, GroupMap, IntMatrix, Presentation, pushout
from .periodic import PeriodicArrangement, arithmetic_matroid
from .semimatroid import Violation, bits, popcount


class ZMatroid:
    def __init__(self, ground: Sequence[str], module_of: dict[int, Presentation],
                 canonical_maps: dict[tuple[int, int], GroupMap]):
        self.ground = tuple(ground)
        self.module_of = module_of
        self.canonical_maps = canonical_maps
        n = len(self.ground)
        for A in range(1 << n):
            if A not in module_of:
                raise ValueError(f"no module for {self.fmt(A)}")
            for e in range(n):
                if not A >> e & 1 and (A, e) not in canonical_maps:
                    raise ValueError(f"no map from {self.fmt(A)} to {self.fmt(A | 1 << e)}")

    @property
    def n(self) -> int:
        return len(self.ground)

    def fmt(self, A: int) -> str:
        return "{" + ",".join(self.ground[i] for i in bits(A)) + "}"

    def group(self, A: int) -> FgAbGroup:
        return self.module_of[A].group


def from_matrix(A) -> ZMatroid:
    """M(I) = Z^{I^c} / A[I^c]^T Z^d with coordinate projections as maps."""
    A = A if isinstance(A, IntMatrix) else IntMatrix(A)
    n = A.cols
    full = (1 << n) - 1
    modules = {}
    for I in range(1 << n):
        comp = bits(full & ~I)
        rel = IntMatrix([A.column(j) for j in comp], cols=A.rows)
        modules[I] = Presentation(len(comp), rel)
    maps = {}
    for I in range(1 << n):
        comp = bits(full & ~I)
        for e in comp:
            keep = [j for j in comp if j != e]
            P = IntMatrix([[int(j == k) for j in comp] for k in keep], cols=len(comp))
            maps[(I, e)] = GroupMap(modules[I], modules[I | 1 << e], P)
    return ZMatroid([str(i + 1) for i in range(n)], modules, maps)


def _is_pushout(f1: GroupMap, f2: GroupMap, g1: GroupMap, g2: GroupMap) -> bool:
    """Is M(A) -f1-> B -g1-> D, M(A) -f2-> C -g2-> D a pushout square?"""
    if not f1.then(g1).agrees_with(f2.then(g2)):
        return False
    Dp, _, _ = pushout(f1, f2)
    u = GroupMap(Dp, g1.target, g1.matrix.hstack(g2.matrix))
    return u.is_isomorphism


def check_zmatroid(M: ZMatroid) -> list[Violation]:
    out = []
    n = M.n
    for A in range(1 << n):
        for e in range(n):
            if A >> e & 1:
                continue
            f = M.canonical_maps[(A, e)]
            where = (M.fmt(A), M.fmt(A | 1 << e))
            if not f.is_surjective:
                out.append(Violation("surjective", where, f"map {where[0]} -> {where[1]} is not onto"))
            elif not f.kernel.is_cyclic:
                out.append(Violation("cyclic", where, f"kernel of {where[0]} -> {where[1]} is {f.kernel}"))
        for e1, e2 in itertools.combinations([e for e in range(n) if not A >> e & 1], 2):
            f1, f2 = M.canonical_maps[(A, e1)], M.canonical_maps[(A, e2)]
            g1 = M.canonical_maps[(A | 1 << e1, e2)]
            g2 = M.canonical_maps[(A | 1 << e2, e1)]
            if not _is_pushout(f1, f2, g1, g2):
                out.append(Violation("pushout", (M.fmt(A), M.ground[e1], M.ground[e2]),
                                     f"square over {M.fmt(A)} with {M.ground[e1]}, {M.ground[e2]} is not a pushout"))
    return out


def underlying_arithmetic(M: ZMatroid) -> QuotientData:
    """rk(A) = free rank of M(∅) minus free rank of M(A); m(A) = |torsion of M(A)|."""
    top = M.group(0).free_rank
    rank = {A: top - M.group(A).free_rank for A in range(1 << M.n)}
    mult = {A: M.group(A).torsion_order for A in range(1 << M.n)}
    return QuotientData(M.ground, rank, mult)


def duality_violations(A) -> list[str]:
    A = A if isinstance(A, IntMatrix) else IntMatrix(A)
    n = A.cols
    full = (1 << n) - 1
    X = arithmetic_matroid(PeriodicArrangement.from_matrix(A))
    Z = underlying_arithmetic(from_matrix(A))
    out = []
    for I in range(1 << n):
        Ic = full & ~I
        if Z.mult[I] != X.mult[Ic]:
            out.append(f"m_Z({Z.fmt(I)})={Z.mult[I]} but m_X({X.fmt(Ic)})={X.mult[Ic]}")
        if X.rank[Ic] != popcount(Ic) + Z.rank[I] - Z.rank[full]:
            out.append(f"rank duality fails at {Z.fmt(I)}")
    return out


def check_duality(A) -> bool:
    return not duality_violations(A)


# -- square completion ----------------------------------------------------------

SQUARE_MAPS = {"top": ("A", "B"), "left": ("A", "C"), "right": ("B", "D"), "bottom": ("C", "D")}


class NotEnumerable(ValueError):
    pass


@dataclass
class SquareDiagram:
    """Corners A (top left), B (top right), C (bottom left), D (bottom right).

    Maps are integer matrices on the standard generators, or ``None`` when
    unknown.
    """

    groups: dict[str, FgAbGroup]
    maps: dict[str, IntMatrix | None]
    presentations: dict[str, Presentation] = field(init=False)

    def __post_init__(self):
        if set(self.groups) != {"A", "B", "C", "D"}:
            raise ValueError("square needs corners A, B, C, D")
        self.presentations = {k: Presentation.standard(g) for k, g in self.groups.items()}
        for name in SQUARE_MAPS:
            if name not in self.maps:
                raise ValueError(f"square is missing the {name} map")
            if self.maps[name] is not None:
                self.map(name, self.maps[name])

    def map(self, name: str, matrix: IntMatrix) -> GroupMap:
        s, t = SQUARE_MAPS[name]
        return GroupMap(self.presentations[s], self.presentations[t], matrix)


@dataclass
class Completion:
    maps: dict[str, IntMatrix]
    commutes: bool
    is_pushout: bool


@dataclass
class CompletionReport:
    completions: list[Completion]

    @property
    def candidates(self) -> int:
        return len(self.completions)

    @property
    def satisfiable(self) -> bool:
        return any(c.is_pushout for c in self.completions)


def _elements(G: FgAbGroup) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(d) for d in G.invariant_factors)))


def _candidate_maps(sq: SquareDiagram, name: str) -> list[IntMatrix]:
    """Every onto map with cyclic kernel for an unknown arrow."""
    s, t = SQUARE_MAPS[name]
    S, Tg = sq.groups[s], sq.groups[t]
    PS, PT = sq.presentations[s], sq.presentations[t]
    if Tg.is_finite:
        images = [_elements(Tg)] * S.ngens
        cands = itertools.product(*images)
    elif S.is_cyclic:
        if Tg.ngens != 1:
            return []
        cands = [((1,),), ((-1,),)] if S.ngens == 1 else []
    else:
        raise NotEnumerable(f"the {name} map cannot be enumerated")
    out = []
    for cols in cands:
        M = IntMatrix.from_columns(list(cols), PT.ngens)
        try:
            f = GroupMap(PS, PT, M)
        except ValueError:
            continue
        if f.is_surjective and f.kernel.is_cyclic:
            out.append(M)
    return out


def complete_square(sq: SquareDiagram) -> CompletionReport:
    unknown = [k for k in SQUARE_MAPS if sq.maps[k] is None]
    options = [_candidate_maps(sq, k) for k in unknown]
    out = []
    for choice in itertools.product(*options):
        mats = dict(sq.maps)
        mats.update(zip(unknown, choice))
        f = {k: sq.map(k, mats[k]) for k in SQUARE_MAPS}
        commutes = f["top"].then(f["right"]).agrees_with(f["left"].then(f["bottom"]))
        po = commutes and _is_pushout(f["top"], f["left"], f["right"], f["bottom"])
        if commutes:
            out.append(Completion({k: mats[k] for k in unknown}, commutes, po))
    return CompletionReport(out)
