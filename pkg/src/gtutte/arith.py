"""Orbit data of a group action on a semimatroid.

A ``QuotientData`` holds the orbit ground set ``E``, the central family,
rank, and multiplicity ``m``.  It may also carry a layer poset together with
the map ``kappa`` sending each of the ``m(A)`` orbits of support ``A`` to its
layer.

Arithmetic axioms (checked by ``check_axioms``):

* (P)     ρ(R, R∪F∪T) >= 0 for every molecule,
* (A.1.1) rk(A∪e) = rk(A)  =>  m(A∪e) divides m(A),
* (A.1.2) rk(A∪e) > rk(A)  =>  m(A) divides m(A∪e),
* (A2)    m(R) m(R∪F∪T) = m(R∪F) m(R∪T) for every molecule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .geomsl import FinitePoset, char_poly
from .polys import BivariatePoly, UniPoly
from .semimatroid import (
    LocallyRankedTriple,
    Violation,
    activities,
    bases,
    check_locally_ranked,
    check_semimatroid,
    is_isthmus,
    molecule_split,
    molecules,
    popcount,
    submasks,
)


class PreconditionError(ValueError):
    """Input does not meet the hypotheses of the requested computation."""


class InexactDivision(ArithmeticError):
    """A ρ/m quotient in the activity expansion was not a nonnegative integer."""


class MissingLayers(LookupError):
    """The operation needs a layer poset and none was supplied."""


@dataclass
class LayerData:
    poset: FinitePoset
    support: dict[str, int]
    kappa: dict[int, list[str]]


class QuotientData:
    def __init__(self, ground: Sequence[str], rank: Mapping[int, int], mult: Mapping[int, int],
                 layers: LayerData | None = None):
        self.triple = LocallyRankedTriple(ground, rank)
        self.mult = {int(k): int(v) for k, v in mult.items()}
        if set(self.mult) != set(self.triple.rank):
            extra = set(self.mult) ^ set(self.triple.rank)
            raise ValueError(f"multiplicity must be given exactly on central sets (mismatch at {self.fmt(min(extra))})")
        for A, m in self.mult.items():
            if m < 1:
                raise ValueError(f"m({self.fmt(A)})={m} must be positive")
        self.layers = layers
        if layers is not None:
            self._validate_layers()

    @classmethod
    def from_sets(cls, ground: Sequence[str], entries: Iterable[tuple[Iterable[str], int, int]],
                  layers: LayerData | None = None) -> "QuotientData":
        ground = tuple(ground)
        index = {g: i for i, g in enumerate(ground)}
        rank, mult = {}, {}
        for labels, r, m in entries:
            X = 0
            for x in labels:
                if x not in index:
                    raise ValueError(f"unknown element {x!r}")
                X |= 1 << index[x]
            if X in rank:
                raise ValueError(f"central set listed twice: {sorted(labels)}")
            rank[X], mult[X] = r, m
        return cls(ground, rank, mult, layers)

    def _validate_layers(self) -> None:
        L = self.layers
        P = L.poset
        if P.rank is None:
            raise ValueError("layer poset must be ranked")
        if set(L.support) != set(P.elements):
            raise ValueError("every layer needs a support")
        for A, m in self.mult.items():
            ps = L.kappa.get(A, [])
            if len(ps) != m or len(set(ps)) != m:
                raise ValueError(f"kappa must send the {m} orbits of {self.fmt(A)} to {m} distinct layers")
            for p in ps:
                if p not in P.index:
                    raise ValueError(f"kappa names unknown layer {p!r}")
                if L.support[p] & A != A or P.rank[p] != self.rank[A]:
                    raise ValueError(f"layer {p} cannot be the closure of an orbit of {self.fmt(A)}")
        if set(L.kappa) - set(self.mult):
            raise ValueError("kappa is defined on a non-central set")

    ground = property(lambda self: self.triple.ground)
    rank = property(lambda self: self.triple.rank)
    n = property(lambda self: self.triple.n)
    full_rank = property(lambda self: self.triple.full_rank)

    @property
    def central(self) -> list[int]:
        return self.triple.central

    def mask(self, labels) -> int:
        return labels if isinstance(labels, int) else self.triple.mask(labels)

    def fmt(self, X: int) -> str:
        return self.triple.fmt(X)

    def element(self, e) -> int:
        """Ground index of the label ``e``."""
        if e not in self.triple.index:
            raise ValueError(f"{e!r} is not a ground element")
        return self.triple.index[e]

    def __repr__(self) -> str:
        return f"QuotientData({list(self.ground)}, {len(self.mult)} central sets)"


AXIOMS = ("locally_ranked", "semimatroid", "matroid", "P", "A11", "A12", "A2")


@dataclass
class AxiomReport:
    flags: dict[str, bool]
    witnesses: dict[str, list[Violation]] = field(default_factory=dict)

    @property
    def is_arithmetic(self) -> bool:
        return all(self.flags[a] for a in ("P", "A11", "A12", "A2"))

    @property
    def classification(self) -> str:
        f = self.flags
        if self.is_arithmetic:
            return "arithmetic"
        if f["P"] and f["A12"] and f["A2"]:
            return "almost-arithmetic"
        if f["P"]:
            return "pseudo-arithmetic"
        return "none"

    def failures(self) -> list[Violation]:
        return [v for a in AXIOMS for v in self.witnesses.get(a, [])]


def rho(D: QuotientData, R, M) -> int:
    """ρ(R, M) for the molecule with bottom ``R`` and top ``M``."""
    R, M = D.mask(R), D.mask(M)
    mol = molecule_split(D.triple, R, M)
    if mol is None:
        raise ValueError(f"({D.fmt(R)}, {D.fmt(M)}) does not span a molecule")
    return _rho(D, R, M, mol.T)


def _rho(D: QuotientData, R: int, M: int, T: int) -> int:
    top = popcount(M)
    s = sum((-1) ** (top - popcount(R | A)) * D.mult[R | A] for A in submasks(M & ~R))
    return (-1) ** popcount(T) * s


def check_axioms(D: QuotientData) -> AxiomReport:
    t = D.triple
    flags = {a: True for a in AXIOMS}
    wit: dict[str, list[Violation]] = {a: [] for a in AXIOMS}
    wit["locally_ranked"] = check_locally_ranked(t)
    wit["semimatroid"] = check_semimatroid(t) if not wit["locally_ranked"] else []
    flags["locally_ranked"] = not wit["locally_ranked"]
    flags["semimatroid"] = flags["locally_ranked"] and not wit["semimatroid"]
    flags["matroid"] = flags["semimatroid"] and t.is_matroid
    m, rk = D.mult, t.rank
    for A in t.central:
        for e in range(t.n):
            B = A | 1 << e
            if B == A or B not in rk:
                continue
            if rk[B] == rk[A] and m[A] % m[B]:
                wit["A11"].append(Violation(
                    "A.1.1", (t.labels(B), t.labels(A)),
                    f"m({D.fmt(B)})={m[B]} does not divide m({D.fmt(A)})={m[A]}"))
            if rk[B] > rk[A] and m[B] % m[A]:
                wit["A12"].append(Violation(
                    "A.1.2", (t.labels(A), t.labels(B)),
                    f"m({D.fmt(A)})={m[A]} does not divide m({D.fmt(B)})={m[B]}"))
    for mol in molecules(t):
        R, F, T, M = mol.R, mol.F, mol.T, mol.top
        r = _rho(D, R, M, T)
        sets = (t.labels(R), t.labels(F), t.labels(T))
        if r < 0:
            wit["P"].append(Violation("P", sets, f"rho({D.fmt(R)},{D.fmt(M)})={r} is negative"))
        if m[R] * m[M] != m[R | F] * m[R | T]:
            wit["A2"].append(Violation(
                "A2", sets,
                f"m({D.fmt(R)})m({D.fmt(M)})={m[R] * m[M]} but m({D.fmt(R | F)})m({D.fmt(R | T)})={m[R | F] * m[R | T]}"))
    for a in ("P", "A11", "A12", "A2"):
        flags[a] = not wit[a]
    return AxiomReport(flags, wit)


def g_tutte(D: QuotientData) -> BivariatePoly:
    r = D.full_rank
    acc: dict[tuple[int, int], int] = {}
    for A, rA in D.rank.items():
        key = (r - rA, popcount(A) - rA)
        acc[key] = acc.get(key, 0) + D.mult[A]
    out = BivariatePoly()
    for (a, b), c in acc.items():
        out = out + BivariatePoly.shifted_monomial(a, b, c)
    return out


def _remap(keep: Sequence[int], X: int) -> int:
    return sum(1 << k for k, i in enumerate(keep) if X >> i & 1)


def delete(D: QuotientData, e) -> QuotientData:
    i = D.element(e)
    keep = [j for j in range(D.n) if j != i]
    rank, mult = {}, {}
    for A, r in D.rank.items():
        if not A >> i & 1:
            B = _remap(keep, A)
            rank[B], mult[B] = r, D.mult[A]
    return QuotientData([D.ground[j] for j in keep], rank, mult)


def contract(D: QuotientData, e) -> QuotientData:
    """Contraction at ``e`` with m/e(A) = m(A ∪ e)."""
    i = D.element(e)
    E = 1 << i
    keep = [j for j in range(D.n) if j != i and (E | 1 << j) in D.rank]
    re = D.rank[E]
    rank, mult = {}, {}
    for A, r in D.rank.items():
        if A & E:
            B = _remap(keep, A & ~E)
            rank[B], mult[B] = r - re, D.mult[A]
    return QuotientData([D.ground[j] for j in keep], rank, mult)


@dataclass
class DelCon:
    case: str
    t: BivariatePoly
    t_del: BivariatePoly
    t_con: BivariatePoly
    combined: BivariatePoly

    @property
    def holds(self) -> bool:
        return self.t == self.combined


def del_con(D: QuotientData, e) -> DelCon:
    i = D.element(e)
    td, tc = g_tutte(delete(D, e)), g_tutte(contract(D, e))
    x1 = BivariatePoly({(1, 0): 1, (0, 0): -1})
    y1 = BivariatePoly({(0, 1): 1, (0, 0): -1})
    if D.rank[1 << i] == 0:
        case, combined = "loop", td + y1 * tc
    elif is_isthmus(D.triple, i):
        case, combined = "isthmus", x1 * td + tc
    else:
        case, combined = "generic", td + tc
    return DelCon(case, g_tutte(D), td, tc, combined)


def check_del_con(D: QuotientData, e) -> bool:
    return del_con(D, e).holds


def crapo_decomposition(D: QuotientData, order=None) -> BivariatePoly:
    """Activity expansion of the G-Tutte polynomial over bases."""
    t = D.triple
    bad = check_locally_ranked(t) or check_semimatroid(t)
    if bad:
        raise PreconditionError(f"not a semimatroid: {bad[0]}")
    rep = check_axioms(D)
    for a in ("P", "A12", "A2"):
        if not rep.flags[a]:
            raise PreconditionError(f"axiom fails: {rep.witnesses[a][0]}")
    out = BivariatePoly()
    for B in bases(t):
        I, E = activities(t, B, order)
        R = B & ~I
        mR = D.mult[R]
        xs: dict[tuple[int, int], int] = {}
        for F in submasks(I):
            q, r = divmod(_rho(D, R, R | (I & ~F), 0), mR)
            if r or q < 0:
                raise InexactDivision(
                    f"rho({D.fmt(R)},{D.fmt(R | (I & ~F))})/m({D.fmt(R)}) is not a nonnegative integer")
            xs[(popcount(F), 0)] = xs.get((popcount(F), 0), 0) + q
        ys: dict[tuple[int, int], int] = {}
        for T in submasks(E):
            v = _rho(D, R | T, R | E, E & ~T)
            if v < 0:
                raise InexactDivision(f"rho({D.fmt(R | T)},{D.fmt(R | E)}) is negative")
            ys[(0, popcount(T))] = ys.get((0, popcount(T)), 0) + v
        out = out + BivariatePoly(xs) * BivariatePoly(ys)
    return out


def check_crapo(D: QuotientData, order=None) -> bool:
    return crapo_decomposition(D, order) == g_tutte(D)


def theorem_cp_sides(D: QuotientData) -> tuple[UniPoly, UniPoly]:
    """(χ of the layer poset, (-1)^r T(1-t, 0))."""
    if D.layers is None:
        raise MissingLayers("this check needs a layer poset")
    loops = [D.ground[i] for i in range(D.n) if D.rank[1 << i] == 0]
    if loops:
        raise PreconditionError(f"data has loops: {', '.join(loops)}")
    r = D.full_rank
    chi = char_poly(D.layers.poset, r)
    t = UniPoly.var()
    rhs = (-1) ** r * g_tutte(D).substitute(1 - t, UniPoly())
    return chi, rhs


def check_theorem_cp_data(D: QuotientData) -> bool:
    chi, rhs = theorem_cp_sides(D)
    return chi == rhs


def with_unit_multiplicity(t: LocallyRankedTriple) -> QuotientData:
    return QuotientData(t.ground, t.rank, {A: 1 for A in t.rank})


