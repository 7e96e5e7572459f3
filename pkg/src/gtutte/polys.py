"""Integer polynomials in one and two variables.

Printing is canonical: total degree descending, then x-degree descending.

>>> print(BivariatePoly({(2, 0): 1, (0, 2): 1, (1, 0): 3, (0, 1): 4, (0, 0): 7}))
x^2 + y^2 + 3x + 4y + 7
>>> print(UniPoly({2: 1, 1: -5, 0: 11}))
t^2 - 5t + 11
"""

from __future__ import annotations

from math import comb
from typing import Mapping


def _monomial(coeff: int, powers: list[tuple[str, int]]) -> str:
    vars_ = "".join(v if e == 1 else f"{v}^{e}" for v, e in powers if e)
    if not vars_:
        return str(coeff)
    if coeff == 1:
        return vars_
    if coeff == -1:
        return "-" + vars_
    return f"{coeff}{vars_}"


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


class UniPoly:
    """Sparse integer polynomial in one variable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def constant(cls, c: int) -> "UniPoly":
        return cls({0: c})

    @classmethod
    def var(cls) -> "UniPoly":
        return cls({1: 1})

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __add__(self, other) -> "UniPoly":
        other = _lift_uni(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> "UniPoly":
        return self + (-_lift_uni(other))

    def __rsub__(self, other) -> "UniPoly":
        return _lift_uni(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _lift_uni(other)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t):
        return sum(c * t**e for e, c in self.coeffs.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = UniPoly.constant(other)
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def format(self, var: str = "t") -> str:
        return _join([_monomial(self.coeffs[e], [(var, e)]) for e in sorted(self.coeffs, reverse=True)])

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"UniPoly({self.coeffs!r})"

    def to_json(self) -> list[list[int]]:
        return [[e, self.coeffs[e]] for e in sorted(self.coeffs, reverse=True)]


def _lift_uni(p) -> UniPoly:
    return p if isinstance(p, UniPoly) else UniPoly.constant(p)


class BivariatePoly:
    """Sparse integer polynomial in x and y, keyed by (x-exponent, y-exponent)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self.coeffs = {(int(i), int(j)): int(c) for (i, j), c in (coeffs or {}).items() if c}

    @classmethod
    def constant(cls, c: int) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def shifted_monomial(cls, a: int, b: int, c: int = 1) -> "BivariatePoly":
        """``c * (x-1)^a * (y-1)^b`` expanded."""
        out = {}
        for i in range(a + 1):
            for j in range(b + 1):
                out[(i, j)] = c * comb(a, i) * comb(b, j) * (-1) ** (a - i + b - j)
        return cls(out)

    def __add__(self, other) -> "BivariatePoly":
        other = _lift_bi(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other) -> "BivariatePoly":
        return self + (-_lift_bi(other))

    def __mul__(self, other) -> "BivariatePoly":
        other = _lift_bi(other)
        out: dict[tuple[int, int], int] = {}
        for (a, b), c1 in self.coeffs.items():
            for (p, q), c2 in other.coeffs.items():
                k = (a + p, b + q)
                out[k] = out.get(k, 0) + c1 * c2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def substitute(self, x: UniPoly, y: UniPoly) -> UniPoly:
        out = UniPoly()
        for (i, j), c in self.coeffs.items():
            out = out + c * x**i * y**j
        return out

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coeffs.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BivariatePoly.constant(other)
        return isinstance(other, BivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def _order(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs, key=lambda k: (-(k[0] + k[1]), -k[0]))

    def __str__(self) -> str:
        return _join([_monomial(self.coeffs[k], [("x", k[0]), ("y", k[1])]) for k in self._order()])

    def __repr__(self) -> str:
        return f"BivariatePoly({self.coeffs!r})"

    def to_json(self) -> list[list[int]]:
        return [[i, j, self.coeffs[(i, j)]] for i, j in self._order()]


def _lift_bi(p) -> BivariatePoly:
    return p if isinstance(p, BivariatePoly) else BivariatePoly.constant(p)
