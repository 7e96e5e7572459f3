import json
import random

import pytest
import sympy

from gtutte import geomsl
from gtutte import semimatroid as sm
from gtutte.geomsl import FinitePoset

from .conftest import load_fixture, random_affine_semimatroid, random_simple_matroid
from .oracles import char_poly_brute


def boolean_lattice(n: int) -> FinitePoset:
    els = ["".join("abcdefg"[i] for i in range(n) if X >> i & 1) or "0" for X in range(1 << n)]
    covers = [(els[X], els[X | 1 << i]) for X in range(1 << n) for i in range(n) if not X >> i & 1]
    return FinitePoset(els, covers)


def pentagon() -> FinitePoset:
    return FinitePoset(["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def sympy_poly(p) -> sympy.Expr:
    t = sympy.symbols("t")
    return sympy.expand(sum(c * t**e for e, c in p.coeffs.items()))


def _brute_char(P: FinitePoset, top_rank=None):
    return char_poly_brute(P.elements, P.leq, P.rank, max(P.rank.values()) if top_rank is None else top_rank)


def test_poset_basics():
    P = boolean_lattice(3)
    assert P.bottom == "0" and P.top == "abc"
    assert sorted(P.atoms) == ["a", "b", "c"]
    assert P.meet("ab", "bc") == "b" and P.join("a", "c") == "ac"
    assert P.rank["abc"] == 3 and P.leq("a", "abc") and not P.leq("ab", "bc")


def test_bad_posets():
    with pytest.raises(ValueError, match="cycle"):
        FinitePoset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError, match="unknown"):
        FinitePoset(["a"], [("a", "z")])
    with pytest.raises(ValueError, match="rank"):
        FinitePoset(["a", "b"], [("a", "b")], rank={"a": 0, "b": 2})


@pytest.mark.parametrize("n", range(5))
def test_boolean_char_poly(n):
    P = boolean_lattice(n)
    t = sympy.symbols("t")
    assert sympy_poly(geomsl.char_poly(P)) == sympy.expand((t - 1) ** n)
    assert geomsl.mobius(P, P.bottom, P.top) == (-1) ** n


def test_running_poset_char_poly():
    P = load_fixture("running_poset.json")
    chi = geomsl.char_poly(P)
    assert str(chi) == "t^2 - 5t + 11"
    assert sympy_poly(chi) == _brute_char(P)


def test_running_poset_is_not_a_semilattice():
    P = load_fixture("running_poset.json")
    bad = geomsl.check_geometric_semilattice(P)
    assert bad and bad[0].axiom == "semilattice"
    with pytest.raises(ValueError, match="not a geometric semilattice"):
        geomsl.semilattice_to_semimatroid(P)


def test_pentagon_is_not_geometric():
    P = pentagon()
    bad = geomsl.check_geometric_lattice(P)
    assert bad
    assert {v.axiom for v in bad} & {"ranked", "semimodular", "atomic"}


def test_non_semimodular_ranked_lattice():
    # two atoms under two incomparable rank-2 elements: the join of the atoms is not unique
    P = FinitePoset(["0", "a", "b", "x", "y", "1"],
                    [("0", "a"), ("0", "b"), ("a", "x"), ("b", "x"), ("a", "y"), ("b", "y"), ("x", "1"), ("y", "1")])
    assert any(v.axiom == "lattice" for v in geomsl.check_geometric_lattice(P))


@pytest.mark.parametrize("seed", range(20))
def test_flats_of_matroids_form_geometric_lattices(seed):
    t = random_simple_matroid(random.Random(seed))
    P = geomsl.flats_to_semilattice(t)
    assert geomsl.check_geometric_lattice(P) == []
    assert geomsl.check_geometric_semilattice(P) == []
    assert sympy_poly(geomsl.char_poly(P)) == _brute_char(P)


@pytest.mark.parametrize("seed", range(20))
def test_flats_of_affine_semimatroids_form_geometric_semilattices(seed):
    t = random_affine_semimatroid(random.Random(50 + seed))
    P = geomsl.flats_to_semilattice(t)
    assert geomsl.check_geometric_semilattice(P) == []
    # chi of the flats equals the reduced Tutte evaluation for semimatroids
    T = sm.tutte(t)
    tt = sympy.symbols("t")
    x, y = sympy.symbols("x y")
    T_sym = sympy.expand(sum(c * x**i * y**j for (i, j), c in T.coeffs.items()))
    r = t.full_rank
    assert sympy_poly(geomsl.char_poly(P, r)) == sympy.expand((-1) ** r * T_sym.subs({x: 1 - tt, y: 0}))


def test_g4_failure_detected():
    # two crossing pairs sharing b: every independent atom set can be extended
    P = FinitePoset(["0", "a", "b", "c", "ab", "bc"],
                    [("0", "a"), ("0", "b"), ("0", "c"), ("a", "ab"), ("b", "ab"), ("b", "bc"), ("c", "bc")])
    assert geomsl.check_geometric_semilattice(P) == []
    Q = FinitePoset(["0", "a", "b", "c", "d", "ab", "cd"],
                    [("0", "a"), ("0", "b"), ("0", "c"), ("0", "d"), ("a", "ab"), ("b", "ab"),
                     ("c", "cd"), ("d", "cd")])
    # {a,b} independent of size 2, the atom c has rank 1 < 2 but neither a nor b joins with c
    bad = geomsl.check_geometric_semilattice(Q)
    assert any(v.axiom == "G4" for v in bad)


def test_mobius_of_interval():
    P = boolean_lattice(3)
    assert geomsl.mobius(P, "0", "ab") == 1
    assert geomsl.mobius(P, "a", "abc") == 1
    with pytest.raises(ValueError):
        geomsl.mobius(P, "ab", "c")


def test_dot_and_json_emitters():
    P = boolean_lattice(2)
    dot = P.to_dot()
    assert dot.startswith("digraph P {") and "rank=2" in dot and '"0" -> "a"' in dot
    data = P.to_json()
    assert json.loads(json.dumps(data)) == data
    Q = FinitePoset([e["id"] for e in data["elements"]], [tuple(c) for c in data["covers"]],
                    rank={e["id"]: e["rank"] for e in data["elements"]})
    assert geomsl.poset_isomorphism(P, Q) is not None


def test_poset_isomorphism_search():
    P = boolean_lattice(3)
    rename = {e: "n" + e[::-1] for e in P.elements}
    Q = FinitePoset([rename[e] for e in reversed(P.elements)], [(rename[a], rename[b]) for a, b in P.covers])
    phi = geomsl.poset_isomorphism(P, Q)
    assert phi is not None and geomsl.is_poset_isomorphism(P, Q, phi)
    assert geomsl.poset_isomorphism(P, pentagon()) is None
    assert geomsl.poset_isomorphism(boolean_lattice(2), pentagon()) is None
