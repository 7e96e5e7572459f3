from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given

from gtutte import arith, geomsl
from gtutte import periodic as pe
from gtutte import semimatroid as sm
from gtutte.exact_lattice import FgAbGroup
from gtutte.periodic import PeriodicArrangement

from .conftest import affine_arrangements, centered_arrangements
from .oracles import char_poly_brute, gcd_of_minors, point_layers, subset_expansion, sympy_rank, to_sympy, torus_points


def _cols(arr, X):
    return [arr.columns[i] for i in sm.bits(X)]


def test_rev2(rev2):
    arr = rev2
    assert pe.multiplicity(arr, [1, 2]) == 2
    assert pe.z_group(arr, [1, 2]) == FgAbGroup(0, [2])
    assert pe.z_group(arr, [1, 2, 3]) == FgAbGroup(1)
    assert [pe.multiplicity(arr, X) for X in range(8)] == [1, 1, 1, 2, 1, 1, 1, 1]
    assert len(pe.layers(arr)) == 6
    assert str(geomsl.char_poly(pe.layer_poset(arr))) == "t^2 - 3t + 3"
    assert str(arith.g_tutte(pe.arithmetic_matroid(arr))) == "x^2 + x + y + 1"


def test_rev2_layer_closures(rev2):
    L = pe.layer_closure(rev2, [1, 2], (0, 0))
    assert L.support == 7 and L.coset == (0, 0, 0) and L.rank == 2
    L = pe.layer_closure(rev2, [1, 2], (1, 0))
    assert L.support == 3 and L.coset == (0, 1)
    assert L.label(rev2) == "{1,2} | (0,1) | 2"
    # W({1,2,3}) = {k : k1 + k2 = 2 k3}
    assert not pe.w_lattice(rev2, [1, 2, 3]).contains((1, 0, 0))
    with pytest.raises(ValueError, match="not in W"):
        pe.layer_closure(rev2, [1, 2, 3], (1, 0, 0))


def test_empty_intersection():
    # x = k and 2x = 1/2 + l never meet
    arr = PeriodicArrangement(1, [[1], [2]], ["0", "1/2"])
    assert pe.w_lattice(arr, [1, 2]) is None
    assert pe.multiplicity(arr, [1, 2]) == 0
    D = pe.arithmetic_matroid(arr)
    assert 3 not in D.rank
    assert pe.shift_representatives(arr, [1, 2]) == []


def test_offsets_shift_the_lattice():
    arr = PeriodicArrangement(1, [[2], [2]], ["0", "1"])
    # 2x = k and 2x = 1 + l: W = {(k, l) : l = k - 1}
    W = pe.w_lattice(arr, [1, 2])
    assert W.contains((1, 0)) and not W.contains((0, 0))
    assert pe.multiplicity(arr, [1, 2]) == 2


@given(centered_arrangements(max_d=3, max_n=5))
def test_multiplicity_is_gcd_of_minors(arr):
    for X in range(1, 1 << arr.n):
        rows = [list(c) for c in _cols(arr, X)]
        r = sympy_rank(rows)
        assert pe.multiplicity(arr, X) == gcd_of_minors(rows, r)


@given(affine_arrangements(max_d=2, max_n=4))
def test_multiplicity_counts_torus_points(arr):
    """For spanning X, m(X) is the number of points where the hyperplanes of X meet on the torus."""
    for X in range(1, 1 << arr.n):
        if sympy_rank(_cols(arr, X)) != arr.d:
            continue
        pts = torus_points(arr.columns, arr.offsets, sm.bits(X))
        assert pe.multiplicity(arr, X) == len(pts)


@given(affine_arrangements(max_d=2, max_n=4))
def test_top_rank_layers_are_torus_points(arr):
    top = [L for L in pe.layers(arr) if L.rank == arr.d]
    assume(sympy_rank(arr.columns) == arr.d)
    assert len(top) == point_layers(arr.columns, arr.offsets)


@given(affine_arrangements(max_d=2, max_n=4))
def test_w_contains_i(arr):
    for X in range(1 << arr.n):
        W = pe.w_lattice(arr, X)
        if W is None:
            continue
        I = pe.i_lattice(arr, X)
        assert W.linear().includes(I)
        if arr.centered:
            assert W.contains((0,) * sm.popcount(X))


@given(centered_arrangements(max_d=2, max_n=4))
def test_layer_counts_per_support(arr):
    """Each X has m(X) layer closures, all distinct."""
    D = pe.arithmetic_matroid(arr)
    for X in D.rank:
        closures = {(L.support, L.coset) for L in (pe.layer_closure(arr, X, k) for k in pe.shift_representatives(arr, X))}
        assert len(closures) == D.mult[X]


@given(affine_arrangements(max_d=2, max_n=4))
def test_layer_poset_ranks_and_bottom(arr):
    P = pe.layer_poset(arr)
    assert P.bottom is not None and P.payload[P.bottom].support == 0
    for a, b in P.covers:
        assert P.rank[b] == P.rank[a] + 1
        assert pe.layer_leq(arr, P.payload[a], P.payload[b])
    t = sympy.symbols("t")
    r = max(P.rank.values())
    chi = geomsl.char_poly(P, r)
    assert sympy.expand(sum(c * t**e for e, c in chi.coeffs.items())) == char_poly_brute(P.elements, P.leq, P.rank, r)


@given(affine_arrangements(max_d=2, max_n=4))
def test_chi_is_tutte_evaluation(arr):
    chi, rhs = pe.theorem_cp_sides(arr)
    assert chi == rhs


@given(centered_arrangements(max_d=3, max_n=4))
def test_quotient_with_layers_validates(arr):
    assume(all(any(c) for c in arr.columns))
    D = pe.quotient_with_layers(arr)
    assert arith.check_theorem_cp_data(D)


@given(affine_arrangements(max_d=2, max_n=4))
def test_arithmetic_data_satisfies_axioms(arr):
    D = pe.arithmetic_matroid(arr)
    rep = arith.check_axioms(D)
    assert rep.is_arithmetic and rep.flags["locally_ranked"]
    assert to_sympy(arith.g_tutte(D)) == subset_expansion(arr.n, D.rank, D.mult)


@given(affine_arrangements(max_d=2, max_n=4))
def test_eta_identity(arr):
    D = pe.arithmetic_matroid(arr)
    for m in sm.molecules(D.triple):
        if m.F == 0:
            lhs, rhs = pe.eta_sides(arr, m.R, m.T)
            assert lhs == rhs


def test_eta_rejects_non_molecules(rev2):
    with pytest.raises(ValueError, match="molecule"):
        pe.eta_sides(rev2, 0, 1)
    with pytest.raises(ValueError, match="disjoint"):
        pe.eta_sides(rev2, 1, 1)


def test_loops_are_rejected_by_cp():
    arr = PeriodicArrangement(2, [[0, 0], [1, 0]])
    with pytest.raises(ValueError, match="loops"):
        pe.theorem_cp_sides(arr)


def test_bad_input():
    with pytest.raises(ValueError):
        PeriodicArrangement(2, [[1, 0, 0]])
    with pytest.raises(ValueError):
        PeriodicArrangement(1, [[1]], [Fraction(0), Fraction(1)])
    with pytest.raises(ValueError):
        pe.multiplicity(PeriodicArrangement(1, [[1]]), [2])
