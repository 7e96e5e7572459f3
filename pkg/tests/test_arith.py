import itertools

import pytest
from hypothesis import given

from gtutte import arith
from gtutte import periodic as pe
from gtutte import semimatroid as sm
from gtutte.arith import QuotientData

from .conftest import centered_arrangements, load_fixture
from .oracles import subset_expansion, to_sympy


def _same_data(D1: QuotientData, D2: QuotientData) -> bool:
    """Equal up to the order of the ground set labels."""
    def table(D):
        return {frozenset(D.triple.labels(A)): (D.rank[A], D.mult[A]) for A in D.rank}
    return set(D1.ground) == set(D2.ground) and table(D1) == table(D2)


def test_running_tutte(running):
    T = arith.g_tutte(running)
    assert str(T) == "x^2 + y^2 + 3x + 4y + 7"
    assert to_sympy(T) == subset_expansion(running.n, running.rank, running.mult)


def test_running_deletion_and_contraction_match_entered_data(running):
    entered_del = load_fixture("running_deletion_e.json")
    entered_con = load_fixture("running_contraction_e.json")
    assert _same_data(arith.delete(running, "e"), entered_del)
    assert _same_data(arith.contract(running, "e"), entered_con)
    assert str(arith.g_tutte(entered_del)) == "x^2 + y^2 + 2x + 2y + 5"
    assert str(arith.g_tutte(entered_con)) == "x + 2y + 2"


def test_running_del_con(running):
    r = arith.del_con(running, "e")
    assert r.case == "generic" and r.holds
    assert r.t_del + r.t_con == r.t
    for e in running.ground:
        assert arith.check_del_con(running, e)


def test_running_is_arithmetic_but_not_a_semimatroid(running):
    rep = arith.check_axioms(running)
    assert rep.is_arithmetic and rep.classification == "arithmetic"
    assert rep.flags["locally_ranked"] and not rep.flags["semimatroid"]


def test_running_crapo_precondition(running):
    with pytest.raises(arith.PreconditionError, match="not a semimatroid"):
        arith.crapo_decomposition(running)


def test_running_cp(running):
    chi, rhs = arith.theorem_cp_sides(running)
    assert str(chi) == "t^2 - 5t + 11" and chi == rhs
    assert arith.check_theorem_cp_data(running)


def test_cp_needs_layers():
    D = load_fixture("running_deletion_e.json")
    with pytest.raises(arith.MissingLayers):
        arith.theorem_cp_sides(D)


def test_noarithm_witnesses():
    D = load_fixture("noarithm.json")
    rep = arith.check_axioms(D)
    assert rep.classification == "almost-arithmetic"
    assert rep.flags["P"] and rep.flags["A12"] and rep.flags["A2"] and not rep.flags["A11"]
    msgs = [str(v) for v in rep.witnesses["A11"]]
    assert "(A.1.1): m({a,b,c})=3 does not divide m({a,c})=4" in msgs
    # the same triple also fails against {a,b} and {b,c}
    assert sorted(msgs) == sorted([
        "(A.1.1): m({a,b,c})=3 does not divide m({a,b})=8",
        "(A.1.1): m({a,b,c})=3 does not divide m({a,c})=4",
        "(A.1.1): m({a,b,c})=3 does not divide m({b,c})=4",
    ])


def _brute_axioms(D: QuotientData) -> dict[str, bool]:
    """The axioms straight from their definitions, looping over all disjoint triples."""
    n, rk, m = D.n, D.rank, D.mult
    ok = {"P": True, "A11": True, "A12": True, "A2": True}
    for A in rk:
        for e in range(n):
            B = A | 1 << e
            if B == A or B not in rk:
                continue
            if rk[B] == rk[A] and m[A] % m[B]:
                ok["A11"] = False
            if rk[B] > rk[A] and m[B] % m[A]:
                ok["A12"] = False
    # labels 0/1/2 put an element in R/F/T, 3 leaves it out
    for labels in itertools.product(range(4), repeat=n):
        R = sum(1 << i for i, c in enumerate(labels) if c == 0)
        F = sum(1 << i for i, c in enumerate(labels) if c == 1)
        T = sum(1 << i for i, c in enumerate(labels) if c == 2)
        M = R | F | T
        if M not in rk:
            continue
        if not all(rk.get(R | S) == rk[R] + bin(S & F).count("1") for S in sm.submasks(F | T)):
            continue
        rho = sum((-1) ** bin(T & ~S).count("1") * (-1) ** bin(F & ~S).count("1") * m[R | S]
                  for S in sm.submasks(F | T))
        rho *= (-1) ** bin(T).count("1")
        if rho < 0:
            ok["P"] = False
        if m[R] * m[M] != m[R | F] * m[R | T]:
            ok["A2"] = False
    return ok


def test_noarithm_brute_axioms():
    D = load_fixture("noarithm.json")
    assert _brute_axioms(D) == {"P": True, "A11": False, "A12": True, "A2": True}


@given(centered_arrangements(max_d=2, max_n=4))
def test_axiom_checker_against_brute(arr):
    D = pe.arithmetic_matroid(arr)
    rep = arith.check_axioms(D)
    assert {a: rep.flags[a] for a in ("P", "A11", "A12", "A2")} == _brute_axioms(D)


def test_mutated_multiplicities_are_caught():
    D = pe.arithmetic_matroid(pe.PeriodicArrangement.from_matrix([[1, 1, 1], [1, -1, 0]]))
    mult = dict(D.mult)
    mult[7] = 2  # m({1,2,3}) = 2 cannot divide m({1,3}) = 1
    bad = QuotientData(D.ground, D.rank, mult)
    rep = arith.check_axioms(bad)
    brute = _brute_axioms(bad)
    assert {a: rep.flags[a] for a in brute} == brute
    assert not rep.is_arithmetic


def test_rho_on_rev2(rev2):
    D = pe.arithmetic_matroid(rev2)
    # ρ(∅, {1,2}) = m(12) - m(1) - m(2) + m(∅) = 2 - 1 - 1 + 1
    assert arith.rho(D, 0, 3) == 1
    assert arith.rho(D, 0, 0) == 1


@given(centered_arrangements(max_d=2, max_n=4))
def test_del_con_on_every_element(arr):
    D = pe.arithmetic_matroid(arr)
    for e in D.ground:
        r = arith.del_con(D, e)
        assert r.holds, (e, r.case)


@given(centered_arrangements(max_d=3, max_n=4))
def test_crapo_matches_tutte(arr):
    D = pe.arithmetic_matroid(arr)
    for order in (None, list(reversed(D.ground))):
        assert arith.crapo_decomposition(D, order) == arith.g_tutte(D)


def test_crapo_refuses_a2_failure():
    # b is a loop; on (∅, {a}, {b}) m(∅)m(ab) = 3 but m(a)m(b) = 6
    D = QuotientData("ab", {0: 0, 1: 1, 2: 0, 3: 1}, {0: 1, 1: 6, 2: 1, 3: 3})
    assert arith.check_axioms(D).classification == "pseudo-arithmetic"
    with pytest.raises(arith.PreconditionError, match="A2"):
        arith.crapo_decomposition(D)


def test_unit_multiplicity_is_classical():
    t = sm.uniform_matroid(2, 4)
    D = arith.with_unit_multiplicity(t)
    assert arith.g_tutte(D) == sm.tutte(t)
    assert arith.crapo_decomposition(D) == sm.crapo_sum(t)


def test_quotient_validation():
    with pytest.raises(ValueError, match="exactly on central sets"):
        QuotientData("a", {0: 0, 1: 1}, {0: 1})
    with pytest.raises(ValueError, match="positive"):
        QuotientData("a", {0: 0, 1: 1}, {0: 1, 1: 0})
    with pytest.raises(ValueError, match="listed twice"):
        QuotientData.from_sets("a", [((), 0, 1), ((), 0, 1)])
    with pytest.raises(ValueError):
        arith.delete(load_fixture("noarithm.json"), "z")
