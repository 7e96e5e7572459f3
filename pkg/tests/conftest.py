from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from gtutte import cli, semimatroid
from gtutte.exact_lattice import IntMatrix
from gtutte.periodic import PeriodicArrangement

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load_fixture(name: str):
    """Parse a fixture file with the same code path the CLI uses."""
    obj = json.loads((FIXTURES / name).read_text())
    kind = cli.kind_of(obj)
    parse = {
        "quotient": cli.parse_quotient,
        "semimatroid": cli.parse_semimatroid,
        "poset": cli.parse_poset,
        "arrangement": cli.parse_arrangement,
        "matrix": cli.parse_arrangement,
        "diagram": cli.parse_diagram,
    }[kind]
    return parse(obj)


@pytest.fixture
def running():
    return load_fixture("running_quotient.json")


@pytest.fixture
def rev2():
    return load_fixture("rev2.json")


def int_matrices(max_rows=3, max_cols=4, lo=-4, hi=4, min_rows=1, min_cols=1):
    return st.integers(min_rows, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(IntMatrix)))


@st.composite
def centered_arrangements(draw, max_d=3, max_n=5, lo=-3, hi=3):
    d = draw(st.integers(1, max_d))
    n = draw(st.integers(1, max_n))
    cols = draw(st.lists(st.lists(st.integers(lo, hi), min_size=d, max_size=d), min_size=n, max_size=n))
    return PeriodicArrangement(d, cols)


@st.composite
def affine_arrangements(draw, max_d=2, max_n=5, lo=-3, hi=3):
    """Arrangements with rational offsets; columns nonzero so there are no loops."""
    d = draw(st.integers(1, max_d))
    n = draw(st.integers(1, max_n))
    col = st.lists(st.integers(lo, hi), min_size=d, max_size=d).filter(any)
    cols = draw(st.lists(col, min_size=n, max_size=n))
    offs = draw(st.lists(st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]),
                         min_size=n, max_size=n))
    return PeriodicArrangement(d, cols, offs)


def random_affine_semimatroid(rng: random.Random, max_n=7, d=None):
    """Simple semimatroid of a random rational affine arrangement."""
    d = d or rng.randint(2, 3)
    n = rng.randint(2, max_n)
    normals, offsets, seen = [], [], set()
    while len(normals) < n:
        a = [rng.randint(-2, 2) for _ in range(d)]
        if not any(a):
            continue
        off = Fraction(rng.randint(-2, 2), rng.choice([1, 2]))
        g = math.gcd(*a)
        sign = 1 if next(x for x in a if x) > 0 else -1
        key = (tuple(sign * x // g for x in a), sign * off / g)
        if key in seen:
            continue
        seen.add(key)
        normals.append(a)
        offsets.append(off)
    return semimatroid.affine_semimatroid(normals, offsets)


def random_simple_matroid(rng: random.Random, max_n=7):
    d = rng.randint(2, 4)
    vecs = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(rng.randint(2, max_n))]
    return semimatroid.simplification(semimatroid.matroid_from_vectors(vecs))


# one line per acceptance criterion, filled in by test_acceptance and printed at the end
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
