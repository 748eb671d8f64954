import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from albert_e6.fieldcore import QQ, parse_field
from albert_e6.linalg import Echelon, Subspace, mat_det, mat_inv, mat_mul, nullspace, rank, rref, solve

GF3 = parse_field("GF(3)")


def test_rref_rank():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(QQ, rows) == 2
    assert len(rref(QQ, rows)) == 2


def test_nullspace_and_solve():
    rows = [[1, 2, 3], [0, 1, 1]]
    ns = nullspace(QQ, rows, 3)
    assert len(ns) == 1
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    cols = [[1, 0], [2, 1], [3, 1]]
    x = solve(QQ, cols, [6, 2])
    assert [sum(c[i] * xi for c, xi in zip(cols, x)) for i in range(2)] == [6, 2]


def test_det_inverse():
    m = [[2, 1], [5, 3]]
    assert mat_det(QQ, m) == 1
    assert mat_mul(QQ, m, mat_inv(QQ, m)) == [[1, 0], [0, 1]]


def test_subspace_lattice_gf3():
    rng = random.Random(0)
    n = 5
    for _ in range(30):
        U = Subspace.span(GF3, [[rng.randrange(3) for _ in range(n)] for _ in range(2)], n)
        W = Subspace.span(GF3, [[rng.randrange(3) for _ in range(n)] for _ in range(3)], n)
        assert (U + W).dim + U.intersect(W).dim == U.dim + W.dim
        # brute-force intersection
        brute = {v for v in product(range(3), repeat=n) if U.contains(v) and W.contains(v)}
        assert len(brute) == 3 ** U.intersect(W).dim
        assert U.annihilator().dim == n - U.dim


def test_subspace_elements_count():
    S = Subspace.span(GF3, [[1, 0, 1, 0], [0, 1, 1, 2]], 4)
    assert len(list(S.elements())) == 9
    assert S.contains_space(Subspace.zero(GF3, 4))
    assert Subspace.whole(GF3, 4).contains_space(S)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=6))
def test_echelon_incremental_matches_rank(rows):
    E = Echelon(QQ, 4)
    for r in rows:
        E.insert(r)
    assert len(E) == rank(QQ, rows)
    assert all(E.contains(r) for r in rows)
