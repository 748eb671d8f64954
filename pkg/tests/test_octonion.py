import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from albert_e6.errors import AlgebraMismatch, NoneExist
from albert_e6.fieldcore import QQ, parse_field
from albert_e6.octonion import (CayleyDicksonAlgebra, OctonionElement, ZornAlgebra, composition_law_check,
                                make_octonion, oct_mul, oct_norm_trace_conj, oct_norm_zero_sampler)
from albert_e6.wittforms import pfister

from oracles import hyperbolic_quadric_points

GF2 = parse_field("GF(2)")
CD111 = CayleyDicksonAlgebra(QQ, -1, -1, -1)


def basis_vec(i, F=QQ):
    return tuple(F.one if j == i else F.zero for j in range(8))


ALGEBRAS = [ZornAlgebra(QQ), CD111, CayleyDicksonAlgebra(QQ, 2, -3, 5), ZornAlgebra(GF2),
            ZornAlgebra(parse_field("GF(4)")), CayleyDicksonAlgebra(parse_field("GF(5)"), 2, 2, 1)]


@pytest.mark.parametrize("C", ALGEBRAS, ids=repr)
def test_unit_and_conjugation(C):
    rng = random.Random(1)
    for _ in range(50):
        x = C.random(rng)
        assert C.mul(C.one, x) == x == C.mul(x, C.one)
        n, t, xb = oct_norm_trace_conj(C, x)
        assert C.mul(x, xb) == C.scale(n, C.one)
        assert C.add(x, xb) == C.scale(t, C.one)
        assert C.conj(xb) == x


def test_norm_trace_of_one():
    for C in ALGEBRAS:
        n, t, _ = oct_norm_trace_conj(C, C.one)
        F = C.F
        assert n == F.one and t == F.add(F.one, F.one)


def test_zorn_idempotents_orthogonal():
    C = ZornAlgebra(QQ)
    e = (1, 0, 0, 0, 0, 0, 0, 0)
    f = C.sub(C.one, e)
    assert C.is_zero(oct_mul(C, e, f))
    assert oct_mul(C, e, e) == e


def test_zorn_diagonal_norm():
    C = ZornAlgebra(QQ)
    x = (3, 7, 0, 0, 0, 0, 0, 0)
    assert C.norm(x) == 21
    assert C.mul(x, C.conj(x)) == C.scale(21, C.one)


def test_cd_quaternion_units():
    i, j = basis_vec(1), basis_vec(2)
    k = oct_mul(CD111, i, j)
    assert k == basis_vec(3)
    assert oct_mul(CD111, k, j) == CD111.neg(i)


def test_cd_all_ones_norm():
    assert CD111.norm((1,) * 8) == 8


def test_operator_sugar_and_mismatch():
    x = OctonionElement(CD111, basis_vec(1))
    assert (x * x).coords == CD111.scale(-1, CD111.one)
    with pytest.raises(AlgebraMismatch):
        x + OctonionElement(ZornAlgebra(QQ), basis_vec(1))


def test_make_octonion():
    assert isinstance(make_octonion(QQ, "split"), ZornAlgebra)
    assert make_octonion(QQ, ["-1", "-1", "-1"]) == CD111


def test_composition_exhaustive_gf2():
    rep = composition_law_check(ZornAlgebra(GF2), exhaustive=True)
    assert rep["pairs"] == 65536 and rep["ok"]


@pytest.mark.parametrize("C", ALGEBRAS, ids=repr)
def test_composition_random(C):
    rep = composition_law_check(C, samples=300, rng=random.Random(3))
    assert rep["ok"], rep


def test_zorn_gf2_isotropic_count():
    # independent count of zeros of alpha*beta - u.v over GF(2) (no package arithmetic)
    direct = sum(1 for x in product(range(2), repeat=8)
                 if any(x) and (x[0] * x[1] + x[2] * x[5] + x[3] * x[6] + x[4] * x[7]) % 2 == 0)
    C = ZornAlgebra(GF2)
    via_package = sum(1 for x in C.elements() if not C.is_zero(x) and C.norm(x) == 0)
    assert direct == via_package == hyperbolic_quadric_points(2, 4) == 135


@pytest.mark.parametrize("a,b,c", [(-1, -1, -1), (2, 3, -7), (1, 5, -2)])
def test_cd_norm_is_pfister(a, b, c):
    C = CayleyDicksonAlgebra(QQ, a, b, c)
    weights = [C.norm(basis_vec(i)) for i in range(8)]
    assert weights == [1, -a, -b, a * b, -c, a * c, b * c, -a * b * c]
    form = pfister((a, b, c))
    from albert_e6.fieldcore import squarefree_part
    assert sorted(squarefree_part(w) for w in weights) == sorted(e[0] for e in form.entries)
    # off-diagonal Gram entries vanish
    for i in range(8):
        for j in range(i + 1, 8):
            assert C.norm_bil(basis_vec(i), basis_vec(j)) == 0


def test_norm_zero_sampler():
    rng = random.Random(0)
    for C in (ZornAlgebra(GF2), ZornAlgebra(QQ), CayleyDicksonAlgebra(QQ, 1, -1, 1),
              CayleyDicksonAlgebra(parse_field("GF(3)"), -1, -1, -1)):
        xs = oct_norm_zero_sampler(C, 5, rng)
        assert len(xs) == 5
        assert all(not C.is_zero(x) and C.F.is_zero(C.norm(x)) for x in xs)
    with pytest.raises(NoneExist):
        oct_norm_zero_sampler(CD111, 1, rng)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=16, max_size=16))
def test_trace_symmetric_and_multiplicative(v):
    for C in (CD111, ZornAlgebra(QQ)):
        x, y = tuple(v[:8]), tuple(v[8:])
        assert C.trace(C.mul(x, y)) == C.trace(C.mul(y, x))
        assert C.norm(C.mul(x, y)) == C.norm(x) * C.norm(y)
        assert C.norm_bil(x, y) == C.norm(C.add(x, y)) - C.norm(x) - C.norm(y)
