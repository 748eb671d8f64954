import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from albert_e6.albert import (AlbertAlgebra, GammaIso, adjoint, classify, cross, find_nilpotent, gl3_act,
                              identity_suite, is_primitive_idempotent, norm, peirce, power, s_quad, square,
                              t_bil, trace, traces, triple, u_op)
from albert_e6.errors import (GammaNotUnit, NegativePower, NoneExist, NotFound, NotPrimitiveIdempotent,
                              SingularMatrix)
from albert_e6.fieldcore import QQ, parse_field
from albert_e6.octonion import CayleyDicksonAlgebra, ZornAlgebra

GF2, GF3 = parse_field("GF(2)"), parse_field("GF(3)")
A_Q = AlbertAlgebra(ZornAlgebra(QQ), (1, 1, 1))
A_CD = AlbertAlgebra(CayleyDicksonAlgebra(QQ, -1, -1, -1), (1, 1, 1))
A_GF3 = AlbertAlgebra(ZornAlgebra(GF3), (1, 1, 1))


def test_norm_examples():
    assert norm(A_Q.one) == 1
    x = A_Q.element((2, 3, 5))
    assert norm(x) == 30
    assert norm(A_Q.offdiag(0, A_Q.C.one)) == 0


def test_adjoint_cross_examples():
    assert adjoint(A_Q.e(0)).is_zero()
    assert adjoint(A_Q.one) == A_Q.one
    assert cross(A_Q.e(0), A_Q.e(1)) == A_Q.e(2)


def test_trace_examples():
    assert trace(A_Q.element((1, 2, 3))) == 6
    assert s_quad(A_Q.one) == 3 and t_bil(A_Q.one, A_Q.one) == 3
    assert s_quad(A_Q.e(0)) == 0
    rng = random.Random(4)
    x, y = A_CD.random(rng), A_CD.random(rng)
    T_xy, T_x, S_x, S_xy = traces(x, y)
    assert S_x == trace(adjoint(x))
    assert S_xy == T_x * trace(y) - T_xy


def test_u_and_triple_examples():
    rng = random.Random(5)
    y = A_Q.random(rng)
    assert u_op(A_Q.one, y) == y
    assert triple(A_Q.one, A_Q.one, A_Q.one) == A_Q.one.scale(2)


def test_nilpotent_square_zero():
    n = A_Q.offdiag(0, (1, 0, 0, 0, 0, 0, 0, 0))  # N_C = 0 in the Zorn model
    assert classify(n).tag == "nilpotent_sqzero"
    assert power(n, 2).is_zero()
    with pytest.raises(NegativePower):
        power(n, -1)
    assert power(n, 0) == A_Q.one and power(n, 1) == n


def test_classify_examples():
    assert classify(A_Q.one).tag == "invertible"
    assert classify(A_Q.e(0)).tag == "singular"
    assert is_primitive_idempotent(A_Q.e(2))
    assert not is_primitive_idempotent(A_Q.one)


# independent oracle: square the hermitian 3x3 octonion matrix (Gamma = 1)


def _matrix(x):
    A = x.A
    C = A.C
    a, (x1, x2, x3) = x.c[:3], x.c[3:]
    sc = lambda v: C.scale(v, C.one)
    return [[sc(a[0]), x3, C.conj(x2)],
            [C.conj(x3), sc(a[1]), x1],
            [x2, C.conj(x1), sc(a[2])]]


def _matrix_square(x):
    C = x.A.C
    M = _matrix(x)
    out = [[C.zero] * 3 for _ in range(3)]
    for p in range(3):
        for q in range(3):
            acc = C.zero
            for r in range(3):
                acc = C.add(acc, C.mul(M[p][r], M[r][q]))
            out[p][q] = acc
    return out


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([A_Q, A_CD]), st.integers(0, 10 ** 6))
def test_square_matches_matrix_product(A, seed):
    x = A.random(random.Random(seed), 5)
    M2 = _matrix_square(x)
    sq = square(x)
    C = A.C
    for p in range(3):
        assert M2[p][p] == C.scale(sq.c[p], C.one)
    assert M2[1][2] == sq.c[3] and M2[2][0] == sq.c[4] and M2[0][1] == sq.c[5]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_cross_is_polarization(seed):
    rng = random.Random(seed)
    for A in (A_CD, AlbertAlgebra(ZornAlgebra(QQ), (2, -3, Fraction(1, 5)))):
        x, y = A.random(rng, 4), A.random(rng, 4)
        assert cross(x, y) == adjoint(x + y) - adjoint(x) - adjoint(y)
        assert adjoint(adjoint(x)) == x.scale(norm(x))
        assert t_bil(adjoint(x), x) == 3 * norm(x)


@pytest.mark.parametrize("field", ["GF(2)", "GF(3)", "GF(4)", "GF(5)", "Q"])
def test_identity_suite_small(field):
    F = parse_field(field) if field != "Q" else QQ
    A = AlbertAlgebra(ZornAlgebra(F), (F.one, F.one, F.one))
    rep = identity_suite(A, samples=60, seed=1, box=5)
    assert rep["ok"], rep


def test_identity_suite_gf2_subspace():
    A = AlbertAlgebra(ZornAlgebra(GF2), (1, 1, 1))
    rep = identity_suite(A, seed=2, subspace_dim=3)
    assert rep["ok"]
    assert all(v["tested"] > 0 for k, v in rep["identities"].items())


def test_identity_suite_twisted_gamma():
    A = AlbertAlgebra(CayleyDicksonAlgebra(QQ, 2, -1, 3), (1, -2, Fraction(3, 7)))
    assert identity_suite(A, samples=40, seed=3, box=4)["ok"]


# Peirce


def test_peirce_dims():
    P = peirce(A_GF3.e(0))
    assert (P.A2.dim, P.A1.dim, P.A0.dim) == (1, 16, 10)
    assert P.A2.contains(A_GF3.to_vec(A_GF3.e(0)))
    assert P.sharp_check
    with pytest.raises(NotPrimitiveIdempotent):
        peirce(A_GF3.one)


def test_peirce_sharp_on_a0():
    x = A_Q.e(1) + A_Q.e(2)
    assert adjoint(x) == A_Q.e(0).scale(s_quad(x))
    assert adjoint(x) == A_Q.e(0)


def test_peirce_orthogonality():
    A = A_GF3
    P = peirce(A.e(1))
    F = A.F
    spaces = [P.A2, P.A1, P.A0]
    for i in range(3):
        for j in range(i + 1, 3):
            for u in spaces[i].basis:
                for v in spaces[j].basis:
                    assert t_bil(A.from_vec(u), A.from_vec(v)) == F.zero
    assert sum(S.dim for S in spaces) == 27


@pytest.mark.parametrize("gamma", [(1, 1, 1), (2, -3, 5)])
def test_quadratic_trace_on_offdiagonal_is_scaled_norm(gamma):
    A = AlbertAlgebra(CayleyDicksonAlgebra(QQ, -1, 2, 3), gamma)
    C = A.C
    basis = [tuple(1 if k == j else 0 for k in range(8)) for j in range(8)]
    S_bil = lambda x, y: trace(x) * trace(y) - t_bil(x, y)
    for i, (j, l) in enumerate([(1, 2), (2, 0), (0, 1)]):
        scale = -gamma[j] * gamma[l]
        for a in basis:
            for b in basis:
                assert S_bil(A.offdiag(i, a), A.offdiag(i, b)) == scale * C.norm_bil(a, b)


# GL3 action


def test_gl3_identity_and_diag():
    rng = random.Random(7)
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    D = [[3, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(10):
        x = A_CD.random(rng, 4)
        assert gl3_act(I, x) == x
        assert norm(gl3_act(D, x)) == 9 * norm(x)


def test_gl3_permutation_swaps():
    P = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert gl3_act(P, A_Q.e(0)) == A_Q.e(1)
    assert gl3_act(P, A_Q.e(1)) == A_Q.e(0)


def test_gl3_norm_similarity_and_companion():
    rng = random.Random(8)
    g = [[1, 2, 0], [0, 1, -1], [3, 0, 1]]
    from albert_e6.linalg import mat_det, mat_inv, transpose
    det = mat_det(QQ, g)
    assert det == -5
    g_dag = transpose(mat_inv(QQ, g))
    g_dag_inv = mat_inv(QQ, g_dag)
    for _ in range(8):
        x, y = A_CD.random(rng, 3), A_CD.random(rng, 3)
        assert norm(gl3_act(g, x)) == det * det * norm(x)
        assert u_op(gl3_act(g, x), y) == gl3_act(g, u_op(x, gl3_act(g_dag_inv, y)))


def test_gl3_errors():
    with pytest.raises(SingularMatrix):
        gl3_act([[1, 1, 0], [1, 1, 0], [0, 0, 1]], A_Q.one)
    B = AlbertAlgebra(ZornAlgebra(QQ), (1, 2, 1))
    with pytest.raises(GammaNotUnit):
        gl3_act([[1, 0, 0], [0, 1, 0], [0, 0, 1]], B.one)


# nilpotents


def test_find_nilpotent_split_gf3():
    n = find_nilpotent(A_GF3, rng=random.Random(0))
    assert classify(n).nilpotent and power(n, 2).is_zero()


def test_find_nilpotent_definite_fails():
    with pytest.raises((NotFound, NoneExist)):
        find_nilpotent(A_CD, budget=200, rng=random.Random(0))


def test_find_nilpotent_indefinite_gamma():
    A = AlbertAlgebra(CayleyDicksonAlgebra(QQ, -1, -1, -1), (1, 1, -1))
    n = find_nilpotent(A, rng=random.Random(0))
    assert classify(n).nilpotent and power(n, 2).is_zero()


def test_classify_nilpotent_iff_powers_vanish():
    A = AlbertAlgebra(ZornAlgebra(GF2), (1, 1, 1))
    rng = random.Random(9)
    seen = set()
    for _ in range(1000):
        # sparse elements so that nilpotents of both kinds occur
        v = [0] * 27
        for _ in range(rng.randint(1, 4)):
            v[rng.randrange(27)] = 1
        x = A.from_vec(v)
        cls = classify(x)
        seen.add(cls.tag)
        vanish = power(x, 2).is_zero() or power(x, 3).is_zero()
        assert cls.nilpotent == (vanish and not x.is_zero())
    assert {"nilpotent_sqzero", "singular", "invertible"} <= seen


def test_gamma_iso_verifies():
    A = AlbertAlgebra(CayleyDicksonAlgebra(QQ, -1, -1, -1), (2, 3, 5))
    iso = GammaIso(A).then("cycle").then("scale", Fraction(1, 3)).then("square", 2, 2)
    assert iso.verify(samples=20)
