import random

import pytest

from albert_e6.albert import AlbertAlgebra, adjoint, norm, u_op
from albert_e6.errors import DimensionMismatch, NotInnerIdeal, NotSingular
from albert_e6.fieldcore import parse_field
from albert_e6.idealgeom import (greedy_singular, hyperline, is_inner_ideal, is_singular_space, psi, span,
                                 singular_extensions)
from albert_e6.linalg import Subspace
from albert_e6.octonion import ZornAlgebra


def split_albert(q):
    F = parse_field(f"GF({q})")
    return AlbertAlgebra(ZornAlgebra(F), (F.one, F.one, F.one))


A3 = split_albert(3)
A5 = split_albert(5)


def random_singular(A, rng):
    """U_a e11 is singular since (U_a e)# = U_{a#} e# = 0."""
    while True:
        x = u_op(A.random(rng), A.e(0))
        if not x.is_zero():
            return x


def test_kind_examples():
    A = A3
    assert str(is_inner_ideal(span(A, [A.e(0)]), A)) == "singular(1)"
    H = hyperline(A.e(0))
    kind = is_inner_ideal(H, A)
    assert kind.tag == "hyperline" and kind.dim == 10
    assert is_inner_ideal(span(A, [A.one]), A).tag == "not_inner"


def test_gf2_enumeration_path():
    A = split_albert(2)
    assert is_inner_ideal(span(A, [A.e(0)]), A).tag == "singular"
    assert is_inner_ideal(hyperline(A.e(1)), A).tag == "hyperline"
    assert is_inner_ideal(span(A, [A.e(0) + A.e(1)]), A).tag == "not_inner"


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        is_inner_ideal(Subspace.whole(A3.F, 54), A3)


def test_hyperline_e11():
    H = hyperline(A3.e(0))
    assert H.dim == 10
    assert H.contains(A3.to_vec(A3.e(2)))
    rng = random.Random(0)
    for v in list(H.basis) + [H.random_vector(rng) for _ in range(50)]:
        assert norm(A3.from_vec(v)) == 0


def test_hyperline_dimension_random_gf5():
    rng = random.Random(1)
    for _ in range(100):
        assert hyperline(random_singular(A5, rng)).dim == 10


def test_hyperline_needs_singular():
    with pytest.raises(NotSingular):
        hyperline(A3.one)


def test_psi_examples():
    A = A3
    X1 = span(A, [A.e(0)])
    H = hyperline(A.e(0))
    assert psi(X1, A) == H
    assert psi(H, A) == X1
    with pytest.raises(NotInnerIdeal):
        psi(span(A, [A.one]), A)


def test_psi_dim3_involution():
    A = A3
    X = greedy_singular(A, 3, random.Random(2))
    assert is_inner_ideal(X, A).tag == "singular"
    P = psi(X, A)
    assert P.dim == 3
    assert psi(P, A) == X


def test_hyperline_is_psi_of_point():
    rng = random.Random(3)
    for _ in range(5):
        x = random_singular(A3, rng)
        assert hyperline(x) == psi(span(A3, [x]), A3)


def test_psi_inclusion_reversing_and_involutive():
    rng = random.Random(4)
    A = A3
    e = A.e(0)
    H = hyperline(e)
    for _ in range(2):
        # a singular point inside the hyperline of e
        while True:
            v = H.random_vector(rng)
            x = A.from_vec(v)
            if not x.is_zero() and adjoint(x).is_zero():
                break
        X = span(A, [x])
        assert H.contains_space(X)
        PX, PH = psi(X, A), psi(H, A)
        assert PX.contains_space(PH)
        assert psi(PX, A) == X
        for Y in (PX, PH):
            assert is_inner_ideal(Y, A).tag in ("singular", "hyperline")


def test_singular_extensions_consistent():
    A = A3
    X = greedy_singular(A, 2, random.Random(5))
    ext = singular_extensions(A, X, limit=3)
    assert ext
    for v in ext:
        assert is_singular_space(A, X + Subspace.span(A.F, [v], 27))
