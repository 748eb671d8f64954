from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from albert_e6.errors import (DescriptorMismatch, InseparablePolynomial, NotDegreeTwo, ZeroInput)
from albert_e6.fieldcore import (QQ, FieldScalar, etale_make, etale_norm_trace, field_arith,
                                 least_irreducible, parse_field, square_class, squarefree_part)

GF4 = parse_field("GF(4)")
GF5 = parse_field("GF(5)")
GF9 = parse_field("GF(9)")


def fs(F, text):
    return FieldScalar(F, F.parse(text))


# field_arith


def test_rational_sum():
    r = field_arith(fs(QQ, "1/3"), fs(QQ, "1/6"), "+")
    assert r.value == Fraction(1, 2)


def test_gf4_t_squared():
    assert GF4.modulus == least_irreducible(2, 2)
    r = field_arith(fs(GF4, "t"), fs(GF4, "t"), "*")
    assert r.value == GF4.parse("t+1")


def test_gf5_division():
    assert field_arith(fs(GF5, "2"), fs(GF5, "3"), "/").value == 4


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        field_arith(fs(GF5, "2"), fs(GF5, "0"), "/")


def test_descriptor_mismatch():
    with pytest.raises(DescriptorMismatch):
        field_arith(fs(GF5, "2"), fs(QQ, "2"), "+")


def test_canonical_fraction():
    x = QQ.parse("-6/4")
    assert x == Fraction(-3, 2) and x.denominator > 0
    assert QQ.parse("4/2") == 2 and isinstance(QQ.parse("4/2"), int)


@pytest.mark.parametrize("F", [parse_field(f"GF({q})") for q in (2, 3, 4, 5, 7, 8, 9, 25)])
def test_finite_field_axioms_exhaustive(F):
    els = F.elements()
    assert len(els) == F.q
    for a in els:
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one
        assert F.add(a, F.neg(a)) == F.zero
    # multiplicative group is cyclic of order q - 1
    nz = [a for a in els if a != F.zero]
    assert all(F.power(a, F.q - 1) == F.one for a in nz)
    assert any(len({F.power(a, k) for k in range(F.q - 1)}) == F.q - 1 for a in nz)


def test_distributivity_gf9():
    els = GF9.elements()
    for a, b, c in product(els, repeat=3):
        assert GF9.mul(a, GF9.add(b, c)) == GF9.add(GF9.mul(a, b), GF9.mul(a, c))


# square classes


def test_square_class_examples():
    assert square_class(QQ, 18) == 2
    assert square_class(QQ, Fraction(-8, 27)) == -6
    assert square_class(GF5, 3) == 2
    assert all(square_class(GF4, a) == 1 for a in GF4.elements() if a)
    with pytest.raises(ZeroInput):
        square_class(QQ, 0)


@settings(max_examples=500, deadline=None)
@given(st.integers(-400, 400).filter(bool), st.integers(1, 60), st.integers(1, 60))
def test_square_class_invariance_q(a, num, den):
    b = Fraction(num, den)
    assert square_class(QQ, a * b * b) == square_class(QQ, a)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7, 9, 25]), st.data())
def test_square_class_invariance_finite(q, data):
    F = parse_field(f"GF({q})")
    a = data.draw(st.sampled_from(F.elements()[1:]))
    b = data.draw(st.sampled_from(F.elements()[1:]))
    assert square_class(F, F.mul(a, F.mul(b, b))) == square_class(F, a)


def test_squarefree_part():
    assert squarefree_part(72) == 2
    assert squarefree_part(-45) == -5
    assert squarefree_part(1) == 1


# etale algebras


def test_q_sqrt2():
    K = etale_make(QQ, "t^2 - 2")
    assert K.is_field
    r = K.theta
    assert K.mul(r, r) == K.embed(QQ.from_int(2))
    assert K.conj(r) == K.neg(r)
    assert square_class(QQ, K.disc) == 2


def test_q_split():
    K = etale_make(QQ, "split")
    assert not K.is_field and K.disc == 1
    a = K.from_components(QQ.from_int(3), QQ.from_int(5))
    assert K.components(K.conj(a)) == (5, 3)
    assert etale_norm_trace(K, a) == (15, 8)


def test_gf4_as_etale():
    F = parse_field("GF(2)")
    K = etale_make(F, "t^2 + t + 1")
    assert K.is_field and K.disc == F.one
    assert etale_norm_trace(K, K.theta) == (F.one, F.one)


def test_norm_trace_sqrt2():
    K = etale_make(QQ, "t^2 - 2")
    a = K.add(K.one, K.theta)
    assert etale_norm_trace(K, a) == (-1, 2)


def test_etale_errors():
    with pytest.raises(InseparablePolynomial):
        etale_make(QQ, "t^2 - 2*t + 1")
    with pytest.raises(InseparablePolynomial):
        etale_make(parse_field("GF(2)"), "t^2 + 1")
    with pytest.raises(NotDegreeTwo):
        etale_make(QQ, "t^3 - 2")


def test_trace_one_generator():
    for F, spec in [(QQ, "t^2 + 1"), (GF5, "t^2 - 2"), (parse_field("GF(2)"), "t^2 + t + 1"), (QQ, "split")]:
        K = etale_make(F, spec)
        assert K.trace(K.d) == F.one


def test_cached_t():
    for F, spec in [(QQ, "t^2 + 1"), (QQ, "t^2 - 3*t + 1"), (GF5, "t^2 - 2"), (GF9, "split")]:
        K = etale_make(F, spec)
        t = K.t_gen
        assert F.is_zero(K.trace(t))
        assert square_class(F, F.neg(K.norm(t))) == square_class(F, K.disc)


def _finite_etales():
    out = [etale_make(GF4, "split"), etale_make(GF9, "split")]
    # quadratic extensions: an Artin-Schreier polynomial over GF(4), x^2 - nonsquare over GF(9)
    for c in GF4.elements():
        try:
            K = etale_make(GF4, (GF4.one, c))
        except InseparablePolynomial:
            continue
        if K.is_field:
            out.append(K)
            break
    out.append(etale_make(GF9, (GF9.zero, GF9.neg(GF9.nonsquare()))))
    return out


@pytest.mark.parametrize("K", _finite_etales(), ids=repr)
def test_etale_exhaustive(K):
    els = K.elements()
    for a in els:
        assert K.conj(K.conj(a)) == a
        assert K.is_in_base(K.embed(K.trace(a)))
        assert K.mul(a, K.conj(a)) == K.embed(K.norm(a))
    for a, b in product(els, repeat=2):
        assert K.norm(K.mul(a, b)) == K.base.mul(K.norm(a), K.norm(b))
        assert K.trace(K.add(a, b)) == K.base.add(K.trace(a), K.trace(b))


def test_etale_field_shapes():
    shapes = {K.is_field for K in _finite_etales()}
    assert shapes == {True, False}


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(["t^2 - 2", "t^2 + 1", "split", "t^2 - t - 5/3"]),
       st.lists(st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20)), min_size=5, max_size=5))
def test_etale_q_random(spec, xs):
    K = etale_make(QQ, spec)
    a, b = (xs[0], xs[1]), (xs[2], xs[3])
    lam = xs[4]
    assert K.conj(K.conj(a)) == a
    assert K.norm(K.mul(a, b)) == K.norm(a) * K.norm(b)
    assert K.trace(K.add(K.scale(lam, a), b)) == lam * K.trace(a) + K.trace(b)
    assert K.norm_bil(a, b) == K.norm(K.add(a, b)) - K.norm(a) - K.norm(b)
