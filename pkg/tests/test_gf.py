from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hklab.gf import (
    FieldElement,
    FieldError,
    FieldSpec,
    MixedFieldError,
    ParamPoly,
    absolute_frobenius_param,
    embedding,
    field_arithmetic,
    find_irreducible,
    frobenius,
    is_irreducible,
)

from oracles import has_root_in_subfield, poly_mulmod

F4 = FieldSpec.extension(2, 2)
F5 = FieldSpec.prime(5)
F625 = FieldSpec.extension(5, 4, (3, 0, 0, 0, 1))
FIELDS = [FieldSpec.prime(2), FieldSpec.prime(7), F4, FieldSpec.extension(3, 2), FieldSpec.extension(2, 5), F625]


def elements(spec):
    return st.integers(0, spec.q - 1).map(lambda c: FieldElement(spec, c))


def test_prime_field_products():
    assert F5(2) * F5(3) == 1
    assert F5(4).inverse() == F5(4)
    assert field_arithmetic(F5(2), F5(3), "add") == 0


def test_f4_relation():
    u = F4.gen()
    assert u * (u + 1) == 1
    assert frobenius(u, 1) == u + 1
    assert frobenius(u, 2) == u


def test_f625_fourth_root_of_two():
    a = F625.gen()
    assert a**4 == 2
    assert frobenius(a, 1) == a * 2  # a^5 = a * a^4


@pytest.mark.parametrize(
    "p,d,expected",
    [(2, 2, (1, 1, 1)), (3, 1, (0, 1)), (2, 3, (1, 1, 0, 1)), (5, 4, (2, 0, 0, 0, 1))],
)
def test_find_irreducible_deterministic(p, d, expected):
    assert find_irreducible(p, d) == expected


@pytest.mark.parametrize("p,d", [(2, 4), (2, 6), (3, 4), (5, 4), (7, 3), (3, 6)])
def test_find_irreducible_has_no_subfield_roots(p, d):
    mod = find_irreducible(p, d)
    assert len(mod) == d + 1 and mod[-1] == 1
    # gcd certificate, recomputed with schoolbook arithmetic: x^(p^e) != x for e < d
    for e in range(1, d):
        assert not has_root_in_subfield(mod, p, e)
    assert has_root_in_subfield(mod, p, d)


def test_find_irreducible_dividing():
    mod = find_irreducible(5, 4, dividing=(3, 0, 0, 0, 1))
    assert mod == (3, 0, 0, 0, 1)
    assert FieldSpec(5, mod).gen() ** 4 == 2


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        FieldSpec(5, (1, 0, 1))  # X^2 + 1 = (X - 2)(X - 3)
    with pytest.raises(FieldError):
        FieldSpec(6)
    assert not is_irreducible((1, 0, 0, 0, 1), 2)


def test_errors():
    with pytest.raises(ZeroDivisionError):
        F5(0).inverse()
    with pytest.raises(MixedFieldError):
        F5(1) + FieldSpec.prime(7)(1)


@pytest.mark.parametrize("spec", FIELDS, ids=repr)
def test_fixed_field_identity_exhaustive(spec):
    for x in spec.elements():
        assert frobenius(x, spec.d) == x


@pytest.mark.parametrize("spec", [F4, FieldSpec.extension(3, 2), F625], ids=repr)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_products_match_schoolbook(spec, data):
    x, y = data.draw(elements(spec)), data.draw(elements(spec))
    expected = poly_mulmod(list(x.coords), list(y.coords), list(spec.modulus), spec.p)
    assert list((x * y).coords) == expected


@pytest.mark.parametrize("spec", FIELDS, ids=repr)
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_field_axioms(spec, data):
    x, y, z = (data.draw(elements(spec)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1


@pytest.mark.parametrize("spec", FIELDS, ids=repr)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_frobenius_is_ring_map(spec, data):
    x, y = data.draw(elements(spec)), data.draw(elements(spec))
    assert frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1)
    assert frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1)


def test_vectorised_ops_agree_with_scalar():
    import numpy as np

    spec = F625
    a = np.arange(0, spec.q, 7)
    b = (a * 13 + 5) % spec.q
    assert list(spec.vmul(a, b)) == [spec.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert list(spec.vadd(a, b)) == [spec.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(spec.vfrob(a, 1)) == [spec.frob(int(x), 1) for x in a]


def test_embedding_is_ring_map():
    big = FieldSpec.extension(2, 4)
    emb = embedding(F4, big)
    for x in F4.elements():
        for y in F4.elements():
            assert emb[(x * y).code] == big.mul(int(emb[x.code]), int(emb[y.code]))
            assert emb[(x + y).code] == big.add(int(emb[x.code]), int(emb[y.code]))


def test_json_roundtrip():
    assert FieldSpec.from_json(F625.to_json()) == F625


# -- the parameter ring -----------------------------------------------------

def test_param_frobenius_examples():
    F2 = FieldSpec.prime(2)
    t = ParamPoly.t(F2)
    assert absolute_frobenius_param(t + 1) == ParamPoly.t(F2, 2) + 1
    c = F625.gen() + 3
    assert absolute_frobenius_param(ParamPoly.t(F625) * c) == ParamPoly.t(F625, 5) * frobenius(c, 1)
    assert absolute_frobenius_param(ParamPoly.t(F5), 3) == ParamPoly.t(F5, 125)


def test_param_rejects_negative_exponent():
    with pytest.raises(ValueError):
        ParamPoly(F5, {-1: 1})


def param_polys(spec):
    return st.dictionaries(st.integers(0, 6), st.integers(0, spec.q - 1), max_size=4).map(
        lambda d: ParamPoly(spec, {k: FieldElement(spec, v) for k, v in d.items()})
    )


@settings(max_examples=100, deadline=None)
@given(f=param_polys(F4), g=param_polys(F4))
def test_param_frobenius_is_ring_map(f, g):
    assert absolute_frobenius_param(f * g) == absolute_frobenius_param(f) * absolute_frobenius_param(g)
    assert absolute_frobenius_param(f + g) == absolute_frobenius_param(f) + absolute_frobenius_param(g)
