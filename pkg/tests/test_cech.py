from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import symbols

from hklab.cech import (
    CechClass,
    ClassError,
    TwistMismatchError,
    detect_repetition,
    descends,
    extension_splits,
    fixed_classes,
    flat_class,
    frobenius_matrix,
    frobenius_on_class,
    h1_basis,
    hasse_witt,
    orbit,
    p_rank,
    param_class,
    parse_class,
    projectively_equal,
)
from hklab.curvering import PlaneCurve
from hklab.gf import FieldElement, FieldSpec, ParamPoly
from hklab.poly import parse_poly

from oracles import X, Y, Z, hasse_witt_oracle, mat_power_mod, rank_mod_p

U, V, W = symbols("U V W")

ORACLE_INPUT = {
    "g_f2": (Z**4 + X * Y * Z**2 + Z * (X**3 + Y**3) + X**2 * Y**2, 4, (X, Y, Z)),
    "h_f3": (Z**4 - X * Y * (X + Y) * (X + 2 * Y), 4, (X, Y, Z)),
    "fermat4_f5": (X**4 + Y**4 - Z**4, 4, (X, Y, Z)),
    "fermat5_f7": (X**5 + Y**5 - Z**5, 5, (X, Y, Z)),
    "octic_d_f3": (W**8 - (U**4 + V**4) * (U**4 + 2 * V**4), 8, (U, V, W)),
}


@pytest.mark.parametrize("m,size", [(0, 3), (1, 1), (2, 0), (-1, 6)])
def test_h1_basis_sizes(curve, m, size):
    C = curve("fermat4_f5")
    basis = h1_basis(C, m)
    assert len(basis) == size == C.h1(m)
    assert all(i <= -1 and j <= -1 and 0 <= a < 4 and i + j + a == m for i, j, a in basis)


def test_h1_basis_order(curve):
    assert h1_basis(curve("h_f3"), 0) == [(-1, -1, 2), (-2, -1, 3), (-1, -2, 3)]


def test_conic_has_no_h1():
    C = PlaneCurve(parse_poly("Z^2 - X*Y", FieldSpec.prime(3)))
    assert h1_basis(C, 0) == []
    assert hasse_witt(C).p_rank == 0
    assert fixed_classes(C) == []


@pytest.mark.parametrize("name", sorted(ORACLE_INPUT))
def test_p_rank_matches_oracle(curve, name):
    C = curve(name)
    f, delta, gens = ORACLE_INPUT[name]
    A = hasse_witt_oracle(f, C.field.p, delta, gens)
    g = len(A)
    assert g == C.genus
    assert p_rank(C) == rank_mod_p(mat_power_mod(A, g, C.field.p), C.field.p)


@pytest.mark.parametrize("name,value", [("g_f2", 3), ("h_f3", 0), ("fermat4_f5", 3), ("fermat5_f7", 0), ("octic_d_f3", 12)])
def test_p_rank_values(curve, name, value):
    assert p_rank(curve(name)) == value


@pytest.mark.parametrize("small,big", [("fermat4_f5", "fermat4_f625"), ("h_f3", "h_f9"), ("g_f2", "g_f4")])
def test_p_rank_invariant_under_extension(curve, small, big):
    assert p_rank(curve(small)) == p_rank(curve(big))
    assert hasse_witt(curve(small)).matrix.tolist() == hasse_witt(curve(big)).matrix.tolist()


def test_fermat_hasse_witt(curve):
    hw = hasse_witt(curve("fermat4_f625"))
    assert hw.matrix.tolist() == [[2, 0, 0], [0, 3, 0], [0, 0, 3]]
    assert hw.to_json()["p_rank"] == 3
    assert not hasse_witt(curve("h_f3")).matrix.any()


def test_fixed_classes_fermat(curve):
    C = curve("fermat4_f625")
    fixed = fixed_classes(C)
    expected = [parse_class(s, C) for s in ("a^3*Z^2/(X*Y)", "a*Z^3/(X^2*Y)", "a*Z^3/(X*Y^2)")]
    assert fixed == expected
    for c in fixed:
        assert frobenius_on_class(c) == c


def test_fixed_classes_count(curve):
    # the F_p-dimension of the fixed space equals the p-rank over a large enough field
    assert len(fixed_classes(curve("g_f4"))) == 3
    assert fixed_classes(curve("h_f9")) == []


def test_flat_class_orbit(curve):
    C = curve("fermat4_f625")
    v, w, _ = fixed_classes(C)
    c = flat_class(v, w)
    orb = orbit(c, 3)
    for n, cls in enumerate(orb):
        assert cls == param_class(v, w, 5**n)
        assert cls.m == 0
    assert detect_repetition(orb) is None


def test_flat_class_rejections(curve):
    C = curve("fermat4_f625")
    v, w, _ = fixed_classes(C)
    with pytest.raises(ClassError):
        flat_class(v, CechClass.zero(C, 0))
    with pytest.raises(ClassError):
        flat_class(v, v.scale(C.field(2)))
    with pytest.raises(ClassError):
        flat_class(v, parse_class("Z^3/(X^2*Y)", C))  # not fixed: a is missing
    with pytest.raises(ClassError):
        flat_class(param_class(v, w, 1), w)


@pytest.mark.parametrize("k", [1, 2, 7])
def test_descends(curve, k):
    C = curve("fermat4_f625")
    v, w, _ = fixed_classes(C)
    assert descends(v, w, k)
    assert not descends(v, parse_class("Z^3/(X^2*Y)", C), k)


def test_repetition_over_f4(curve):
    C = curve("g_f4")
    # Frobenius swaps the two Z^3 classes and squares a, so the orbit has period two
    c = parse_class("Z^3/(X^2*Y) + a*Z^2/(X*Y)", C)
    orb = orbit(c, 3)
    assert orb[2] == c
    assert detect_repetition(orb) == (0, 2)
    d = parse_class("a*Z^2/(X*Y)", C)
    assert detect_repetition(orbit(d, 2)) == (0, 1)
    assert projectively_equal(frobenius_on_class(d), d) == C.field.gen()


def test_repetition_requires_equal_twists(curve):
    C = curve("fermat4_f5")
    a = CechClass(C, 0, {(-1, -1, 2): C.field(1)})
    b = CechClass(C, -1, {(-1, -1, 1): C.field(1)})
    with pytest.raises(TwistMismatchError):
        detect_repetition([a, b])


def test_projective_equality_with_parameter(curve):
    C = curve("fermat4_f625")
    v, w, _ = fixed_classes(C)
    c = param_class(v, w, 1)
    two = C.field(2)
    assert projectively_equal(c.scale(two), c) == two
    assert projectively_equal(param_class(v, w, 5), c) is None


def test_twist_scaling_of_frobenius(curve):
    C = curve("fermat4_f5")
    c = CechClass(C, -1, {(-1, -1, 1): C.field(1)})
    assert frobenius_on_class(c).m == -5
    assert frobenius_matrix(C, -1).shape == (C.h1(-5), C.h1(-1))


def vectors(spec, g):
    return st.lists(st.integers(0, spec.q - 1), min_size=g, max_size=g)


@pytest.mark.parametrize("m", [0, -1])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_frobenius_is_p_linear(curve, m, data):
    C = curve("fermat4_f625")
    spec = C.field
    g = C.h1(m)
    x = CechClass.from_vector(C, m, data.draw(vectors(spec, g)))
    y = CechClass.from_vector(C, m, data.draw(vectors(spec, g)))
    lam = FieldElement(spec, data.draw(st.integers(0, spec.q - 1)))
    F = frobenius_on_class
    assert F(x + y) == F(x) + F(y)
    assert F(x.scale(lam)) == F(x).scale(lam ** 5)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_matrix_model_matches_class_model(curve, data):
    C = curve("fermat4_f625")
    hw = hasse_witt(C)
    vec = np.array(data.draw(vectors(C.field, 3)))
    cls = CechClass.from_vector(C, 0, vec)
    assert frobenius_on_class(cls).vector().tolist() == hw.apply(vec).tolist()


def test_parameter_classes_follow_param_frobenius(curve):
    C = curve("g_f2")
    t = ParamPoly.t(C.field)
    c = CechClass(C, 0, {(-1, -1, 2): t + 1})
    assert frobenius_on_class(c) == CechClass(C, 0, {(-1, -1, 2): ParamPoly.t(C.field, 2) + 1})


def test_extension_splits(curve):
    D = curve("octic_d_f3")
    assert D.h1(12) == 0
    assert extension_splits(D, 12)
    C = curve("fermat4_f5")
    nonzero = CechClass(C, 0, {(-1, -1, 2): C.field(1)})
    assert not extension_splits(C, 0, nonzero)
    assert extension_splits(C, 0, CechClass.zero(C, 0))
    assert not extension_splits(C, 0)
