from __future__ import annotations

import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hklab.descent import (
    DescentSequence,
    Threshold,
    bound_context,
    bundle_count_bound,
    constant_point_sequence,
    count_constant,
    descent_threshold,
    example_shape_sequence,
    mu_max_bound,
    pigeonhole_window,
    theorem_margin,
)


@pytest.mark.parametrize("args,b", [((0, 2, 3, 4), 24), ((-5, 2, 3, 4), 24), ((8, 3, 1, 1), 11)])
def test_mu_max_bound(args, b):
    assert mu_max_bound(*args) == b


@pytest.mark.parametrize("args", [(0, 0, 1, 1), (0, 1, -1, 1), (0, 1, 1, 0)])
def test_mu_max_bound_domain(args):
    with pytest.raises(ValueError):
        mu_max_bound(*args)


@pytest.mark.parametrize(
    "r,b,floor,ceil,least",
    [(2, 16, 5, 5, 6), (1, 1, 0, 0, 1), (2, 24, 5, 6, 6), (3, 3, 3, 4, 4)],
)
def test_descent_threshold(r, b, floor, ceil, least):
    t = descent_threshold(r, b)
    assert (t.floor, t.ceil, t.least_exponent) == (floor, ceil, least)
    assert t.floor <= t.value <= t.ceil
    assert math.isclose(t.value, math.log2(r * b))


def test_threshold_domain():
    with pytest.raises(ValueError):
        descent_threshold(1, 0)


@given(rb=st.integers(1, 10**40))
def test_threshold_bracket_is_exact(rb):
    t = descent_threshold(1, rb)
    assert 2**t.floor <= rb < 2 ** (t.floor + 1)
    assert 2 ** (t.ceil - 1) < rb <= 2**t.ceil


@pytest.mark.parametrize(
    "r,g,expected",
    [(2, 3, (6, 8, 54, 264, 46, 97152)), (1, 2, (4, 3, 16, 18, 11, 594))],
)
def test_count_constant(r, g, expected):
    ctx = count_constant(r, g)
    assert (ctx.ell, ctx.s, ctx.k, ctx.m, ctx.n, ctx.c) == expected


def test_count_constant_growth():
    assert count_constant(2, 3).c > count_constant(1, 2).c


def test_count_constant_domain():
    with pytest.raises(ValueError):
        count_constant(2, 1)
    with pytest.raises(ValueError):
        count_constant(2, 3, ell=5)


@pytest.mark.parametrize("r,g", [(1, 2), (2, 3), (3, 5), (4, 10)])
def test_intermediates_satisfy_definitions(r, g):
    R, Gs, L = sympy.symbols("r g ell")
    s = R * L + R * (1 - Gs)
    k = L * (s + 1)
    m = -L * s + (s - R) * k + (s - R) * (1 - Gs)
    n = L * s + 1 - Gs
    ctx = count_constant(r, g)
    vals = {R: r, Gs: g, L: 2 * g}
    assert [ctx.s, ctx.k, ctx.m, ctx.n, ctx.c] == [int(x.subs(vals)) for x in (s, k, m, n, n * m * s)]
    assert min(ctx.s, ctx.k, ctx.m, ctx.n, ctx.c) > 0


def test_bound_context_json():
    ctx = bound_context(2, 3, 0, 3, 4)
    doc = ctx.to_json()
    assert doc["b"] == 24 and doc["c"] == 97152
    assert doc["t_threshold"]["ceil"] == 6 and doc["t_threshold"]["least_exponent"] == 6


@pytest.mark.parametrize("size,c,value", [(2, 10, 1024), (4, 3, 64)])
def test_bundle_count_bound(size, c, value):
    assert bundle_count_bound(size, c) == (value, value.bit_length())


def test_bundle_count_bound_large():
    value, bits = bundle_count_bound(2, 97152)
    assert bits == 97153 and value == 1 << 97152
    with pytest.raises(ValueError):
        bundle_count_bound(1, 3)


def test_sequence_parse():
    assert DescentSequence.parse("4:1, 4:2,8:3").entries == [(4, 1), (4, 2), (8, 3)]
    assert DescentSequence.parse("").entries == []
    for bad in ("6:1", "4:-1", "1:0"):
        with pytest.raises(ValueError):
            DescentSequence.parse(bad)


def test_constant_point_triggers():
    seq = constant_point_sequence(2, 12)
    rep = theorem_margin(seq, 3, descent_threshold(1, 3))
    assert rep.margins == tuple(n - 8 for n in range(12))
    assert rep.trigger == 10  # 10 - 8 >= ceil(log2 3) = 2


def test_example_shape_never_triggers():
    p, c = 3, 2
    # a_n = 1 + floor(log_p n) keeps n <= p^(c a_n)
    exps = [1 + (0 if n < 1 else int(math.log(n, p))) for n in range(60)]
    rep = theorem_margin(example_shape_sequence(p, exps), c, 0)
    assert all(mg <= 0 for mg in rep.margins)
    assert rep.trigger is None


def test_margin_empty_sequence():
    assert theorem_margin(DescentSequence([]), 5, 1).trigger is None


def test_margin_uses_ceiling():
    t = Threshold(3, math.log2(3), 1, 2)
    assert theorem_margin([(2, 3)], 1, t).trigger is None  # margin 1 < log2(3)
    assert theorem_margin([(2, 4)], 1, t).trigger == 0


@given(
    entries=st.lists(st.tuples(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(0, 200)), max_size=12),
    more=st.lists(st.tuples(st.sampled_from([2, 3, 4]), st.integers(0, 200)), max_size=6),
    c=st.integers(0, 4),
    t=st.integers(0, 10),
)
def test_trigger_is_monotone(entries, more, c, t):
    first = theorem_margin(entries, c, t).trigger
    if first is not None:
        assert theorem_margin(entries + more, c, t).trigger == first


@pytest.mark.parametrize("e,t,bound,size,forced", [(10, 5, 4, 5, True), (10, 5, 6, 5, False), (10, 5, 5, 5, True)])
def test_pigeonhole_window(e, t, bound, size, forced):
    w = pigeonhole_window(e, t, bound)
    assert (w.size, w.forced) == (size, forced)


def test_pigeonhole_with_count_bound():
    value, _ = bundle_count_bound(2, count_constant(1, 2).c)
    assert not pigeonhole_window(10**6, 6, value).forced
    assert pigeonhole_window(value + 6, 6, value).forced
