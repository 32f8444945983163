from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fiberorder.dominance import PkPoint, build_ok_poset, build_pk_poset, pk_compare
from fiberorder.errors import BadBasePoint, BaseMismatch, FiberTooLarge, InvalidMeasure
from fiberorder.fibers import (
    BallPoint,
    FiberMeasurePair,
    JointFiber,
    SigmaMap,
    StarMap,
    ball_fiber_compare,
    ball_order_descriptor,
    bracket_sets,
    fiber_order_poset,
    generic_dirac_compare,
    grid_measures,
    measure_compare,
    product_measure_compare,
    sigma_bracket,
    sigma_fiber,
    sigma_measure_compare,
    sigma_point_compare,
    star_bracket,
    star_fiber,
    star_measure_compare,
    star_profile,
    star_S,
)
from fiberorder.order import Verdict, are_isomorphic, is_linear, make_preorder, quotient_to_poset

F = Fraction
fs = frozenset


def sigma():
    return SigmaMap(fs({1, 2, 3, 4}), fs({1, 2}), 2)


def star(k=2):
    return StarMap(("m", "a", "b"), ("w",), {"m": "w", "a": "w", "b": "w"}, "w", "m").power(k)


# sigma model


def test_sigma_fiber_example():
    assert sigma_fiber(sigma(), {1}) == [fs({1}), fs({1, 3}), fs({1, 4})]
    assert sigma_fiber(sigma(), {1, 2}) == [fs({1, 2})]
    assert len(sigma_fiber(SigmaMap(fs({1, 2}), fs({1}), 2), {1})) == 2


def test_sigma_point_examples():
    assert sigma_point_compare(fs({1}), fs({1, 3})) is Verdict.LE
    assert sigma_point_compare(fs({1, 3}), fs({1, 4})) is Verdict.EQUIVALENT
    assert sigma_point_compare(fs({1}), fs({1})) is Verdict.EQ


def test_sigma_bracket_examples():
    s = sigma()
    assert sigma_bracket(s, {1}, [fs({1, 3})]) == {fs({1, 3}), fs({1, 4})}
    assert sigma_bracket(s, {1}, [fs({1})]) == set(sigma_fiber(s, {1}))


def test_bad_base():
    with pytest.raises(BadBasePoint):
        sigma_fiber(sigma(), {3})


def test_sigma_measure_examples():
    s = sigma()
    nu = {fs({1}): F(1, 2), fs({1, 3}): F(1, 2)}
    nu2 = {fs({1, 4}): 1}
    assert sigma_measure_compare(FiberMeasurePair(s, fs({1}), nu, nu2)) is Verdict.LE
    assert sigma_measure_compare(FiberMeasurePair(s, fs({1}), nu, nu)) is Verdict.EQ
    s3 = SigmaMap(fs({1, 2, 3}), fs({1}), 3)
    # tails (1/2, 0) against (1/4, 1/4)
    a = {fs({1}): F(1, 2), fs({1, 2}): F(1, 2)}
    b = {fs({1}): F(3, 4), fs({1, 2, 3}): F(1, 4)}
    assert s3.profile(fs({1}), a) == (F(1, 2), 0) and s3.profile(fs({1}), b) == (F(1, 4), F(1, 4))
    assert sigma_measure_compare(FiberMeasurePair(s3, fs({1}), a, b)) is Verdict.INCOMPARABLE


def test_measure_must_live_on_fiber():
    with pytest.raises(InvalidMeasure):
        FiberMeasurePair(sigma(), fs({1}), {fs({2}): 1}, {fs({1}): 1})


@pytest.mark.parametrize("n,size", [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)])
def test_sigma_point_preorder_is_total_chain(n, size):
    s = SigmaMap(fs(range(1, n + 3)), fs(range(1, n + 1)), n)
    x = fs(range(1, size + 1))
    fib = sigma_fiber(s, x)
    pairs = [(a, b) for a in fib for b in fib if sigma_point_compare(a, b).is_le]
    P = make_preorder(fib, pairs)
    assert all(P.comparable(a, b) for a in fib for b in fib)
    Q, _ = quotient_to_poset(P)
    assert is_linear(Q) and len(Q) == n - size + 1


# star model


def test_star_S_examples():
    p = star()
    s = p.star
    assert star_S(s, ("m", "m")) == set()
    assert star_S(s, ("a", "b")) == {1, 2}
    assert star_S(s, ("a", "m")) == {1}


def test_star_bracket_examples():
    p = star()
    x = ("w", "w")
    fib = star_fiber(p, x)
    assert len(fib) == 9
    assert star_bracket(p, x, [("m", "m")]) == set(fib)
    B = star_bracket(p, x, [("a", "m")])
    assert B == {z for z in fib if z[0] in ("a", "b")} and len(B) == 6
    both = star_bracket(p, x, [("a", "m"), ("m", "a")])
    assert both == {z for z in fib if star_S(p.star, z)}


def test_star_measure_examples():
    p = star()
    x = ("w", "w")
    assert star_measure_compare(FiberMeasurePair(p, x, {("m", "m"): 1}, {("a", "a"): 1})) is Verdict.LE
    nu = {("a", "m"): F(1, 2), ("b", "b"): F(1, 2)}
    assert star_measure_compare(FiberMeasurePair(p, x, nu, nu)) is Verdict.EQ


def test_star_requires_single_nontrivial_fiber():
    with pytest.raises(ValueError):
        StarMap(("m", "a", "c"), ("w", "v"), {"m": "w", "a": "v", "c": "v"}, "w", "m")


def _grid_pairs(fiber, m):
    ms = grid_measures(fiber, m)
    return [(a, b) for a in ms for b in ms]


def test_star_reduces_to_pk_compare():
    p = star()
    x = ("w", "w")
    for a, b in _grid_pairs(star_fiber(p, x), 2):
        v = star_measure_compare(FiberMeasurePair(p, x, a, b))
        assert v is pk_compare(star_profile(p, x, a), star_profile(p, x, b))


@pytest.mark.parametrize("model,base", [
    (SigmaMap(fs({1, 2, 3, 4}), fs({1, 2}), 2), fs({1})),
    (SigmaMap(fs({1, 2, 3}), fs({1}), 3), fs()),
    (StarMap(("m", "a", "b"), ("w",), {"m": "w", "a": "w", "b": "w"}, "w", "m").power(2), ("w", "w")),
    (StarMap(("m", "a", "u"), ("w", "v"), {"m": "w", "a": "w", "u": "v"}, "w", "m").power(2), ("w", "v")),
])
def test_generic_agrees_with_closed_form(model, base):
    fib = model.fiber(base)
    def br(Y):
        return model.bracket(base, list(Y))
    brackets = bracket_sets(fib, br)
    m = 3 if len(fib) <= 4 else 2
    for a, b in _grid_pairs(fib, m):
        closed = measure_compare(FiberMeasurePair(model, base, a, b))
        assert generic_dirac_compare(fib, br, a, b, brackets) is closed


@pytest.mark.parametrize("model,base", [
    (SigmaMap(fs({1, 2, 3, 4}), fs({1, 2}), 2), fs({1})),
    (StarMap(("m", "a", "b"), ("w",), {"m": "w", "a": "w", "b": "w"}, "w", "m").power(2), ("w", "w")),
])
def test_dirac_measures_reproduce_point_order(model, base):
    fib = model.fiber(base)
    def br(Y):
        return model.bracket(base, list(Y))
    for y in fib:
        up = model.bracket(base, [y])
        for z in fib:
            v = generic_dirac_compare(fib, br, {y: 1}, {z: 1})
            # delta_y <= delta_z iff z lies in the bracket of y
            assert v.is_le == (z in up)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_bracket_monotone(data):
    for model, base in [(sigma(), fs({1})), (star(), ("w", "w"))]:
        fib = model.fiber(base)
        Y = data.draw(st.lists(st.sampled_from(fib), min_size=1, unique=True))
        extra = data.draw(st.lists(st.sampled_from(fib), unique=True))
        assert set(model.bracket(base, Y)) <= set(model.bracket(base, list(dict.fromkeys(Y + extra))))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_star_bracket_upward_closed(data):
    p = star()
    x = ("w", "w")
    fib = star_fiber(p, x)
    Y = data.draw(st.lists(st.sampled_from(fib), min_size=1, unique=True))
    B = star_bracket(p, x, Y)
    for z in B:
        for z2 in fib:
            if star_S(p.star, z2) >= star_S(p.star, z):
                assert z2 in B


def test_bracket_cap():
    with pytest.raises(FiberTooLarge):
        bracket_sets(list(range(17)), lambda Y: set(Y))


# products of measures


def test_product_measure_examples():
    s = sigma()
    x = fs({1})
    le = FiberMeasurePair(s, x, {fs({1}): 1}, {fs({1, 3}): 1})
    s3 = SigmaMap(fs({1, 2, 3}), fs({1}), 3)
    inc = FiberMeasurePair(s3, fs({1}), {fs({1}): F(1, 2), fs({1, 2}): F(1, 2)}, {fs({1}): F(3, 4), fs({1, 2, 3}): F(1, 4)})
    assert product_measure_compare([F(1, 2), F(1, 2)], [le, le]) is Verdict.LE
    assert product_measure_compare([F(1, 3), F(2, 3)], [le, inc]) is Verdict.INCOMPARABLE


# ball


def test_ball_compare_examples():
    zero = BallPoint({1: F(1, 2), 2: 0}, {2})
    quarter = BallPoint({1: F(1, 2), 2: F(1, 4)}, {2})
    assert ball_fiber_compare(zero, zero) is Verdict.EQ
    assert ball_fiber_compare(zero, quarter) is Verdict.LE
    a = BallPoint({1: 0, 2: F(1, 3), 3: 0}, {2, 3})
    b = BallPoint({1: 0, 2: 0, 3: F(-1, 3)}, {2, 3})
    assert ball_fiber_compare(a, b) is Verdict.EQ
    with pytest.raises(BaseMismatch):
        ball_fiber_compare(zero, BallPoint({1: F(1, 3), 2: 0}, {2}))


def test_ball_descriptor_examples():
    sphere = BallPoint({1: F(1, 2), 2: F(-1, 2)})
    inside = BallPoint({1: F(1, 4)})
    r, grid = ball_order_descriptor([sphere, sphere])
    assert r == 0 and len(grid) == 1
    r, grid = ball_order_descriptor([inside, inside, inside], m=1)
    assert r == 3 and len(grid) == 8
    r, grid = ball_order_descriptor([sphere, inside], m=3)
    assert r == 1 and is_linear(grid) and len(grid) == 4


# discretised fiber orders


def test_fiber_order_poset_examples():
    assert are_isomorphic(fiber_order_poset(sigma(), fs({1}), 2), build_ok_poset(1, 2)) is not None
    assert are_isomorphic(fiber_order_poset(star(), ("w", "w"), 2), build_pk_poset(2, 2)) is not None
    assert len(fiber_order_poset(sigma(), fs({1, 2}), 3)) == 1


def test_joint_fiber_bracket_is_union():
    s = sigma()
    J = JointFiber((s, s))
    bases = (fs({1}), fs({2}))
    fib = J.fiber(bases)
    assert len(fib) == 6
    B = J.bracket(bases, [(0, fs({1, 3})), (1, fs({2}))])
    assert B == {(0, fs({1, 3})), (0, fs({1, 4}))} | {(1, z) for z in sigma_fiber(s, fs({2}))}
