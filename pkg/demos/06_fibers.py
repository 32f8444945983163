"""Fiber orders of three model families, compared with the O- and P-grids."""

from fractions import Fraction as F

from fiberorder import (
    BallPoint,
    FiberMeasurePair,
    SigmaMap,
    StarMap,
    are_isomorphic,
    ball_order_descriptor,
    build_ok_poset,
    build_pk_poset,
    fiber_order_poset,
    linear_downset_region,
    measure_compare,
    sigma_fiber,
)

sigma = SigmaMap(frozenset({1, 2, 3, 4}), frozenset({1, 2}), 2)
x = frozenset({1})
print("sigma fiber over {1}:", [sorted(w) for w in sigma_fiber(sigma, x)])
nu = {frozenset({1}): F(1, 2), frozenset({1, 3}): F(1, 2)}
print("half-up vs all-up:", measure_compare(FiberMeasurePair(sigma, x, nu, {frozenset({1, 4}): 1})).value)
print("sigma grid ~ O_1 grid:", are_isomorphic(fiber_order_poset(sigma, x, 3), build_ok_poset(1, 3)) is not None)

star = StarMap(("m", "a", "b"), ("w",), {"m": "w", "a": "w", "b": "w"}, "w", "m").power(2)
P = fiber_order_poset(star, ("w", "w"), 2)
print("star^2 grid ~ P_2 grid:", are_isomorphic(P, build_pk_poset(2, 2)) is not None)
print("maximal elements of the linear region:", linear_downset_region(P)[1])

pts = [BallPoint({1: F(1, 2), 2: F(1, 2)}), BallPoint({1: F(1, 3)})]
r, grid = ball_order_descriptor(pts, m=3)
print("ball power: r =", r, "grid size", len(grid))
