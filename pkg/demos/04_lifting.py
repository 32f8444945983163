"""Splitting masses to clear thresholds, and pulling a measure back along a surjection."""

from fractions import Fraction as F

from fiberorder import (
    DiscreteSurjection,
    Infeasible,
    LiftInstance,
    construct_witness,
    image_membership,
    solve_lift,
)

inst = LiftInstance(2, (F(1, 4), F(1, 4)), {(1,): F(1, 2), (2,): F(1, 4), (1, 2): F(1, 4)})
sol = solve_lift(inst)
for (A, i), v in sorted(sol.beta.items()):
    print(f"beta[{A}, {i}] = {v}")
print("row sums:", [sol.row_sum(i) for i in (1, 2)])

try:
    solve_lift(LiftInstance(1, (F(1, 2),), {(1,): F(1, 2)}))
except Infeasible as exc:
    print("infeasible:", exc.payload())

g = {"a1": "p", "a2": "p", "b1": "q", "c1": "r"}
s = DiscreteSurjection(g.keys(), {"p", "q", "r"}, g)
U = [{"a1", "b1"}, {"a2"}]
c = [F(1, 3), F(1, 5)]
lam = {"p": F(1, 2), "q": F(1, 4), "r": F(1, 4)}
print("in image:", image_membership(s, U, c, lam))
print("witness:", construct_witness(s, U, c, lam))
