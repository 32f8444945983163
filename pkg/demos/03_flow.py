"""Exact max-flow with a matching minimum cut."""

from fractions import Fraction as F

from fiberorder import FlowNetwork, max_flow

net = FlowNetwork(
    "sabt",
    [("s", "a", F(2, 3)), ("s", "b", 1), ("a", "b", F(1, 6)), ("a", "t", F(1, 3)), ("b", "t", F(5, 6))],
    "s",
    "t",
)
res = max_flow(net)
print("value", res.value, "= cut capacity", res.cut_capacity)
print("source side of the cut:", sorted(res.cut))
for arc, f in sorted(res.flow.items()):
    print(" ", arc, f)
