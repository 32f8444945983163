"""Finite posets: products, quotients, isomorphism and DOT export."""

from fiberorder import (
    are_isomorphic,
    chain,
    incomparable_pairs,
    make_preorder,
    product,
    quotient_to_poset,
    to_dot,
)

grid = product([chain(2), chain(3)])
print("C2 x C3 has", len(grid), "elements and", len(incomparable_pairs(grid)), "incomparable pairs")

diamond = product([chain(2), chain(2)])
print("diamond vs C4 isomorphic?", are_isomorphic(diamond, chain(4)) is not None)

# a preorder with two equivalent tops collapses to a 2-chain
P = make_preorder("abc", [("a", "b"), ("a", "c"), ("b", "c"), ("c", "b")])
Q, classes = quotient_to_poset(P)
print("quotient classes:", classes)

print(to_dot(grid, name="grid"))
