"""Dominance on P_2: up-set sums against upward couplings.

Coordinates are indexed by subsets of {1, 2} in bitmask order: {}, {1}, {2}, {1,2}.
"""

from fractions import Fraction as F

from fiberorder import PkPoint, enumerate_upsets, pk_compare, pk_compare_flow, pk_coupling

u = PkPoint(2, (F(7, 10), F(1, 10), F(1, 10), F(1, 10)))
for lam in (F(1, 10), F(1, 5), F(1, 4), F(3, 10)):
    x = PkPoint(2, (1 - lam, lam, 0, 0))
    print(f"x^{lam} vs u:", pk_compare(x, u).value, "/", pk_compare_flow(x, u).value)

x = PkPoint(2, (F(4, 5), F(1, 5), 0, 0))
print("coupling moving x^(1/5) up to u:")
for (A, B), mass in sorted(pk_coupling(x, u).items()):
    print(f"  {A:02b} -> {B:02b}: {mass}")

print("up-sets of 2^k:", [len(enumerate_upsets(k)) for k in range(6)])
