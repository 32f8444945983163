"""Slow, obviously-correct reference implementations used only by the tests."""

from fractions import Fraction
from itertools import combinations, permutations

from fiberorder.order import product


def brute_isomorphic(P, Q):
    """Try every bijection (small posets only)."""
    if len(P) != len(Q):
        return False
    a, b = P.elements, Q.elements
    for perm in permutations(range(len(b))):
        if all(
            P.le(a[i], a[j]) == Q.le(b[perm[i]], b[perm[j]])
            for i in range(len(a))
            for j in range(len(a))
        ):
            return True
    return False


def brute_covers(P):
    els = P.elements
    out = set()
    for x in els:
        for y in els:
            if P.lt(x, y) and not any(P.lt(x, z) and P.lt(z, y) for z in els):
                out.add((x, y))
    return out


def brute_incomparable(P):
    els = P.elements
    return sum(
        1 for i in range(len(els)) for j in range(i + 1, len(els)) if not P.comparable(els[i], els[j])
    )


def brute_upsets(k):
    """Every family of subsets of {1..k} (bitmasks) that is closed upward."""
    n = 1 << k
    out = []
    for fam in range(1 << n):
        members = [S for S in range(n) if fam >> S & 1]
        if all(fam >> T & 1 for S in members for T in range(n) if S & T == S):
            out.append(frozenset(members))
    return out


def brute_pk_le(t, s, families):
    return all(
        sum((t[S] for S in F), Fraction(0)) <= sum((s[S] for S in F), Fraction(0)) for F in families
    )


def brute_min_cut(net):
    others = [v for v in net.vertices if v not in (net.source, net.sink)]
    best = None
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            cap = net.cut_capacity({net.source, *extra})
            if best is None or cap < best:
                best = cap
    return best


def brute_reducible(P, iso=brute_isomorphic):
    """Layer search: P ~ Q x R puts copies of Q and R through any fixed point,
    meeting only there.  Try every such pair of subsets."""
    n = len(P)
    els = P.elements
    x0 = els[0]
    rest = els[1:]
    for a in range(2, n):
        if n % a or n // a < 2:
            continue
        b = n // a
        for qs in combinations(rest, a - 1):
            left = [e for e in rest if e not in qs]
            Q = P.restrict([x0, *qs])
            for rs in combinations(left, b - 1):
                R = P.restrict([x0, *rs])
                if iso(product([Q, R]), P):
                    return True
    return False
