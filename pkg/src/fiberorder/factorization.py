"""Direct-product decomposition of finite connected posets.

The Hasse diagram of ``Q x R`` is the Cartesian product of the Hasse diagrams
of ``Q`` and ``R``, so a split of ``P`` is a 2-colouring of its cover edges
into "Q-moves" and "R-moves".  In any such colouring the two opposite edges
of every 4-cycle get the same colour, and two adjacent edges that lie on no
common 4-cycle get the same colour as each other.  The transitive closure of
those constraints partitions the cover edges into classes; every split is a
union of classes.  We enumerate unions and keep those whose induced layers
really reassemble ``P`` as a product (checked against the full relation).
"""

from collections import Counter
from dataclasses import dataclass, field

from .errors import NotADecomposition, NotConnected, RefinementNotFound, TooLarge
from .order import (
    are_isomorphic,
    chain,
    is_connected,
    product,
)
from .rational import size_cap

__all__ = [
    "Factorization",
    "factor_once",
    "is_irreducible",
    "irreducible_factorization",
    "common_refinement",
    "invariant_key",
    "same_multiset",
    "DEFAULT_FACTOR_CAP",
]

DEFAULT_FACTOR_CAP = 64
MAX_EDGE_CLASSES = 16


def _factor_cap(cap):
    if cap is not None:
        return cap
    return min(size_cap(DEFAULT_FACTOR_CAP), size_cap())


def invariant_key(P):
    """Cheap isomorphism invariant used to sort factors deterministically."""
    hs = sorted(P.heights())
    ups = sorted(bin(m).count("1") for m in P.up_masks)
    return (len(P), len(P.covers()), tuple(hs), tuple(ups))


def _edge_classes(P):
    """Union-find classes of cover edges forced to share a colour."""
    edges = list(P.covers())
    eid = {}
    for k, (a, b) in enumerate(edges):
        eid[(a, b)] = k
        eid[(b, a)] = k
    adj = [set() for _ in range(len(P))]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)

    parent = list(range(len(edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for u in range(len(P)):
        nbrs = sorted(adj[u])
        for i, v in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                common = (adj[v] & adj[w]) - {u}
                if not common:
                    union(eid[(u, v)], eid[(u, w)])
                for x in common:
                    # square u-v-x-w: opposite sides agree
                    union(eid[(u, v)], eid[(w, x)])
                    union(eid[(u, w)], eid[(v, x)])
    groups = {}
    for k in range(len(edges)):
        groups.setdefault(find(k), []).append(k)
    return edges, [groups[r] for r in sorted(groups)]


def _components(n, edges, chosen):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in chosen:
        a, b = edges[k]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


def _try_split(P, edges, chosen, others):
    """Check whether the colouring (chosen | others) exhibits P as Q x R.

    Returns ``(Q, R, phi)`` with ``phi`` mapping P-labels to pairs of labels.
    """
    n = len(P)
    q_comp = _components(n, edges, chosen)  # Q-layers: connected by Q-moves
    r_comp = _components(n, edges, others)
    q_layers = Counter(q_comp)
    r_layers = Counter(r_comp)
    qsize = next(iter(q_layers.values()))
    rsize = next(iter(r_layers.values()))
    if any(c != qsize for c in q_layers.values()) or any(c != rsize for c in r_layers.values()):
        return None
    if qsize * rsize != n or qsize < 2 or rsize < 2:
        return None
    cell = {}
    for x in range(n):
        key = (q_comp[x], r_comp[x])
        if key in cell:
            return None
        cell[key] = x
    if len(cell) != n:
        return None
    base = 0
    # Q is the Q-layer through the base element, R the R-layer through it
    q_members = [x for x in range(n) if q_comp[x] == q_comp[base]]
    r_members = [x for x in range(n) if r_comp[x] == r_comp[base]]
    # coordinate of x: (member of Q-layer(base) sharing x's R-layer, member of R-layer(base) sharing x's Q-layer)
    q_of = {r_comp[y]: y for y in q_members}
    r_of = {q_comp[y]: y for y in r_members}
    coord = [(q_of[r_comp[x]], r_of[q_comp[x]]) for x in range(n)]
    up = P.up_masks
    for x in range(n):
        qx, rx = coord[x]
        for y in range(n):
            qy, ry = coord[y]
            expect = (up[qx] >> qy & 1) and (up[rx] >> ry & 1)
            if bool(up[x] >> y & 1) != bool(expect):
                return None
    els = P.elements
    Q = P.restrict([els[y] for y in q_members])
    R = P.restrict([els[y] for y in r_members])
    phi = {els[x]: (els[coord[x][0]], els[coord[x][1]]) for x in range(n)}
    return Q, R, phi


def _all_splits(P, cap):
    if not is_connected(P):
        raise NotConnected("product decompositions are only computed for connected posets")
    if len(P) > cap:
        raise TooLarge(f"{len(P)} elements exceeds the factorisation cap of {cap}")
    n = len(P)
    if n < 4:
        return []
    edges, classes = _edge_classes(P)
    if len(classes) > MAX_EDGE_CLASSES:
        raise TooLarge(f"{len(classes)} edge classes; subset search capped at {MAX_EDGE_CLASSES}")
    found = []
    c = len(classes)
    # class 0 always goes to Q, which removes the swap symmetry from the search
    for bits in range(0, 1 << (c - 1)):
        pick = 1 | (bits << 1)
        if pick == (1 << c) - 1:
            continue
        chosen = [e for i in range(c) if pick >> i & 1 for e in classes[i]]
        others = [e for i in range(c) if not pick >> i & 1 for e in classes[i]]
        split = _try_split(P, edges, chosen, others)
        if split is not None:
            found.append(split)
    return found


def _canon_pair(Q, R):
    return (Q, R) if (invariant_key(Q), len(Q)) <= (invariant_key(R), len(R)) else (R, Q)


def factor_once(P, cap=None):
    """All nontrivial splits ``P ~ Q x R`` up to swapping and isomorphism.

    Returns a list of ``(Q, R)`` subposets of ``P``; empty iff ``P`` is
    irreducible.  Pairs are ordered by the invariant keys of their factors.
    """
    cap = _factor_cap(cap)
    distinct = []
    for Q, R, _ in _all_splits(P, cap):
        Q, R = _canon_pair(Q, R)
        if any(
            len(Q) == len(Q2) and are_isomorphic(Q, Q2) is not None and are_isomorphic(R, R2) is not None
            for Q2, R2 in distinct
        ):
            continue
        distinct.append((Q, R))
    distinct.sort(key=lambda qr: (invariant_key(qr[0]), invariant_key(qr[1])))
    return distinct


def is_irreducible(P, cap=None):
    """True iff ``P`` admits no split into two non-singleton factors."""
    if not is_connected(P):
        raise NotConnected("irreducibility is only decided for connected posets")
    if len(P) <= 1:
        return True
    cap = _factor_cap(cap)
    return not _all_splits(P, cap)


@dataclass(frozen=True)
class Factorization:
    factors: tuple  # irreducible, non-singleton posets, sorted by invariant_key
    witness: dict = field(repr=False)  # element of product(factors) -> element of the input

    def __len__(self):
        return len(self.factors)


def _irreducible_parts(P, cap):
    if len(P) <= 1:
        return []
    splits = _all_splits(P, cap)
    if not splits:
        return [P]
    Q, R, _ = splits[0]
    return _irreducible_parts(Q, cap) + _irreducible_parts(R, cap)


def irreducible_factorization(P, cap=None):
    """Split ``P`` recursively until every factor is irreducible.

    The witness isomorphism from ``product(factors)`` onto ``P`` is found
    independently by :func:`are_isomorphic`, so a successful return is
    self-certifying.
    """
    if not is_connected(P):
        raise NotConnected("irreducible factorisation needs a connected poset")
    cap = _factor_cap(cap)
    parts = _irreducible_parts(P, cap)
    parts.sort(key=invariant_key)
    witness = are_isomorphic(product(parts), P)
    if witness is None:
        raise RefinementNotFound("recombined factors are not isomorphic to the input")
    return Factorization(tuple(parts), witness)


def same_multiset(fs1, fs2):
    """Whether two lists of posets agree as multisets up to isomorphism."""
    fs1, fs2 = list(fs1), list(fs2)
    if len(fs1) != len(fs2):
        return False
    used = [False] * len(fs2)
    for A in fs1:
        for j, B in enumerate(fs2):
            if not used[j] and are_isomorphic(A, B) is not None:
                used[j] = True
                break
        else:
            return False
    return True


def _iso_classes(parts):
    """Group posets into isomorphism classes, returning ``(representatives, class index per part)``."""
    reps = []
    idx = []
    for A in parts:
        for k, B in enumerate(reps):
            if are_isomorphic(A, B) is not None:
                idx.append(k)
                break
        else:
            reps.append(A)
            idx.append(len(reps) - 1)
    return reps, idx


def common_refinement(P, fam1, fam2, cap=None):
    """Common refinement grid of two product decompositions of ``P``.

    Returns ``Z`` with ``Z[i][j]`` a poset such that ``product(Z[i])`` is
    isomorphic to ``fam1[i]`` and ``product([Z[i][j] for i])`` to
    ``fam2[j]``.  Empty cells are one-point posets.
    """
    cap = _factor_cap(cap)
    if not is_connected(P):
        raise NotConnected("refinement is only guaranteed for connected posets")
    fam1, fam2 = list(fam1), list(fam2)
    for fam in (fam1, fam2):
        if any(len(F) == 0 for F in fam) or are_isomorphic(product(fam), P) is None:
            raise NotADecomposition("family does not multiply out to P")

    split1 = [irreducible_factorization(F, cap).factors for F in fam1]
    split2 = [irreducible_factorization(F, cap).factors for F in fam2]
    flat1 = [A for parts in split1 for A in parts]
    flat2 = [A for parts in split2 for A in parts]
    reps, idx = _iso_classes(flat1 + flat2)
    n1 = len(flat1)
    owner1 = [i for i, parts in enumerate(split1) for _ in parts]
    owner2 = [j for j, parts in enumerate(split2) for _ in parts]

    cells = [[[] for _ in fam2] for _ in fam1]
    for cls in range(len(reps)):
        left = [owner1[p] for p in range(n1) if idx[p] == cls]
        right = [owner2[p] for p in range(len(flat2)) if idx[n1 + p] == cls]
        if len(left) != len(right):
            raise RefinementNotFound("irreducible factor multisets differ between decompositions")
        # any pairing of equal-size lists is a valid transport of this class
        for i, j in zip(left, right):
            cells[i][j].append(reps[cls])

    Z = [[product(cells[i][j]) if cells[i][j] else chain(1) for j in range(len(fam2))] for i in range(len(fam1))]
    for i, F in enumerate(fam1):
        if are_isomorphic(product(Z[i]), F) is None:
            raise RefinementNotFound(f"row {i} does not recombine to fam1[{i}]")
    for j, F in enumerate(fam2):
        if are_isomorphic(product([Z[i][j] for i in range(len(fam1))]), F) is None:
            raise RefinementNotFound(f"column {j} does not recombine to fam2[{j}]")
    return Z

