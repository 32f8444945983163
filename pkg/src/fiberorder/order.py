"""Finite preordered and ordered sets.

Relations are stored densely as one Python ``int`` bitmask per element:
bit ``j`` of ``up[i]`` is set iff ``elements[i] <= elements[j]``.  Values are
immutable after construction, so posets can be shared freely.
"""

from collections import deque
from enum import Enum
from fractions import Fraction
from itertools import product as _cartesian

from .errors import (
    DuplicateLabel,
    NotAntisymmetric,
    NotTransitive,
    SizeOverflow,
    UnknownLabel,
)
from .rational import format_rational, size_cap

__all__ = [
    "Verdict",
    "verdict",
    "FinitePreorder",
    "FinitePoset",
    "make_preorder",
    "make_poset",
    "quotient_to_poset",
    "product",
    "chain",
    "antichain",
    "is_connected",
    "is_linear",
    "are_isomorphic",
    "incomparable_pairs",
    "label_str",
    "poset_to_json",
    "poset_from_json",
    "to_dot",
]

MAX_ELEMENTS = 4096


class Verdict(str, Enum):
    """Outcome of comparing two points of a (pre)ordered set."""

    LE = "LE"
    GE = "GE"
    EQ = "EQ"
    EQUIVALENT = "EQUIVALENT"  # mutually related but distinct points of a preorder
    INCOMPARABLE = "INCOMPARABLE"

    @property
    def is_le(self):
        return self in (Verdict.LE, Verdict.EQ, Verdict.EQUIVALENT)

    @property
    def is_ge(self):
        return self in (Verdict.GE, Verdict.EQ, Verdict.EQUIVALENT)


def verdict(le, ge):
    if le and ge:
        return Verdict.EQ
    if le:
        return Verdict.LE
    if ge:
        return Verdict.GE
    return Verdict.INCOMPARABLE


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _close(up):
    """Reflexive-transitive closure of a list of bitmasks (Warshall)."""
    up = [mask | (1 << i) for i, mask in enumerate(up)]
    for k in range(len(up)):
        bit = 1 << k
        row = up[k]
        for i in range(len(up)):
            if up[i] & bit:
                up[i] |= row
    return up


class FinitePreorder:
    """A finite set with a reflexive, transitive relation."""

    __slots__ = ("_elements", "_index", "_up", "_down", "_covers")

    def __init__(self, elements, up, *, check=True):
        elements = tuple(elements)
        if len(elements) > MAX_ELEMENTS:
            raise SizeOverflow(f"{len(elements)} elements exceeds the cap of {MAX_ELEMENTS}")
        index = {}
        for i, label in enumerate(elements):
            if label in index:
                raise DuplicateLabel(f"duplicate label {label!r}")
            index[label] = i
        up = tuple(up)
        if len(up) != len(elements):
            raise ValueError("relation size does not match the element count")
        self._elements = elements
        self._index = index
        self._up = up
        self._down = None
        self._covers = None
        if check:
            self._validate()

    def _validate(self):
        for i, mask in enumerate(self._up):
            if not mask >> i & 1:
                raise NotTransitive(f"relation is not reflexive at {self._elements[i]!r}")
            for j in _bits(mask):
                if self._up[j] & ~mask:
                    raise NotTransitive(
                        f"{self._elements[i]!r} <= {self._elements[j]!r} but the relation is not closed"
                    )

    # basic access

    @property
    def elements(self):
        return self._elements

    @property
    def up_masks(self):
        return self._up

    @property
    def down_masks(self):
        if self._down is None:
            down = [0] * len(self._elements)
            for i, mask in enumerate(self._up):
                for j in _bits(mask):
                    down[j] |= 1 << i
            self._down = tuple(down)
        return self._down

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, label):
        return label in self._index

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown label {label!r}") from None

    def le(self, a, b):
        return bool(self._up[self.index(a)] >> self.index(b) & 1)

    def lt(self, a, b):
        return self.le(a, b) and not self.le(b, a)

    def equivalent(self, a, b):
        return self.le(a, b) and self.le(b, a)

    def comparable(self, a, b):
        return self.le(a, b) or self.le(b, a)

    def upset(self, a):
        return [self._elements[j] for j in _bits(self._up[self.index(a)])]

    def downset(self, a):
        return [self._elements[j] for j in _bits(self.down_masks[self.index(a)])]

    def pairs(self):
        """All related pairs ``(a, b)`` with ``a <= b``, reflexive ones included."""
        els = self._elements
        return [(els[i], els[j]) for i, mask in enumerate(self._up) for j in _bits(mask)]

    def restrict(self, labels):
        """Induced sub-(pre)order on ``labels``, keeping their given order."""
        idx = [self.index(a) for a in labels]
        pos = {i: k for k, i in enumerate(idx)}
        up = []
        for i in idx:
            mask = 0
            for j in _bits(self._up[i]):
                if j in pos:
                    mask |= 1 << pos[j]
            up.append(mask)
        return type(self)(labels, up, check=False)

    def relabel(self, mapping):
        """Same relation with every label ``a`` renamed to ``mapping[a]``."""
        return type(self)([mapping[a] for a in self._elements], self._up)

    def __eq__(self, other):
        if not isinstance(other, FinitePreorder):
            return NotImplemented
        if set(self._elements) != set(other._elements):
            return False
        return set(self.pairs()) == set(other.pairs())

    def __hash__(self):
        return hash((frozenset(self._elements), len(self.pairs())))

    def __repr__(self):
        name = type(self).__name__
        return f"<{name} with {len(self)} elements>"


class FinitePoset(FinitePreorder):
    """A finite preorder that is also antisymmetric."""

    __slots__ = ()

    def _validate(self):
        super()._validate()
        down = self.down_masks
        for i, mask in enumerate(self._up):
            if (mask & down[i]) != 1 << i:
                j = next(j for j in _bits(mask & down[i]) if j != i)
                raise NotAntisymmetric(
                    f"{self._elements[i]!r} and {self._elements[j]!r} are mutually related"
                )

    def covers(self):
        """Cover pairs ``(i, j)`` by index: ``i < j`` with nothing strictly between."""
        if self._covers is None:
            out = []
            for i, mask in enumerate(self._up):
                strict = mask & ~(1 << i)
                for j in _bits(strict):
                    if not strict & self.down_masks[j] & ~(1 << j):
                        out.append((i, j))
            self._covers = tuple(out)
        return self._covers

    def hasse_edges(self):
        els = self._elements
        return [(els[i], els[j]) for i, j in self.covers()]

    def minimal_elements(self):
        down = self.down_masks
        return [a for i, a in enumerate(self._elements) if down[i] == 1 << i]

    def maximal_elements(self):
        return [a for i, a in enumerate(self._elements) if self._up[i] == 1 << i]

    def heights(self):
        """Length of the longest chain ending at each element, by index."""
        order = sorted(range(len(self)), key=lambda i: bin(self.down_masks[i]).count("1"))
        height = [0] * len(self)
        for i in order:
            for j in _bits(self.down_masks[i] & ~(1 << i)):
                height[i] = max(height[i], height[j] + 1)
        return height

    def depths(self):
        order = sorted(range(len(self)), key=lambda i: bin(self._up[i]).count("1"))
        depth = [0] * len(self)
        for i in order:
            for j in _bits(self._up[i] & ~(1 << i)):
                depth[i] = max(depth[i], depth[j] + 1)
        return depth


def make_preorder(elements, pairs, close_transitively=False):
    """Build a preorder from explicit ``(a, b)`` pairs meaning ``a <= b``.

    Reflexive pairs are implicit. Without ``close_transitively`` the input must
    already be transitive, otherwise :class:`NotTransitive` is raised.
    """
    elements = list(elements)
    index = {}
    for i, label in enumerate(elements):
        if label in index:
            raise DuplicateLabel(f"duplicate label {label!r}")
        index[label] = i
    up = [1 << i for i in range(len(elements))]
    for a, b in pairs:
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise UnknownLabel(f"pair references unknown label {missing!r}")
        up[index[a]] |= 1 << index[b]
    if close_transitively:
        up = _close(up)
    return FinitePreorder(elements, up)


def make_poset(elements, pairs, close_transitively=False):
    P = make_preorder(elements, pairs, close_transitively)
    return FinitePoset(P.elements, P.up_masks)


def quotient_to_poset(P):
    """Collapse mutually related elements.

    Returns ``(Q, class_map)``. Each class is labelled by its first member in
    ``P.elements`` order, so a poset maps to itself with the identity map.
    """
    n = len(P)
    up = P.up_masks
    down = P.down_masks
    rep = [-1] * n
    reps = []
    for i in range(n):
        if rep[i] >= 0:
            continue
        cls = up[i] & down[i]
        for j in _bits(cls):
            rep[j] = len(reps)
        reps.append(i)
    new_up = []
    for i in reps:
        mask = 0
        for j in _bits(up[i]):
            mask |= 1 << rep[j]
        new_up.append(mask)
    labels = [P.elements[i] for i in reps]
    Q = FinitePoset(labels, new_up, check=False)
    class_map = {a: labels[rep[i]] for i, a in enumerate(P.elements)}
    return Q, class_map


def product(factors, cap=None):
    """Cartesian product with the pointwise order; elements are tuples.

    An empty list gives the one-point poset ``{()}``.
    """
    factors = list(factors)
    cap = size_cap() if cap is None else cap
    total = 1
    for F in factors:
        total *= len(F)
    if total > cap:
        raise SizeOverflow(f"product has {total} elements, cap is {cap}")
    if total > MAX_ELEMENTS:
        raise SizeOverflow(f"product has {total} elements, ground sets are capped at {MAX_ELEMENTS}")
    up = [1]
    size = 1
    for F in factors:
        b = len(F)
        new_up = [0] * (size * b)
        for i in range(size):
            targets = list(_bits(up[i]))
            for j, mask_j in enumerate(F.up_masks):
                acc = 0
                for t in targets:
                    acc |= mask_j << (t * b)
                new_up[i * b + j] = acc
        up = new_up
        size *= b
    elements = list(_cartesian(*(F.elements for F in factors)))
    return FinitePoset(elements, up, check=False)


def chain(n, labels=None):
    """The ``n``-element chain ``0 < 1 < ... < n-1``."""
    labels = list(range(n)) if labels is None else list(labels)
    up = [((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)]
    return FinitePoset(labels, up, check=False)


def antichain(n, labels=None):
    labels = list(range(n)) if labels is None else list(labels)
    return FinitePoset(labels, [1 << i for i in range(n)], check=False)


def is_connected(P):
    """Whether the comparability graph has a single component (vacuous when empty)."""
    n = len(P)
    if n == 0:
        return True
    up, down = P.up_masks, P.down_masks
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for i in _bits(frontier):
            nxt |= up[i] | down[i]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


def is_linear(P):
    up, down = P.up_masks, P.down_masks
    full = (1 << len(P)) - 1
    return all((up[i] | down[i]) == full for i in range(len(P)))


def incomparable_pairs(P):
    """Unordered incomparable pairs, by label."""
    up, down = P.up_masks, P.down_masks
    els = P.elements
    out = []
    for i in range(len(P)):
        rel = up[i] | down[i]
        for j in range(i + 1, len(P)):
            if not rel >> j & 1:
                out.append((els[i], els[j]))
    return out


# isomorphism


def _refined_colors(posets):
    """Joint colour refinement over several posets; returns per-poset colour lists."""
    colors = []
    for P in posets:
        h, d = P.heights(), P.depths()
        colors.append(
            [
                (bin(P.down_masks[i]).count("1"), bin(P.up_masks[i]).count("1"), h[i], d[i])
                for i in range(len(P))
            ]
        )
    colors = _reindex(colors)
    while True:
        sigs = []
        for P, col in zip(posets, colors):
            ups = [[] for _ in range(len(P))]
            downs = [[] for _ in range(len(P))]
            for i, j in P.covers():
                ups[i].append(col[j])
                downs[j].append(col[i])
            sigs.append(
                [(col[i], tuple(sorted(ups[i])), tuple(sorted(downs[i]))) for i in range(len(P))]
            )
        new = _reindex(sigs)
        if _color_count(new) == _color_count(colors):
            return new
        colors = new


def _reindex(signatures):
    table = {sig: k for k, sig in enumerate(sorted({s for sigs in signatures for s in sigs}))}
    return [[table[s] for s in sigs] for sigs in signatures]


def _color_count(colors):
    return len({c for cols in colors for c in cols})


def are_isomorphic(P, Q):
    """Find an order isomorphism ``P -> Q``.

    Returns a dict mapping labels of ``P`` to labels of ``Q``, or ``None``.
    Backtracking over candidates pruned by refined (down, up, height, depth)
    signatures; the search order is fixed, so the result is deterministic.
    """
    n = len(P)
    if n != len(Q):
        return None
    if n == 0:
        return {}
    if sum(map(_popcount, P.up_masks)) != sum(map(_popcount, Q.up_masks)):
        return None
    cp, cq = _refined_colors([P, Q])
    if sorted(cp) != sorted(cq):
        return None

    by_color = {}
    for j, c in enumerate(cq):
        by_color.setdefault(c, []).append(j)

    order = _search_order(P, cp)
    pu, pd = P.up_masks, P.down_masks
    qu, qd = Q.up_masks, Q.down_masks
    image = [-1] * n
    used = [False] * n

    def consistent(i, j):
        for a in order_assigned:
            b = image[a]
            if (pu[i] >> a & 1) != (qu[j] >> b & 1):
                return False
            if (pd[i] >> a & 1) != (qd[j] >> b & 1):
                return False
        return True

    order_assigned = []

    def extend(pos):
        if pos == n:
            return True
        i = order[pos]
        for j in by_color[cp[i]]:
            if used[j] or not consistent(i, j):
                continue
            image[i] = j
            used[j] = True
            order_assigned.append(i)
            if extend(pos + 1):
                return True
            order_assigned.pop()
            used[j] = False
            image[i] = -1
        return False

    if not extend(0):
        return None
    return {P.elements[i]: Q.elements[image[i]] for i in range(n)}


def _popcount(x):
    return bin(x).count("1")


def _search_order(P, colors):
    """Rarest colour first, then breadth-first along comparabilities."""
    n = len(P)
    freq = {}
    for c in colors:
        freq[c] = freq.get(c, 0) + 1
    remaining = set(range(n))
    order = []
    while remaining:
        start = min(remaining, key=lambda i: (freq[colors[i]], colors[i], i))
        queue = deque([start])
        remaining.discard(start)
        while queue:
            i = queue.popleft()
            order.append(i)
            nbrs = (P.up_masks[i] | P.down_masks[i]) & ~(1 << i)
            nxt = sorted(
                (j for j in _bits(nbrs) if j in remaining),
                key=lambda j: (freq[colors[j]], colors[j], j),
            )
            for j in nxt:
                remaining.discard(j)
                queue.append(j)
    return order


# serialisation


def label_str(label):
    """Stable string form of a label (tuples, frozensets and rationals included)."""
    if isinstance(label, str):
        return label
    if isinstance(label, bool):
        return str(label).lower()
    if isinstance(label, (int, Fraction)):
        return format_rational(label)
    if isinstance(label, tuple):
        return "(" + ",".join(label_str(x) for x in label) + ")"
    if isinstance(label, frozenset):
        items = sorted(label, key=_sort_key)
        return "{" + ",".join(label_str(x) for x in items) + "}"
    return str(label)


def _sort_key(x):
    return (0, x) if isinstance(x, (int, Fraction)) else (1, label_str(x))


def poset_to_json(P, covers_only=False):
    """``{"elements": [...], "le": [[a, b], ...]}``; reflexive pairs omitted."""
    names = [label_str(a) for a in P.elements]
    if len(set(names)) != len(names):
        raise DuplicateLabel("labels collide after conversion to strings")
    if covers_only:
        rel = P.covers()
    else:
        rel = [(i, j) for i, mask in enumerate(P.up_masks) for j in _bits(mask) if i != j]
    return {"elements": names, "le": [[names[i], names[j]] for i, j in rel]}


def poset_from_json(data, close_transitively=True):
    """Parse the JSON poset format. Transitive closure is applied by default."""
    elements = data["elements"]
    pairs = [tuple(p) for p in data.get("le", [])]
    for p in pairs:
        if len(p) != 2:
            raise ValueError(f"'le' entries must be pairs, got {list(p)!r}")
    return make_poset(elements, pairs, close_transitively=close_transitively)


def to_dot(P, name="P"):
    """Graphviz source for the Hasse diagram (cover relation only)."""
    if not isinstance(P, FinitePoset):
        P = quotient_to_poset(P)[0]
    names = [label_str(a) for a in P.elements]
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;"]
    for k, label in enumerate(names):
        lines.append(f"  n{k} [label={_dot_quote(label)}];")
    for i, j in P.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_id(name):
    return name if name.isidentifier() else _dot_quote(name)
