"""The ordered sets O_k and P_k on finite grids.

``O_k`` is the set of nondecreasing ``k``-tuples in ``[0, 1]`` with the
pointwise order.  ``P_k`` is the simplex of probability vectors indexed by the
subsets of ``{1..k}``, ordered by comparing the mass of every upward closed
family of subsets.  Subsets are bitmasks with element ``i`` at bit ``i - 1``.

Two independent deciders are provided for the ``P_k`` order: direct
enumeration of up-sets (:func:`pk_compare`, ``k <= 5``) and an upward-coupling
feasibility test solved as a max-flow problem (:func:`pk_compare_flow`).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import lcm

from .errors import DimensionMismatch, InvalidPoint, KTooLarge, SizeOverflow
from .flow import FlowNetwork, max_flow
from .order import FinitePoset, _bits, is_linear, verdict
from .rational import as_rational, size_cap

__all__ = [
    "OkPoint",
    "PkPoint",
    "UpsetFamily",
    "subset_mask",
    "mask_subset",
    "enumerate_upsets",
    "ok_compare",
    "pk_compare",
    "pk_compare_flow",
    "pk_coupling",
    "build_ok_poset",
    "build_pk_poset",
    "linear_downset_region",
    "MAX_UPSET_K",
]

MAX_UPSET_K = 5


def subset_mask(subset):
    """``{1, 3}`` -> ``0b101``."""
    mask = 0
    for i in subset:
        if i < 1:
            raise InvalidPoint(f"subset elements are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def mask_subset(mask):
    return frozenset(i + 1 for i in _bits(mask))


@dataclass(frozen=True)
class OkPoint:
    values: tuple

    def __post_init__(self):
        vals = tuple(as_rational(v) for v in self.values)
        for v in vals:
            if not 0 <= v <= 1:
                raise InvalidPoint(f"coordinate {v} outside [0, 1]")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise InvalidPoint(f"coordinates must be nondecreasing: {vals}")
        object.__setattr__(self, "values", vals)

    @property
    def k(self):
        return len(self.values)


@dataclass(frozen=True)
class PkPoint:
    """Probability vector over the ``2**k`` subsets of ``{1..k}``.

    ``masses[S]`` is the mass of the subset with bitmask ``S``.
    """

    k: int
    masses: tuple

    def __post_init__(self):
        if self.k < 0:
            raise InvalidPoint("k must be nonnegative")
        masses = tuple(as_rational(v) for v in self.masses)
        if len(masses) != 1 << self.k:
            raise InvalidPoint(f"expected {1 << self.k} masses for k={self.k}, got {len(masses)}")
        if any(v < 0 for v in masses):
            raise InvalidPoint("masses must be nonnegative")
        if sum(masses) != 1:
            raise InvalidPoint(f"masses sum to {sum(masses)}, not 1")
        object.__setattr__(self, "masses", masses)

    @classmethod
    def from_subsets(cls, k, masses):
        """Build from ``{subset: mass}``; unspecified subsets get mass 0."""
        vec = [Fraction(0)] * (1 << k)
        for subset, mass in masses.items():
            mask = subset_mask(subset)
            if mask >= 1 << k:
                raise InvalidPoint(f"subset {sorted(subset)} is not inside {{1..{k}}}")
            vec[mask] += as_rational(mass)
        return cls(k, tuple(vec))

    def mass_of(self, family_mask):
        return sum((self.masses[S] for S in _bits(family_mask)), Fraction(0))

    def as_subsets(self):
        return {mask_subset(S): m for S, m in enumerate(self.masses)}


@dataclass(frozen=True)
class UpsetFamily:
    """Upward closed family of subsets of ``{1..k}``.

    Stored by its minimal members (an antichain of bitmasks); ``mask`` has bit
    ``S`` set iff subset ``S`` belongs to the family.
    """

    k: int
    minimal: tuple

    @classmethod
    def from_mask(cls, k, mask):
        minimal = tuple(
            S for S in _bits(mask) if not any(T != S and T & S == T for T in _bits(mask))
        )
        return cls(k, minimal)

    @property
    def mask(self):
        return _upset_mask(self.k, self.minimal)

    def __contains__(self, subset):
        S = subset if isinstance(subset, int) else subset_mask(subset)
        return any(S & T == T for T in self.minimal)

    def members(self):
        return [mask_subset(S) for S in _bits(self.mask)]


@lru_cache(maxsize=None)
def _upset_mask(k, minimal):
    mask = 0
    for S in range(1 << k):
        if any(S & T == T for T in minimal):
            mask |= 1 << S
    return mask


@lru_cache(maxsize=None)
def _upset_masks(k):
    """Membership bitmasks of all up-sets of the Boolean lattice ``2^k``, ascending."""
    if k == 0:
        return (0, 1)
    prev = _upset_masks(k - 1)
    half = 1 << (k - 1)
    out = []
    # families split by whether k is in the member: F0 (without) must sit inside F1 (with)
    for f0 in prev:
        for f1 in prev:
            if f0 & ~f1 == 0:
                out.append(f0 | (f1 << half))
    return tuple(sorted(out))


def enumerate_upsets(k):
    """All upward closed families of subsets of ``{1..k}``, including empty and full."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > MAX_UPSET_K:
        raise KTooLarge(f"up-set enumeration is capped at k={MAX_UPSET_K}, got {k}")
    return [UpsetFamily.from_mask(k, mask) for mask in _upset_masks(k)]


def _upset_profile(t):
    """Masses of every up-set of ``2^k`` under ``t``, in :func:`_upset_masks` order."""
    return _profile_of(t.k, t.masses)


@lru_cache(maxsize=1 << 16)
def _profile_of(k, masses):
    return tuple(sum((masses[S] for S in _bits(mask)), Fraction(0)) for mask in _upset_masks(k))


def _check_same_k(t, s):
    if t.k != s.k:
        raise DimensionMismatch(f"cannot compare k={t.k} with k={s.k}")


def pk_compare(t, s):
    """Decide the ``P_k`` order by summing over every up-set (``k <= 5``)."""
    _check_same_k(t, s)
    if t.k > MAX_UPSET_K:
        raise KTooLarge(f"pk_compare enumerates up-sets and is capped at k={MAX_UPSET_K}")
    pt, ps = _upset_profile(t), _upset_profile(s)
    le = all(a <= b for a, b in zip(pt, ps))
    ge = all(a >= b for a, b in zip(pt, ps))
    return verdict(le, ge)


def _coupling_network(t, s):
    """Bipartite network: source -> A (cap t_A), A -> B for A <= B (cap 1), B -> sink (cap s_B).

    Capacities are scaled by a common denominator so the solve runs on ints.
    """
    scale = lcm(*(m.denominator for m in t.masses + s.masses))
    tw = [m.numerator * (scale // m.denominator) for m in t.masses]
    sw = [m.numerator * (scale // m.denominator) for m in s.masses]
    n = 1 << t.k
    src, snk = (0,), (3,)
    arcs = [(src, (1, A), w) for A, w in enumerate(tw) if w]
    arcs += [((2, B), snk, w) for B, w in enumerate(sw) if w]
    for A in range(n):
        if not tw[A]:
            continue
        for B in range(n):
            if sw[B] and A & B == A:
                arcs.append(((1, A), (2, B), scale))
    verts = [src, snk] + [(1, A) for A in range(n)] + [(2, B) for B in range(n)]
    return FlowNetwork(verts, arcs, src, snk), scale


def pk_coupling(t, s):
    """An upward coupling of ``t`` into ``s``, or ``None``.

    Returns ``{(A, B): mass}`` over bitmask pairs with ``A`` a subset of ``B``,
    whose row sums are ``t`` and column sums are ``s``.
    """
    _check_same_k(t, s)
    net, scale = _coupling_network(t, s)
    res = max_flow(net)
    if res.value != scale:
        return None
    gamma = {}
    for (u, v), f in res.flow.items():
        if u[0] == 1 and v[0] == 2 and f:
            gamma[(u[1], v[1])] = Fraction(f, scale)
    return gamma


def pk_compare_flow(t, s):
    """Decide the ``P_k`` order through coupling feasibility (no cap on ``k``)."""
    _check_same_k(t, s)
    le = pk_coupling(t, s) is not None
    ge = pk_coupling(s, t) is not None
    return verdict(le, ge)


def ok_compare(t, s):
    if t.k != s.k:
        raise DimensionMismatch(f"cannot compare k={t.k} with k={s.k}")
    le = all(a <= b for a, b in zip(t.values, s.values))
    ge = all(a >= b for a, b in zip(t.values, s.values))
    return verdict(le, ge)


def _check_grid_size(count):
    cap = min(size_cap(), 4096)
    if count > cap:
        raise SizeOverflow(f"grid has {count} points, cap is {cap}")


def ok_grid(k, m):
    """Nondecreasing tuples with coordinates in ``{0, 1/m, ..., 1}``, lexicographic."""
    return [
        tuple(Fraction(a, m) for a in combo)
        for combo in combinations_with_replacement(range(m + 1), k)
    ]


def _compositions(total, parts):
    """Weak compositions of ``total`` into ``parts`` nonnegative ints, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def pk_grid(k, m):
    """Mass vectors of ``P_k`` whose entries are multiples of ``1/m``."""
    return [tuple(Fraction(a, m) for a in comp) for comp in sorted(_compositions(m, 1 << k))]


def _grid_count(total, parts):
    from math import comb

    return comb(total + parts - 1, parts - 1) if parts else int(total == 0)


def _poset_from_profiles(labels, profiles):
    """Elements ordered by componentwise comparison of their profile vectors."""
    n = len(labels)
    up = []
    for i in range(n):
        pi = profiles[i]
        mask = 0
        for j in range(n):
            pj = profiles[j]
            if all(a <= b for a, b in zip(pi, pj)):
                mask |= 1 << j
        up.append(mask)
    return FinitePoset(labels, up, check=False)


def build_ok_poset(k, m):
    """Grid model of ``O_k``: labels are tuples of Fractions."""
    if k < 0 or m < 1:
        raise ValueError("need k >= 0 and m >= 1")
    from math import comb

    _check_grid_size(comb(m + k, k))
    pts = ok_grid(k, m)
    return _poset_from_profiles(pts, pts)


def build_pk_poset(k, m):
    """Grid model of ``P_k``: labels are mass vectors (tuples of Fractions by bitmask)."""
    if k < 0 or m < 1:
        raise ValueError("need k >= 0 and m >= 1")
    _check_grid_size(_grid_count(m, 1 << k))
    pts = pk_grid(k, m)
    if k <= MAX_UPSET_K:
        profiles = [_upset_profile(PkPoint(k, p)) for p in pts]
        return _poset_from_profiles(pts, profiles)
    up = []
    points = [PkPoint(k, p) for p in pts]
    for i, a in enumerate(points):
        mask = 0
        for j, b in enumerate(points):
            if i == j or pk_coupling(a, b) is not None:
                mask |= 1 << j
        up.append(mask)
    return FinitePoset(pts, up, check=False)


def linear_downset_region(P):
    """Elements whose principal down-set is a chain, and how many of them are maximal.

    Returns ``(H, maximal_count)`` with ``H`` in ``P.elements`` order.
    """
    down = P.down_masks
    H = []
    for i, a in enumerate(P.elements):
        if is_linear(P.restrict([P.elements[j] for j in _bits(down[i])])):
            H.append(a)
    if not H:
        return [], 0
    sub = P.restrict(H)
    return H, len(sub.maximal_elements())

