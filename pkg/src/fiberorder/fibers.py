"""Finite models of fiber orders.

Three families are modelled through the closed forms that describe their
fibers:

* :class:`SigmaMap` -- restriction ``x -> x & N`` on sets of size at most
  ``n``; fiber points are ordered by cardinality.
* :class:`StarMap` and its powers -- a surjection with one nontrivial fiber
  holding a bottom point ``m`` below a single class of equivalent points.
  In the ``n``-th power a fiber point ``z`` is described by ``S(z)``, the
  coordinates lying over ``varpi`` that avoid ``m``.
* :class:`BallPoint` -- coordinate projections of the l1 ball, compared by
  the l1 mass of the discarded coordinates.

Measures on a fiber are ``{point: Fraction}`` dicts.  Two measures over the
same Dirac base point are compared through the masses they give to the
bracket sets ``<y_1, ..., y_k>`` (see :func:`generic_dirac_compare`); each
family also has a closed-form comparator that must agree with it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as _cartesian
from math import comb

from .dominance import PkPoint, _compositions, enumerate_upsets, subset_mask
from .errors import BadBasePoint, BaseMismatch, FiberTooLarge, InvalidMeasure, SizeOverflow
from .order import FinitePoset, Verdict, chain, label_str, product, verdict
from .rational import as_rational, size_cap

__all__ = [
    "SigmaMap",
    "StarMap",
    "StarPower",
    "FiberMeasurePair",
    "BallPoint",
    "sigma_fiber",
    "sigma_point_compare",
    "sigma_bracket",
    "sigma_measure_compare",
    "star_fiber",
    "star_R",
    "star_S",
    "star_bracket",
    "star_measure_compare",
    "star_profile",
    "bracket_sets",
    "generic_dirac_compare",
    "measure_compare",
    "product_measure_compare",
    "JointFiber",
    "ball_fiber_compare",
    "ball_order_descriptor",
    "grid_measures",
    "fiber_order_poset",
    "MAX_GENERIC_FIBER",
]

MAX_GENERIC_FIBER = 16


def _sort_key(label):
    return (0, label) if isinstance(label, int) and not isinstance(label, bool) else (1, label_str(label))


def _set_key(s):
    return (len(s), tuple(sorted((_sort_key(a) for a in s))))


# sigma_n


@dataclass(frozen=True)
class SigmaMap:
    """``g(x) = x & N`` from sets of size ``<= n`` in ``M`` onto those in ``N``."""

    M: frozenset
    N: frozenset
    n: int

    def __post_init__(self):
        M, N = frozenset(self.M), frozenset(self.N)
        if not N < M:
            raise ValueError("N must be a proper subset of M")
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "N", N)

    @property
    def tail(self):
        """``M \\ N``, the coordinates forgotten by the map."""
        return self.M - self.N

    def check_base(self, x):
        x = frozenset(x)
        if not x <= self.N or len(x) > self.n:
            raise BadBasePoint(f"base point must be a subset of N with at most {self.n} elements")
        return x

    def fiber(self, x):
        return sigma_fiber(self, x)

    def bracket(self, x, ys):
        return sigma_bracket(self, x, ys)

    def profile(self, x, nu):
        """Tail masses ``nu{|w| >= |x| + j}`` for ``j = 1 .. n - |x|``."""
        x = self.check_base(x)
        return tuple(
            sum((v for w, v in nu.items() if len(w) >= len(x) + j), Fraction(0))
            for j in range(1, self.n - len(x) + 1)
        )


def sigma_fiber(s, x):
    """``{x | y : y in M \\ N, |y| <= n - |x|}``, ordered by size then elements."""
    x = s.check_base(x)
    tail = sorted(s.tail, key=_sort_key)
    room = s.n - len(x)
    out = [x | frozenset(y) for r in range(0, min(room, len(tail)) + 1) for y in combinations(tail, r)]
    return sorted(out, key=_set_key)


def sigma_point_compare(w, w2):
    """Fiber points of a sigma map are preordered by cardinality alone."""
    w, w2 = frozenset(w), frozenset(w2)
    if w == w2:
        return Verdict.EQ
    if len(w) == len(w2):
        return Verdict.EQUIVALENT
    return Verdict.LE if len(w) < len(w2) else Verdict.GE


def sigma_bracket(s, x, ws):
    ws = [frozenset(w) for w in ws]
    if not ws:
        raise ValueError("a bracket needs at least one point")
    fiber = sigma_fiber(s, x)
    for w in ws:
        if w not in fiber:
            raise BadBasePoint(f"{label_str(w)} is not in the fiber over {label_str(frozenset(x))}")
    low = min(len(w) for w in ws)
    return frozenset(w for w in fiber if len(w) >= low)


# (star) maps and their powers


@dataclass(frozen=True)
class StarMap:
    """Surjection ``g: K -> L`` with a single nontrivial fiber over ``varpi``.

    Inside that fiber ``m`` sits strictly below every other point and all
    other points are equivalent; everywhere else ``g`` is injective.
    """

    K: tuple
    L: tuple
    g: dict = field(hash=False)
    varpi: object = None
    m: object = None

    def __post_init__(self):
        K = tuple(sorted(set(self.K), key=_sort_key))
        L = tuple(sorted(set(self.L), key=_sort_key))
        g = dict(self.g)
        if set(g) != set(K) or set(g.values()) != set(L):
            raise ValueError("g must map K onto L")
        if self.varpi not in L:
            raise ValueError("varpi must be a point of L")
        if g.get(self.m) != self.varpi:
            raise ValueError("m must lie over varpi")
        for y in L:
            size = sum(1 for a in K if g[a] == y)
            if y == self.varpi and size < 2:
                raise ValueError("the fiber over varpi needs at least two points")
            if y != self.varpi and size != 1:
                raise ValueError(f"the fiber over {y!r} must be a single point")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "g", g)

    def preimage(self, y):
        return [a for a in self.K if self.g[a] == y]

    def power(self, n):
        return StarPower(self, n)


@dataclass(frozen=True)
class StarPower:
    """The ``n``-fold product map ``g^n: K^n -> L^n`` of a :class:`StarMap`."""

    star: StarMap
    n: int

    def check_base(self, x):
        x = tuple(x)
        if len(x) != self.n or any(xi not in self.star.L for xi in x):
            raise BadBasePoint(f"base point must be an {self.n}-tuple over L")
        return x

    def fiber(self, x):
        return star_fiber(self, x)

    def bracket(self, x, ys):
        return star_bracket(self, x, ys)

    def profile(self, x, nu):
        """Masses of ``{z : S(z) in F}`` for every up-set ``F`` of ``2^R(x)``."""
        x = self.check_base(x)
        R = star_R(self, x)
        pos = {i: k + 1 for k, i in enumerate(R)}
        fams = enumerate_upsets(len(R))
        S_of = {z: frozenset(pos[i] for i in star_S(self.star, z)) for z in nu}
        return tuple(
            sum((v for z, v in nu.items() if S_of[z] in F), Fraction(0)) for F in fams
        )


def star_fiber(p, x):
    x = p.check_base(x)
    return list(_cartesian(*(p.star.preimage(xi) for xi in x)))


def star_R(p, x):
    """Coordinates of ``x`` equal to ``varpi`` (1-based)."""
    x = p.check_base(x)
    return tuple(i for i, xi in enumerate(x, start=1) if xi == p.star.varpi)


def star_S(s, z):
    """Coordinates of ``z`` that lie over ``varpi`` but differ from ``m`` (1-based)."""
    return frozenset(
        i for i, zi in enumerate(z, start=1) if s.g[zi] == s.varpi and zi != s.m
    )


def star_bracket(p, x, ys):
    """``{z : S(z) contains S(y) for some y in ys}``."""
    if not ys:
        raise ValueError("a bracket needs at least one point")
    fiber = star_fiber(p, x)
    fiber_set = set(fiber)
    for y in ys:
        if tuple(y) not in fiber_set:
            raise BadBasePoint(f"{y!r} is not in the fiber over {x!r}")
    needs = [star_S(p.star, y) for y in ys]
    return frozenset(z for z in fiber if any(star_S(p.star, z) >= S for S in needs))


def star_profile(p, x, nu):
    """The ``P_k`` point ``t_A = nu{z : S(z) = A}`` with ``R(x)`` renumbered ``1..k``."""
    R = star_R(p, x)
    pos = {i: k + 1 for k, i in enumerate(R)}
    vec = [Fraction(0)] * (1 << len(R))
    for z, v in nu.items():
        vec[subset_mask(pos[i] for i in star_S(p.star, z))] += v
    return PkPoint(len(R), tuple(vec))


# measure pairs


@dataclass(frozen=True)
class FiberMeasurePair:
    """Two probability measures on the fiber of ``model`` over ``base``."""

    model: object
    base: object
    nu: dict = field(hash=False)
    nu_prime: dict = field(hash=False)

    def __post_init__(self):
        fiber = set(self.model.fiber(self.base))
        object.__setattr__(self, "nu", _check_on_fiber(self.nu, fiber))
        object.__setattr__(self, "nu_prime", _check_on_fiber(self.nu_prime, fiber))


def _check_on_fiber(nu, fiber):
    out = {}
    for z, v in nu.items():
        key = frozenset(z) if isinstance(z, (set, frozenset)) else z
        if key not in fiber:
            raise InvalidMeasure(f"mass at {z!r}, which is outside the fiber")
        v = as_rational(v)
        if v < 0:
            raise InvalidMeasure(f"negative mass at {z!r}")
        if v:
            out[key] = out.get(key, Fraction(0)) + v
    if sum(out.values(), Fraction(0)) != 1:
        raise InvalidMeasure("fiber measures must have total mass 1")
    return out


def _profile_verdict(a, b):
    return verdict(all(p <= q for p, q in zip(a, b)), all(p >= q for p, q in zip(a, b)))


def sigma_measure_compare(pair):
    """Compare tail masses ``nu{|w| >= |x| + j}`` for every ``j``."""
    if not isinstance(pair.model, SigmaMap):
        raise TypeError("sigma_measure_compare needs a SigmaMap pair")
    m = pair.model
    return _profile_verdict(m.profile(pair.base, pair.nu), m.profile(pair.base, pair.nu_prime))


def star_measure_compare(pair):
    """Compare ``nu{z : S(z) in F}`` over every up-set ``F`` of subsets of ``R(x)``."""
    if not isinstance(pair.model, StarPower):
        raise TypeError("star_measure_compare needs a StarPower pair")
    m = pair.model
    return _profile_verdict(m.profile(pair.base, pair.nu), m.profile(pair.base, pair.nu_prime))


def measure_compare(pair):
    """Closed-form comparator for whichever family ``pair.model`` belongs to."""
    if isinstance(pair.model, SigmaMap):
        return sigma_measure_compare(pair)
    if isinstance(pair.model, StarPower):
        return star_measure_compare(pair)
    if isinstance(pair.model, JointFiber):
        return _profile_verdict(
            pair.model.profile(pair.base, pair.nu), pair.model.profile(pair.base, pair.nu_prime)
        )
    raise TypeError(f"no comparator for {type(pair.model).__name__}")


# generic comparison through brackets


def bracket_sets(fiber, bracket):
    """Distinct values of ``bracket(Y)`` over nonempty subsets ``Y`` of the fiber.

    ``bracket`` is called with a tuple of points.  Fibers above
    ``MAX_GENERIC_FIBER`` points (or the ``FIBERORDER_SIZE_CAP`` override, if
    smaller) are refused.
    """
    fiber = list(fiber)
    limit = min(MAX_GENERIC_FIBER, size_cap())
    if len(fiber) > limit:
        raise FiberTooLarge(f"fiber has {len(fiber)} points; subset enumeration capped at {limit}")
    seen = {}
    for r in range(1, len(fiber) + 1):
        for Y in combinations(fiber, r):
            B = frozenset(bracket(Y))
            seen.setdefault(B, None)
    return list(seen)


def generic_dirac_compare(fiber, bracket, nu, nu_prime, brackets=None):
    """``nu <= nu'`` iff ``nu<Y> <= nu'<Y>`` for every nonempty finite ``Y``.

    Pass ``brackets`` (from :func:`bracket_sets`) to reuse the enumeration
    across many comparisons on the same fiber.
    """
    if brackets is None:
        brackets = bracket_sets(fiber, bracket)
    le = ge = True
    for B in brackets:
        a = sum((v for z, v in nu.items() if z in B), Fraction(0))
        b = sum((v for z, v in nu_prime.items() if z in B), Fraction(0))
        if a > b:
            le = False
        if a < b:
            ge = False
        if not (le or ge):
            break
    return verdict(le, ge)


@dataclass(frozen=True)
class JointFiber:
    """Disjoint union of fibers over distinct base points of one map.

    Points are ``(index, point)``.  The bracket of a set ``Y`` is the union
    of the component brackets of its parts, because neighbourhoods of points
    over different base points can be taken with disjoint images.
    """

    models: tuple

    def fiber(self, bases):
        return [(i, z) for i, (mdl, x) in enumerate(zip(self.models, bases)) for z in mdl.fiber(x)]

    def bracket(self, bases, ys):
        out = set()
        for i, (mdl, x) in enumerate(zip(self.models, bases)):
            part = [z for j, z in ys if j == i]
            if part:
                out |= {(i, z) for z in mdl.bracket(x, part)}
        return frozenset(out)

    def profile(self, bases, nu):
        prof = ()
        for i, (mdl, x) in enumerate(zip(self.models, bases)):
            prof += mdl.profile(x, {z: v for (j, z), v in nu.items() if j == i})
        return prof


def product_measure_compare(weights, pairs):
    """Order of ``sum r_i nu_i`` against ``sum r_i nu'_i``: the product of the component orders."""
    weights = [as_rational(r) for r in weights]
    pairs = list(pairs)
    if len(weights) != len(pairs):
        raise ValueError("one weight per component pair")
    if any(r <= 0 for r in weights) or sum(weights) != 1:
        raise ValueError("weights must be positive and sum to 1")
    verdicts = [measure_compare(p) for p in pairs]
    return verdict(all(v.is_le for v in verdicts), all(v.is_ge for v in verdicts))


# l1 ball


@dataclass(frozen=True)
class BallPoint:
    """A point of the l1 ball ``B(M)``; ``tail`` lists the coordinates in ``M \\ N``."""

    coordinates: dict = field(hash=False)
    tail: frozenset = frozenset()

    def __post_init__(self):
        coords = {i: as_rational(v) for i, v in self.coordinates.items()}
        tail = frozenset(self.tail)
        if not tail <= set(coords):
            raise ValueError("tail coordinates must be among the coordinates")
        if sum(abs(v) for v in coords.values()) > 1:
            raise ValueError("l1 norm exceeds 1")
        object.__setattr__(self, "coordinates", coords)
        object.__setattr__(self, "tail", tail)

    @property
    def norm(self):
        return sum((abs(v) for v in self.coordinates.values()), Fraction(0))

    @property
    def tail_mass(self):
        return sum((abs(self.coordinates[i]) for i in self.tail), Fraction(0))

    def base(self):
        return {i: v for i, v in self.coordinates.items() if i not in self.tail}


def ball_fiber_compare(y1, y2):
    """Points over the same base compare by the l1 mass of their tail coordinates."""
    if y1.tail != y2.tail or set(y1.coordinates) != set(y2.coordinates):
        raise BaseMismatch("points use different coordinate splits")
    if y1.base() != y2.base():
        raise BaseMismatch("points lie over different base points")
    a, b = y1.tail_mass, y2.tail_mass
    return verdict(a <= b, a >= b)


def ball_order_descriptor(xs, m=2):
    """``(r, grid)`` for a point of a power of the ball.

    ``r`` counts coordinates strictly inside the unit sphere; ``grid`` is the
    product of ``r`` chains with ``m + 1`` elements, a finite stand-in for
    ``[0, 1]^r``.
    """
    xs = list(xs)
    r = sum(1 for x in xs if x.norm < 1)
    return r, product([chain(m + 1) for _ in range(r)])


# discretised fiber orders


def grid_measures(fiber, m):
    """All measures on ``fiber`` with masses in ``{0, 1/m, ..., 1}``, lexicographic."""
    fiber = list(fiber)
    return [
        {z: Fraction(a, m) for z, a in zip(fiber, comp) if a}
        for comp in _compositions(m, len(fiber))
    ]


def fiber_order_poset(model, x, m):
    """Grid measures on the fiber over ``x``, modulo equivalence, as a poset.

    Each class is represented by its lexicographically least mass vector and
    labelled by that vector (a tuple of Fractions in fiber order).
    """
    fiber = model.fiber(x)
    count = comb(m + len(fiber) - 1, len(fiber) - 1)
    cap = min(size_cap(), 4096)
    if count > cap:
        raise SizeOverflow(f"{count} grid measures exceeds the cap of {cap}")
    classes = {}
    for nu in grid_measures(fiber, m):
        prof = model.profile(x, nu)
        if prof not in classes:
            classes[prof] = tuple(nu.get(z, Fraction(0)) for z in fiber)
    profiles = list(classes)
    labels = [classes[p] for p in profiles]
    up = []
    for a in profiles:
        mask = 0
        for j, b in enumerate(profiles):
            if all(p <= q for p, q in zip(a, b)):
                mask |= 1 << j
        up.append(mask)
    return FinitePoset(labels, up, check=False)
