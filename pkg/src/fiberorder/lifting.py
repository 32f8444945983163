"""Lifting probability measures through a finite surjection.

``solve_lift`` splits masses ``alpha_A`` among the members of ``A`` so that
every index ``i`` collects strictly more than ``c_i``; it does so by pushing
a maximum flow through a three-layer network.  ``image_membership`` and
``construct_witness`` use it to decide whether a measure on ``L`` is the
image of a measure on ``K`` exceeding given thresholds on disjoint sets, and
to build such a preimage when it is.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import (
    InternalContradiction,
    Infeasible,
    InvalidMeasure,
    NotInImage,
    OverlappingSets,
)
from .flow import FlowNetwork, check_flow, max_flow
from .rational import as_rational

__all__ = [
    "LiftInstance",
    "LiftSolution",
    "DiscreteSurjection",
    "nonempty_subsets",
    "check_feasible",
    "lift_network",
    "solve_lift",
    "validate_lift",
    "check_measure",
    "pushforward",
    "image_membership",
    "construct_witness",
    "validate_witness",
]


def nonempty_subsets(n):
    """Nonempty subsets of ``{1..n}`` as sorted tuples, in lexicographic order."""
    out = [c for r in range(1, n + 1) for c in combinations(range(1, n + 1), r)]
    out.sort()
    return out


def _key(A):
    return tuple(sorted(A))


@dataclass(frozen=True)
class LiftInstance:
    """Thresholds ``c_1..c_n`` and masses ``alpha_A`` for nonempty ``A``.

    ``alpha`` maps sorted tuples to rationals; missing subsets carry 0.
    """

    n: int
    c: tuple
    alpha: dict = field(hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a lift instance needs n >= 1")
        c = tuple(as_rational(x) for x in self.c)
        if len(c) != self.n:
            raise ValueError(f"expected {self.n} thresholds, got {len(c)}")
        alpha = {}
        for A, value in self.alpha.items():
            key = _key(A)
            if not key or key[0] < 1 or key[-1] > self.n or len(set(key)) != len(key):
                raise ValueError(f"alpha is indexed by nonempty subsets of 1..{self.n}, got {A!r}")
            alpha[key] = alpha.get(key, Fraction(0)) + as_rational(value)
        if any(x < 0 for x in c) or any(v < 0 for v in alpha.values()):
            raise ValueError("thresholds and masses must be nonnegative")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "alpha", alpha)

    def a(self, A):
        return self.alpha.get(_key(A), Fraction(0))

    def slack(self, A):
        """Hall-type slack: mass of subsets meeting ``A`` minus ``sum(c_i for i in A)``."""
        A = set(A)
        hit = sum((v for B, v in self.alpha.items() if A.intersection(B)), Fraction(0))
        return hit - sum((self.c[i - 1] for i in A), Fraction(0))


@dataclass(frozen=True)
class LiftSolution:
    """``beta[(A, i)]`` for ``i`` in ``A``; also records the internal flow check."""

    beta: dict = field(hash=False)
    flow_value: Fraction = None
    cut_capacity: Fraction = None

    def row_sum(self, i):
        return sum((v for (A, j), v in self.beta.items() if j == i), Fraction(0))


def check_feasible(inst):
    """``None`` when every strict inequality holds, else the first violated subset.

    Subsets are scanned in lexicographic order of their sorted tuples.
    """
    for A in nonempty_subsets(inst.n):
        if inst.slack(A) <= 0:
            return A
    return None


def lift_network(inst):
    """The three-layer network behind :func:`solve_lift`.

    Returns ``(net, raised_thresholds, M)``.  Vertices are ``("0", 0)``
    (source), ``("1", i)``, ``("2", A)`` and ``("3", 0)`` (sink).
    """
    n = inst.n
    subsets = nonempty_subsets(n)
    delta = min(inst.slack(A) for A in subsets) / (n + 1)
    c_raised = [ci + delta for ci in inst.c]
    M = 1 + sum(c_raised, Fraction(0))
    src, snk = ("0", 0), ("3", 0)
    verts = [src, snk] + [("1", i) for i in range(1, n + 1)] + [("2", A) for A in subsets]
    arcs = [(src, ("1", i), c_raised[i - 1]) for i in range(1, n + 1)]
    arcs += [(("1", i), ("2", A), M) for A in subsets for i in A]
    arcs += [(("2", A), snk, inst.a(A)) for A in subsets]
    return FlowNetwork(verts, arcs, src, snk), c_raised, M


def solve_lift(inst):
    """Split every ``alpha_A`` among ``A`` so each ``i`` receives more than ``c_i``.

    Thresholds are first raised to ``c'_i = c_i + delta`` with
    ``delta = min slack / (n + 1)``, a max-flow is pushed through
    source -> p_i (cap ``c'_i``) -> q_A (cap ``M``) -> sink (cap ``alpha_A``),
    and each ``q_A`` is topped up to ``alpha_A`` on its smallest index.
    """
    violated = check_feasible(inst)
    if violated is not None:
        raise Infeasible(violated)
    net, c_raised, _ = lift_network(inst)
    target = sum(c_raised, Fraction(0))
    res = max_flow(net)
    check_flow(net, res.flow)
    if res.value != target or res.cut_capacity != res.value:
        raise InternalContradiction(
            f"max-flow value {res.value} differs from sum of raised thresholds {target}"
        )

    subsets = nonempty_subsets(inst.n)
    beta = {}
    for A in subsets:
        into = {i: res.flow[(("1", i), ("2", A))] for i in A}
        deficit = inst.a(A) - sum(into.values(), Fraction(0))
        into[A[0]] += deficit
        for i in A:
            beta[(A, i)] = Fraction(into[i])
    sol = LiftSolution(beta=beta, flow_value=res.value, cut_capacity=res.cut_capacity)
    validate_lift(inst, sol)
    return sol


def validate_lift(inst, sol):
    """Raise ``ValueError`` unless ``sol`` splits every alpha exactly and beats every c_i."""
    for A in nonempty_subsets(inst.n):
        parts = [sol.beta.get((A, i), Fraction(0)) for i in A]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative beta on {A}")
        if sum(parts, Fraction(0)) != inst.a(A):
            raise ValueError(f"betas on {A} sum to {sum(parts)} instead of {inst.a(A)}")
    for i in range(1, inst.n + 1):
        if not sol.row_sum(i) > inst.c[i - 1]:
            raise ValueError(f"index {i} collects {sol.row_sum(i)}, not more than {inst.c[i - 1]}")
    return True


# measures on finite sets


def check_measure(mu, support=None):
    """Validate a ``{label: mass}`` probability measure; returns a Fraction-valued copy."""
    out = {}
    for x, v in mu.items():
        v = as_rational(v)
        if v < 0:
            raise InvalidMeasure(f"negative mass at {x!r}")
        if support is not None and x not in support:
            raise InvalidMeasure(f"mass placed outside the space at {x!r}")
        out[x] = v
    total = sum(out.values(), Fraction(0))
    if total != 1:
        raise InvalidMeasure(f"total mass is {total}, not 1")
    return out


def pushforward(nu, g):
    out = {}
    for x, v in nu.items():
        out[g[x]] = out.get(g[x], Fraction(0)) + v
    return out


def _ordered(labels):
    labels = list(labels)
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=repr)


@dataclass(frozen=True)
class DiscreteSurjection:
    """A map ``g: K -> L`` between finite label sets, onto ``L``.

    ``K`` is kept in a fixed total order; "first preimage" means first in it.
    """

    K: tuple
    L: tuple
    g: dict = field(hash=False)

    def __post_init__(self):
        K = tuple(_ordered(set(self.K)))
        L = tuple(_ordered(set(self.L)))
        g = dict(self.g)
        if set(g) != set(K):
            raise ValueError("g must be defined exactly on K")
        if not set(g.values()) <= set(L):
            raise ValueError("g takes values outside L")
        missing = set(L) - set(g.values())
        if missing:
            raise ValueError(f"g is not onto: {sorted(map(repr, missing))} have no preimage")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "g", g)

    def preimage(self, y):
        return [x for x in self.K if self.g[x] == y]

    def image(self, subset):
        return {self.g[x] for x in subset}


def _check_sets(s, U, c):
    U = [set(u) for u in U]
    if len(U) != len(c):
        raise ValueError("one threshold per set is required")
    seen = set()
    for u in U:
        if not u <= set(s.K):
            raise ValueError("sets must lie inside K")
        if seen & u:
            raise OverlappingSets("the sets U_i must be pairwise disjoint")
        seen |= u
    return U, [as_rational(x) for x in c]


def image_membership(s, U, c, lam):
    """Whether ``lam`` is the image of some ``nu`` with ``nu(U_i) > c_i`` for all ``i``.

    Decided by the subset criterion: ``lam(g(union of U_i, i in A)) > sum of c_i``
    for every nonempty ``A``.
    """
    U, c = _check_sets(s, U, c)
    lam = check_measure(lam, set(s.L))
    n = len(U)
    for r in range(1, n + 1):
        for A in combinations(range(n), r):
            covered = set().union(*(s.image(U[i]) for i in A))
            if not sum((lam.get(y, Fraction(0)) for y in covered), Fraction(0)) > sum(c[i] for i in A):
                return False
    return True


def _pattern(s, U, y):
    return tuple(i + 1 for i, u in enumerate(U) if any(s.g[x] == y for x in u))


def construct_witness(s, U, c, lam):
    """A measure ``nu`` on ``K`` with ``g_*(nu) = lam`` and ``nu(U_i) > c_i``.

    Raises :class:`NotInImage` when no such measure exists.  Points ``y``
    outside every ``g(U_i)`` send their mass to their first preimage; points of
    ``X_A`` split theirs over ``U_i`` (``i`` in ``A``) in the proportions
    ``beta[A, i] / alpha_A`` found by :func:`solve_lift`.
    """
    U, c = _check_sets(s, U, c)
    lam = check_measure(lam, set(s.L))
    if not image_membership(s, U, c, lam):
        raise NotInImage("the measure violates a subset inequality")
    n = len(U)
    nu = {x: Fraction(0) for x in s.K}
    pattern = {y: _pattern(s, U, y) for y in s.L}
    beta = {}
    alpha = {}
    if n:
        for y in s.L:
            if pattern[y] and lam.get(y, 0) > 0:
                alpha[pattern[y]] = alpha.get(pattern[y], Fraction(0)) + lam[y]
        beta = solve_lift(LiftInstance(n, tuple(c), alpha)).beta
    for y in s.L:
        mass = lam.get(y, Fraction(0))
        if mass == 0:
            continue
        A = pattern[y]
        if not A:
            nu[s.preimage(y)[0]] += mass
            continue
        for i in A:
            x = next(x for x in s.preimage(y) if x in U[i - 1])
            nu[x] += beta[(A, i)] / alpha[A] * mass
    validate_witness(s, U, c, lam, nu)
    return nu


def validate_witness(s, U, c, lam, nu):
    """Raise ``ValueError`` unless ``nu`` pushes to ``lam`` and clears every threshold strictly."""
    nu = check_measure(nu, set(s.K))
    lam = {y: as_rational(v) for y, v in lam.items() if as_rational(v) != 0}
    img = {y: v for y, v in pushforward(nu, s.g).items() if v != 0}
    if img != lam:
        raise ValueError("pushforward of the witness differs from the target measure")
    for i, (u, ci) in enumerate(zip(U, c), start=1):
        got = sum((nu[x] for x in u), Fraction(0))
        if not got > as_rational(ci):
            raise ValueError(f"U_{i} receives {got}, not more than {ci}")
    return True
