"""Seeded random instances for tests, demos and the ``testdata`` tool."""

import random
from fractions import Fraction
from itertools import combinations

from .lifting import DiscreteSurjection, LiftInstance, check_feasible, nonempty_subsets
from .order import _close, FinitePoset, is_connected

__all__ = [
    "random_fraction",
    "random_lift_instance",
    "random_surjection_case",
    "random_neighborhood_measure",
    "random_measure",
    "random_connected_poset",
]


def random_fraction(rng, max_den=12, lo=0, hi=1):
    """Uniform-ish rational in ``[lo, hi]`` with denominator at most ``max_den``."""
    d = rng.randint(1, max_den)
    a, b = int(lo * d), int(hi * d)
    if Fraction(a, d) < lo:
        a += 1
    return Fraction(rng.randint(a, max(a, b)), d)


def random_measure(rng, labels, max_den=12):
    """Random probability vector on ``labels`` with a common denominator ``<= max_den``."""
    labels = list(labels)
    d = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, d) for _ in range(len(labels) - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [d])]
    return {x: Fraction(p, d) for x, p in zip(labels, parts) if p}


def random_lift_instance(rng, feasible=True, max_n=4, max_den=12, max_tries=10_000):
    """Rejection-sample a lift instance that is (in)feasible as requested."""
    for _ in range(max_tries):
        n = rng.randint(1, max_n)
        alpha = {}
        for A in nonempty_subsets(n):
            if rng.random() < 0.5:
                alpha[A] = random_fraction(rng, max_den, 0, 1) / (1 << (n - 1))
        scale = 1 if feasible else 2
        c = tuple(random_fraction(rng, max_den, 0, scale) / n for _ in range(n))
        inst = LiftInstance(n, c, alpha)
        if (check_feasible(inst) is None) == feasible:
            return inst
    raise RuntimeError("could not sample an instance of the requested kind")


def random_surjection_case(rng, max_k=12, max_l=6, max_n=3, max_den=12):
    """``(s, U, c, lam)``: a surjection, disjoint sets, thresholds and a target measure."""
    l = rng.randint(1, max_l)
    k = rng.randint(l, max_k)
    L = [f"y{j}" for j in range(l)]
    K = [f"x{i:02d}" for i in range(k)]
    images = L + [rng.choice(L) for _ in range(k - l)]
    rng.shuffle(images)
    s = DiscreteSurjection(K, L, dict(zip(K, images)))
    n = rng.randint(0, max_n)
    U = [set() for _ in range(n)]
    for x in K:
        slot = rng.randint(0, n)
        if slot < n:
            U[slot].add(x)
    c = [random_fraction(rng, max_den, 0, Fraction(2, n + 1)) for _ in range(n)]
    lam = random_measure(rng, L, max_den)
    return s, U, c, lam


def random_neighborhood_measure(rng, s, U, max_den=12, max_tries=1000):
    """A measure ``nu`` on ``K`` together with thresholds it strictly exceeds."""
    if any(not u for u in U):
        raise ValueError("an empty set cannot carry positive mass")
    for _ in range(max_tries):
        nu = random_measure(rng, s.K, max_den)
        masses = [sum((nu.get(x, Fraction(0)) for x in u), Fraction(0)) for u in U]
        if any(m == 0 for m in masses):
            continue
        c = [m * Fraction(rng.randint(0, 11), 12) for m in masses]
        return nu, c
    raise RuntimeError("no measure charging every set was found")


def random_connected_poset(rng, max_size=5, density=None):
    """Random connected poset on ``1..n`` (natural order is a linear extension)."""
    while True:
        n = rng.randint(1, max_size)
        p = rng.uniform(0.2, 0.8) if density is None else density
        up = [1 << i for i in range(n)]
        for i, j in combinations(range(n), 2):
            if rng.random() < p:
                up[i] |= 1 << j
        P = FinitePoset(list(range(1, n + 1)), _close(up), check=False)
        if is_connected(P):
            return P


def rng_for(seed):
    return random.Random(seed)
