"""Exact max-flow / min-cut by shortest augmenting paths (Edmonds-Karp).

Capacities may be ints or Fractions; arithmetic never leaves the rationals.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import InvalidNetwork
from .rational import as_rational

__all__ = ["FlowNetwork", "FlowResult", "max_flow", "min_cut", "check_flow"]


def _ordered(labels):
    labels = list(labels)
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=repr)


@dataclass(frozen=True)
class FlowNetwork:
    """Digraph with nonnegative rational capacities.

    Parallel arcs are merged by summing capacities at construction.
    """

    vertices: tuple
    arcs: tuple  # ((u, v, capacity), ...) after merging
    source: object
    sink: object

    def __init__(self, vertices, arcs, source, sink):
        verts = _ordered(set(vertices))
        known = set(verts)
        if source not in known or sink not in known:
            raise InvalidNetwork("source and sink must be vertices")
        if source == sink:
            raise InvalidNetwork("source and sink must differ")
        merged = {}
        for u, v, cap in arcs:
            if u not in known or v not in known:
                raise InvalidNetwork(f"arc ({u!r}, {v!r}) uses an unknown vertex")
            if u == v:
                raise InvalidNetwork(f"self-loop at {u!r}")
            cap = as_rational(cap) if not isinstance(cap, int) else cap
            if cap < 0:
                raise InvalidNetwork(f"negative capacity on ({u!r}, {v!r})")
            merged[(u, v)] = merged.get((u, v), 0) + cap
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "arcs", tuple((u, v, c) for (u, v), c in merged.items()))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "sink", sink)

    def capacity(self, u, v):
        for a, b, c in self.arcs:
            if (a, b) == (u, v):
                return c
        return 0

    def cut_capacity(self, U):
        U = set(U)
        return sum((c for u, v, c in self.arcs if u in U and v not in U), 0)


@dataclass(frozen=True)
class FlowResult:
    value: object
    flow: dict = field(repr=False)  # (u, v) -> value, one entry per arc
    cut: frozenset  # source side of a minimum cut
    cut_capacity: object


def _solve(net):
    verts = net.vertices
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    cap = [dict() for _ in range(n)]
    for u, v, c in net.arcs:
        cap[pos[u]][pos[v]] = c
    # skew-symmetric net flow; residual(u, v) = cap(u, v) - net(u, v)
    netf = [dict() for _ in range(n)]
    for a in range(n):
        for b in cap[a]:
            netf[a][b] = 0
            netf[b][a] = 0
    nbrs = [sorted(row) for row in netf]
    s, t = pos[net.source], pos[net.sink]
    value = 0

    def residual(u, v):
        return cap[u].get(v, 0) - netf[u][v]

    while True:
        parent = [-1] * n
        parent[s] = s
        queue = deque([s])
        while queue and parent[t] < 0:
            u = queue.popleft()
            for v in nbrs[u]:
                if parent[v] < 0 and residual(u, v) > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[t] < 0:
            break
        bottleneck = None
        v = t
        while v != s:
            u = parent[v]
            r = residual(u, v)
            if bottleneck is None or r < bottleneck:
                bottleneck = r
            v = u
        v = t
        while v != s:
            u = parent[v]
            netf[u][v] += bottleneck
            netf[v][u] -= bottleneck
            v = u
        value += bottleneck
    reach = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if v not in reach and residual(u, v) > 0:
                reach.add(v)
                queue.append(v)
    flow = {}
    for a in range(n):
        for b in cap[a]:
            f = netf[a][b]
            flow[(verts[a], verts[b])] = f if f > 0 else 0 * f
    cut = frozenset(verts[i] for i in reach)
    return value, flow, cut


def max_flow(net):
    """Maximum ``s-t`` flow value and an optimal flow.

    Returns a :class:`FlowResult` which also carries the minimum cut read off
    the final residual graph, so ``value == cut_capacity`` can be checked
    exactly by the caller.
    """
    value, flow, cut = _solve(net)
    return FlowResult(value=value, flow=flow, cut=cut, cut_capacity=net.cut_capacity(cut))


def min_cut(net):
    """``(capacity, U)`` where ``U`` is the source side reachable in the final residual graph."""
    res = max_flow(net)
    return res.cut_capacity, res.cut


def check_flow(net, flow):
    """Validate ``flow`` against capacities and conservation; return its value.

    Raises ``ValueError`` on the first violation.
    """
    balance = {v: 0 for v in net.vertices}
    for u, v, c in net.arcs:
        f = flow.get((u, v), 0)
        if not 0 <= f <= c:
            raise ValueError(f"flow {f} on ({u!r}, {v!r}) outside [0, {c}]")
        balance[u] -= f
        balance[v] += f
    for v, b in balance.items():
        if v not in (net.source, net.sink):
            if b != 0:
                raise ValueError(f"conservation fails at {v!r} (imbalance {b})")
    return -balance[net.source]
