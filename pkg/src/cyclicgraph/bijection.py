"""Order-divisibility bijections G -> Z_n, found by max flow on order classes.

Elements only matter through their orders, so the flow network has one node
per element order of G and one per divisor of n:

    source -> G-class d   (capacity = #elements of order d in G)
    G-class d -> Z_n-class d'   (unbounded, only when d | d')
    Z_n-class d' -> sink  (capacity = phi(d'))

A saturating flow is expanded to elements by pairing ascending indices.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup
from .numtheory import divisors, phi

__all__ = [
    "OrderBijection",
    "Infeasible",
    "BijectionVerdict",
    "order_histogram",
    "cyclic_histogram",
    "class_flow",
    "find_order_bijection",
    "verify_order_bijection",
    "residue_order",
]


def order_histogram(G: FiniteGroup) -> dict[int, int]:
    return G.order_histogram()


def cyclic_histogram(n: int) -> dict[int, int]:
    return {d: phi(d) for d in divisors(n)}


def residue_order(n: int, r: int) -> int:
    return n // math.gcd(n, r)


@dataclass(frozen=True)
class OrderBijection:
    mapping: tuple[int, ...]
    flow: dict[tuple[int, int], int] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.mapping)


@dataclass(frozen=True)
class Infeasible:
    """No saturating flow. ``orders`` is a set of G element orders whose
    admissible Z_n capacity (``capacity``) falls short of their ``demand``."""

    orders: tuple[int, ...]
    demand: int
    capacity: int


@dataclass(frozen=True)
class BijectionVerdict:
    valid: bool
    first_violation: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


class _FlowNetwork:
    """Edmonds-Karp on an adjacency-list residual graph. Small graphs only."""

    def __init__(self, size: int):
        self.adj: list[list[int]] = [[] for _ in range(size)]
        self.cap: dict[tuple[int, int], int] = {}

    def add_edge(self, u: int, v: int, c: int) -> None:
        if (u, v) not in self.cap:
            self.adj[u].append(v)
            self.adj[v].append(u)
            self.cap.setdefault((v, u), 0)
        self.cap[u, v] = self.cap.get((u, v), 0) + c

    def _augmenting_path(self, s: int, t: int) -> list[int] | None:
        parent = {s: s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in parent and self.cap[u, v] > 0:
                    parent[v] = u
                    if v == t:
                        path = [t]
                        while path[-1] != s:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    queue.append(v)
        return None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while (path := self._augmenting_path(s, t)) is not None:
            push = min(self.cap[u, v] for u, v in zip(path, path[1:]))
            for u, v in zip(path, path[1:]):
                self.cap[u, v] -= push
                self.cap[v, u] += push
            total += push
        return total

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in seen and self.cap[u, v] > 0:
                    seen.add(v)
                    queue.append(v)
        return seen


def class_flow(hist: dict[int, int], n: int) -> dict[tuple[int, int], int] | Infeasible:
    """Transport the order classes of ``hist`` into those of Z_n.

    Returns the nonzero flows ``{(d, d'): amount}`` or an :class:`Infeasible`
    certificate taken from the source side of a minimum cut.
    """
    g_orders = sorted(hist)
    z_orders = divisors(n)
    gi = {d: 1 + i for i, d in enumerate(g_orders)}
    zi = {d: 1 + len(g_orders) + i for i, d in enumerate(z_orders)}
    source, sink = 0, 1 + len(g_orders) + len(z_orders)
    net = _FlowNetwork(sink + 1)
    unbounded = sum(hist.values())
    for d in g_orders:
        net.add_edge(source, gi[d], hist[d])
    for d in g_orders:
        for d2 in z_orders:
            if d2 % d == 0:
                net.add_edge(gi[d], zi[d2], unbounded)
    for d2 in z_orders:
        net.add_edge(zi[d2], sink, phi(d2))

    total = net.max_flow(source, sink)
    if total < unbounded:
        side = net.reachable(source)
        bad = tuple(d for d in g_orders if gi[d] in side)
        cap = sum(phi(d2) for d2 in z_orders if any(d2 % d == 0 for d in bad))
        return Infeasible(bad, sum(hist[d] for d in bad), cap)
    flows = {}
    for d in g_orders:
        for d2 in z_orders:
            if d2 % d == 0:
                pushed = net.cap[zi[d2], gi[d]]
                if pushed:
                    flows[d, d2] = pushed
    return flows


def find_order_bijection(G: FiniteGroup) -> OrderBijection | Infeasible:
    """A bijection f: G -> Z_n with o(a) | o(f(a)) for every a, if one exists."""
    n = G.order
    flows = class_flow(G.order_histogram(), n)
    if isinstance(flows, Infeasible):
        return flows
    pools_g = {}
    for a, d in enumerate(G.elt_order.tolist()):
        pools_g.setdefault(d, deque()).append(a)
    pools_z = {}
    for r in range(n):
        pools_z.setdefault(residue_order(n, r), deque()).append(r)
    mapping = [-1] * n
    for (d, d2), amount in sorted(flows.items()):
        for _ in range(amount):
            mapping[pools_g[d].popleft()] = pools_z[d2].popleft()
    return OrderBijection(tuple(mapping), flows)


def verify_order_bijection(G: FiniteGroup, f: OrderBijection) -> BijectionVerdict:
    n = G.order
    mapping = np.asarray(f.mapping, dtype=np.int64)
    if mapping.shape != (n,):
        return BijectionVerdict(False, None, f"mapping has length {mapping.size}, expected {n}")
    if np.any((mapping < 0) | (mapping >= n)):
        a = int(np.flatnonzero((mapping < 0) | (mapping >= n))[0])
        return BijectionVerdict(False, a, f"element {a} maps outside 0..{n - 1}")
    seen = {}
    for a, r in enumerate(mapping.tolist()):
        if r in seen:
            return BijectionVerdict(False, a, f"elements {seen[r]} and {a} both map to {r}")
        seen[r] = a
    for a, r in enumerate(mapping.tolist()):
        d, d2 = int(G.elt_order[a]), residue_order(n, r)
        if d2 % d:
            return BijectionVerdict(False, a, f"o({a}) = {d} does not divide o({r}) = {d2} in Z_{n}")
    return BijectionVerdict(True)
