"""Cyclic subgroups, their Hasse diagram, and two ways to count its edges."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .groups import FiniteGroup, GroupError
from .numtheory import is_prime, omega, ratio

__all__ = [
    "ShortcutMismatch",
    "NonIntegerSum",
    "NotCoprime",
    "CyclicSubgroup",
    "CyclicPoset",
    "cyclic_subgroups",
    "hasse_cover_edges",
    "cyclic_poset",
    "edge_count_hasse",
    "edge_count_formula",
    "coprime_product_edge_count",
]


class ShortcutMismatch(AssertionError):
    """Generic cover computation disagrees with the prime-index rule."""


class NonIntegerSum(AssertionError):
    """The element-order sum came out fractional."""


class NotCoprime(GroupError):
    pass


@dataclass(frozen=True)
class CyclicSubgroup:
    elements: tuple[int, ...]
    min_generator: int

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class CyclicPoset:
    subgroups: tuple[CyclicSubgroup, ...]
    cover_edges: tuple[tuple[int, int], ...]

    def lower_covers(self, j: int) -> list[int]:
        return [i for i, jj in self.cover_edges if jj == j]

    def vertex_labels(self) -> list[str]:
        """``C{order}#{rank}``, the rank counting within one order."""
        seen: dict[int, int] = {}
        labels = []
        for h in self.subgroups:
            r = seen.get(h.order, 0)
            seen[h.order] = r + 1
            labels.append(f"C{h.order}#{r}")
        return labels


def cyclic_subgroups(G: FiniteGroup) -> list[CyclicSubgroup]:
    """Every cyclic subgroup once, sorted by (order, least generator).

    Each <a> is generated from the smallest index among its generators; the
    remaining generators a^k (gcd(k, o(a)) = 1) are marked and skipped.
    """
    n = G.order
    mul = G.mul
    seen = np.zeros(n, dtype=bool)
    subs = []
    for a in range(n):
        if seen[a]:
            continue
        d = int(G.elt_order[a])
        powers = [G.identity]
        x = a
        for _ in range(d - 1):
            powers.append(x)
            x = int(mul[x, a])
        for k in range(1, d + 1):
            if math.gcd(k, d) == 1:
                seen[powers[k % d]] = True
        subs.append(CyclicSubgroup(tuple(sorted(powers)), a))
    subs.sort(key=lambda h: (h.order, h.min_generator))
    return subs


def hasse_cover_edges(subs: Sequence[CyclicSubgroup], n: int | None = None) -> CyclicPoset:
    """Cover pairs (i, j): subgroup i lies directly below subgroup j.

    The covers are the strict containment relation minus its two-step
    composites. The result is checked against the rule "i < j and
    |j|/|i| prime", which must give the same pairs for cyclic subgroups.
    """
    subs = tuple(subs)
    s = len(subs)
    if n is None:
        n = max((max(h.elements) for h in subs), default=0) + 1
    member = np.zeros((s, n), dtype=np.int64)
    for i, h in enumerate(subs):
        member[i, list(h.elements)] = 1
    sizes = np.array([h.order for h in subs], dtype=np.int64)
    inter = member @ member.T
    below = (inter == sizes[:, None]) & (sizes[:, None] < sizes[None, :])
    b = below.astype(np.int64)
    covers = below & ((b @ b) == 0)

    shortcut = np.zeros_like(below)
    for i, j in zip(*np.nonzero(below)):
        shortcut[i, j] = is_prime(int(sizes[j] // sizes[i]))
    if not np.array_equal(covers, shortcut):
        i, j = np.argwhere(covers != shortcut)[0]
        raise ShortcutMismatch(
            f"cover({i},{j}) = {bool(covers[i, j])} but prime-index rule says {bool(shortcut[i, j])}"
        )
    edges = tuple((int(i), int(j)) for i, j in np.argwhere(covers))
    return CyclicPoset(subs, edges)


def cyclic_poset(G: FiniteGroup) -> CyclicPoset:
    return hasse_cover_edges(cyclic_subgroups(G), G.order)


def edge_count_hasse(G: FiniteGroup, poset: CyclicPoset | None = None) -> int:
    """Edge count of the Hasse diagram, checking down-degrees on the way.

    Every cyclic subgroup of order d has exactly omega(d) maximal subgroups.
    """
    if poset is None:
        poset = cyclic_poset(G)
    down = np.zeros(len(poset.subgroups), dtype=np.int64)
    for _, j in poset.cover_edges:
        down[j] += 1
    for j, h in enumerate(poset.subgroups):
        if down[j] != omega(h.order):
            raise ShortcutMismatch(f"subgroup {j} of order {h.order} has {down[j]} lower covers, expected {omega(h.order)}")
    return len(poset.cover_edges)


def edge_count_formula(G: FiniteGroup) -> int:
    """Sum of omega(o(a))/phi(o(a)) over all elements, in exact rationals."""
    orders, counts = np.unique(G.elt_order, return_counts=True)
    total = sum((int(c) * ratio(int(d)) for d, c in zip(orders, counts)), Fraction(0))
    if total.denominator != 1:
        raise NonIntegerSum(f"element-order sum {total} is not an integer")
    return int(total)


def coprime_product_edge_count(gs: Sequence[FiniteGroup]) -> int:
    """Edges of C(G_1 x ... x G_k) for pairwise coprime orders.

    sum_i |E_i| * prod_{j != i} |C_j|, from each factor's own lattice.
    """
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            if math.gcd(gs[i].order, gs[j].order) != 1:
                raise NotCoprime(f"orders {gs[i].order} and {gs[j].order} share a prime")
    posets = [cyclic_poset(g) for g in gs]
    edges = [edge_count_hasse(g, p) for g, p in zip(gs, posets)]
    verts = [len(p.subgroups) for p in posets]
    return sum(e * math.prod(v for j, v in enumerate(verts) if j != i) for i, e in enumerate(edges))
