"""Named small groups by order, with an honest completeness flag.

Orders 1..15 and every order of shape p, p^2 or pq are listed from the
classification and flagged complete. Any other order gets whatever the
built-in families produce (abelian groups, dihedral, dicyclic, split
metacyclic, symmetric/alternating and products of those with abelian
groups), deduplicated by invariants and flagged incomplete.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .groups import (
    Abelian,
    Alternating,
    Cyclic,
    Dicyclic,
    Dihedral,
    FiniteGroup,
    GroupError,
    GroupSpec,
    Product,
    SemidirectCyclic,
    Symmetric,
    construct_family,
)
from .numtheory import divisors, factorize

__all__ = [
    "MAX_CATALOG_ORDER",
    "CLASSIFICATION_COUNTS",
    "OrderOutOfRange",
    "CatalogEntry",
    "groups_of_order",
    "is_complete_order",
    "abelian_specs",
    "all_entries",
]

MAX_CATALOG_ORDER = 200

# number of isomorphism classes of groups of order n, n <= 15
CLASSIFICATION_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1}


class OrderOutOfRange(GroupError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    spec: GroupSpec
    label: str
    complete_for_order: bool
    nilpotent: bool
    cyclic: bool
    # set when another entry of this order has the same order histogram
    distinguished_by: str | None = None

    @property
    def order(self) -> int:
        return self.spec.order()

    def build(self) -> FiniteGroup:
        return _build(self.spec)


@lru_cache(maxsize=4096)
def _build(spec: GroupSpec) -> FiniteGroup:
    return construct_family(spec)


def _partitions(e: int, largest: int | None = None):
    largest = e if largest is None else largest
    if e == 0:
        yield ()
        return
    for k in range(min(e, largest), 0, -1):
        for rest in _partitions(e - k, k):
            yield (k,) + rest


def abelian_specs(n: int) -> list[GroupSpec]:
    """One spec per abelian group of order n, in invariant-factor form.

    Invariant factors are listed largest first, each divisible by the next.
    """
    per_prime = [[tuple(p**k for k in part) for part in _partitions(e)] for p, e in factorize(n)]
    combos: list[tuple[tuple[int, ...], ...]] = [()]
    for options in per_prime:
        combos = [c + (o,) for c in combos for o in options]
    specs = []
    for combo in combos:
        width = max((len(c) for c in combo), default=1)
        factors = [math.prod(c[i] for c in combo if i < len(c)) for i in range(width)]
        specs.append(Cyclic(factors[0]) if len(factors) == 1 else Abelian(factors))
    return specs


def _unit_order(k: int, m: int) -> int:
    t, x = 1, k % m
    while x != 1 % m:
        x = x * k % m
        t += 1
    return t


def _action_representatives(m: int, n: int) -> list[int]:
    """Nontrivial k mod m with k^n = 1, one per cyclic subgroup <k> of units.

    Generators of the same subgroup give isomorphic semidirect products.
    """
    seen: set[frozenset[int]] = set()
    reps = []
    for k in range(2, m):
        if math.gcd(k, m) != 1 or pow(k, n, m) != 1:
            continue
        sub = frozenset(pow(k, t, m) for t in range(_unit_order(k, m)))
        if sub not in seen:
            seen.add(sub)
            reps.append(k)
    return reps


def _complete_specs(n: int) -> list[GroupSpec] | None:
    small = {
        1: [Cyclic(1)],
        4: [Cyclic(4), Abelian([2, 2])],
        6: [Cyclic(6), Dihedral(3)],
        8: [Cyclic(8), Abelian([4, 2]), Abelian([2, 2, 2]), Dihedral(4), Dicyclic(2)],
        9: [Cyclic(9), Abelian([3, 3])],
        10: [Cyclic(10), Dihedral(5)],
        12: [Cyclic(12), Abelian([6, 2]), Dihedral(6), Alternating(4), Dicyclic(3)],
        14: [Cyclic(14), Dihedral(7)],
        15: [Cyclic(15)],
    }
    if n in small:
        return small[n]
    f = factorize(n)
    if len(f) == 1 and f.factors[0][1] == 1:
        return [Cyclic(n)]
    if len(f) == 1 and f.factors[0][1] == 2:
        p = f.factors[0][0]
        return [Cyclic(n), Abelian([p, p])]
    if len(f) == 2 and all(e == 1 for _, e in f):
        p, q = f.primes
        specs: list[GroupSpec] = [Cyclic(n)]
        if (q - 1) % p == 0:
            if p == 2:
                specs.append(Dihedral(q))
            else:
                specs.append(SemidirectCyclic(q, p, _action_representatives(q, p)[0]))
        return specs
    return None


def is_complete_order(n: int) -> bool:
    return _complete_specs(n) is not None


def _candidate_specs(n: int) -> list[GroupSpec]:
    specs: list[GroupSpec] = list(abelian_specs(n))
    if n % 2 == 0 and n // 2 >= 3:
        specs.append(Dihedral(n // 2))
    if n % 4 == 0 and n // 4 >= 2:
        specs.append(Dicyclic(n // 4))
    specs += _primitive_nonabelian(n)
    # nonabelian pieces times abelian groups
    for m in divisors(n):
        if m < 6 or m == n:
            continue
        bases = _primitive_nonabelian(m)
        if m % 2 == 0 and m // 2 >= 3:
            bases.append(Dihedral(m // 2))
        if m % 4 == 0 and m // 4 >= 2:
            bases.append(Dicyclic(m // 4))
        for base in bases:
            for ab in abelian_specs(n // m):
                specs.append(Product((base, ab)))
    return specs


def _primitive_nonabelian(n: int) -> list[GroupSpec]:
    specs: list[GroupSpec] = []
    for k in (4, 5):
        if math.factorial(k) == n:
            specs.append(Symmetric(k))
        if math.factorial(k) // 2 == n:
            specs.append(Alternating(k))
    for m in divisors(n):
        c = n // m
        if m < 3 or c < 2:
            continue
        for k in _action_representatives(m, c):
            specs.append(SemidirectCyclic(m, c, k))
    return specs


def _fingerprint(G: FiniteGroup) -> tuple:
    return (tuple(sorted(G.order_histogram().items())), G.is_abelian(), G.center_order())


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[CatalogEntry, ...]:
    """Catalog entries of order ``n``; the cyclic group always comes first."""
    if not 1 <= n <= MAX_CATALOG_ORDER:
        raise OrderOutOfRange(f"catalog covers orders 1..{MAX_CATALOG_ORDER}, got {n}")
    complete = _complete_specs(n)
    specs = complete if complete is not None else _candidate_specs(n)

    kept: list[tuple[GroupSpec, FiniteGroup]] = []
    prints: set[tuple] = set()
    for spec in specs:
        G = _build(spec)
        fp = _fingerprint(G)
        if fp in prints:
            if complete is not None:
                raise AssertionError(f"duplicate invariants among classified groups of order {n}: {spec.label}")
            continue
        prints.add(fp)
        kept.append((spec, G))

    hist_count: dict[tuple, int] = {}
    for _, G in kept:
        key = tuple(sorted(G.order_histogram().items()))
        hist_count[key] = hist_count.get(key, 0) + 1

    entries = []
    for spec, G in kept:
        key = tuple(sorted(G.order_histogram().items()))
        note = None
        if hist_count[key] > 1:
            note = "commutativity and center order"
        entries.append(
            CatalogEntry(
                spec=spec,
                label=spec.label,
                complete_for_order=complete is not None,
                nilpotent=G.is_nilpotent(),
                cyclic=int(G.elt_order.max()) == n,
                distinguished_by=note,
            )
        )
    return tuple(entries)


def all_entries(max_order: int = MAX_CATALOG_ORDER) -> list[CatalogEntry]:
    return [e for n in range(1, max_order + 1) for e in groups_of_order(n)]
