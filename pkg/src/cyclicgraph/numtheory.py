"""Integer arithmetic behind the edge-count formulas.

Factorizations are plain trial division; every caller in this package stays
well below 10**6, so nothing fancier is warranted.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Factorization",
    "Relation",
    "EqualityClass",
    "Lemma23Verdict",
    "factorize",
    "omega_phi",
    "omega",
    "phi",
    "ratio",
    "divisors",
    "is_prime",
    "is_prime_power",
    "cyclic_edge_count",
    "lemma23_compare",
]


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


@lru_cache(maxsize=65536)
def _factor_tuple(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> Factorization:
    """Return the sorted prime factorization of ``n`` (empty for 1)."""
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    return Factorization(_factor_tuple(int(n)))


def omega_phi(d: int) -> tuple[int, int]:
    """Number of distinct prime divisors and Euler totient of ``d``."""
    f = factorize(d)
    tot = 1
    for p, e in f:
        tot *= p ** (e - 1) * (p - 1)
    return len(f), tot


def omega(d: int) -> int:
    return len(factorize(d))


def phi(d: int) -> int:
    return omega_phi(d)[1]


@lru_cache(maxsize=65536)
def ratio(d: int) -> Fraction:
    """omega(d) / phi(d) as an exact reduced fraction."""
    w, t = omega_phi(d)
    return Fraction(w, t)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_prime(n: int) -> bool:
    f = factorize(n) if n >= 1 else Factorization(())
    return len(f) == 1 and f.factors[0][1] == 1


def is_prime_power(n: int) -> bool:
    """True for p**a with a >= 1."""
    return n > 1 and len(factorize(n)) == 1


def cyclic_edge_count(n: int) -> int:
    """Edges of the cyclic subgroup graph of Z_n, in integer arithmetic.

    With n = prod p_i**n_i this is sum_i n_i * prod_{j != i} (n_j + 1).
    """
    exps = [e for _, e in factorize(n)]
    total = 0
    for i, e in enumerate(exps):
        total += e * math.prod(x + 1 for j, x in enumerate(exps) if j != i)
    return total


class Relation(enum.Enum):
    STRICT_GREATER = "StrictGreater"
    EQUAL = "Equal"
    OUT_OF_DOMAIN = "OutOfDomain"


class EqualityClass(enum.Enum):
    NOT_EQUAL = "NotEqual"
    SAME_VALUE = "SameValue"
    PRIME_POWER_TIMES_3 = "PrimePowerTimes3"


@dataclass(frozen=True)
class Lemma23Verdict:
    relation: Relation
    equality_class: EqualityClass = EqualityClass.NOT_EQUAL
    detail: str = ""


def lemma23_compare(d: int, d2: int) -> Lemma23Verdict:
    """Compare ratio(d) with ratio(d2) for odd d | d2, d >= 3.

    Inputs outside that domain get an ``OUT_OF_DOMAIN`` verdict instead of an
    exception. An in-domain pair that broke the inequality, or tied outside the
    two known equality cases, would also come back ``OUT_OF_DOMAIN`` with a
    ``detail`` saying so.
    """
    if d < 3:
        return Lemma23Verdict(Relation.OUT_OF_DOMAIN, detail="d < 3")
    if d % 2 == 0 or d2 % 2 == 0:
        return Lemma23Verdict(Relation.OUT_OF_DOMAIN, detail="even argument")
    if d2 % d:
        return Lemma23Verdict(Relation.OUT_OF_DOMAIN, detail="d does not divide d'")
    lo, hi = ratio(d), ratio(d2)
    if lo > hi:
        return Lemma23Verdict(Relation.STRICT_GREATER)
    if lo < hi:
        return Lemma23Verdict(Relation.OUT_OF_DOMAIN, detail=f"inequality fails: {lo} < {hi}")
    if d == d2:
        return Lemma23Verdict(Relation.EQUAL, EqualityClass.SAME_VALUE)
    f = factorize(d)
    if d2 == 3 * d and len(f) == 1 and f.factors[0][0] >= 5:
        return Lemma23Verdict(Relation.EQUAL, EqualityClass.PRIME_POWER_TIMES_3)
    return Lemma23Verdict(Relation.OUT_OF_DOMAIN, detail="equality outside the characterized cases")
