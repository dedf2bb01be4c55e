import math

import pytest

from cyclicgraph.catalog import all_entries


def naive_order(G, a):
    x, t = a, 1
    while x != G.identity:
        x = int(G.mul[x, a])
        t += 1
    return t


def naive_cyclic_subgroups(G):
    """Set of <a> for every a, each built by repeated multiplication."""
    subs = set()
    for a in range(G.order):
        h, x = {G.identity}, a
        while x != G.identity:
            h.add(x)
            x = int(G.mul[x, a])
        subs.add(frozenset(h))
    return subs


def naive_cover_count(subs):
    subs = list(subs)
    count = 0
    for h in subs:
        for k in subs:
            if h < k and not any(h < m < k for m in subs):
                count += 1
    return count


def brute_phi(n):
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


@pytest.fixture(scope="session")
def catalog():
    return all_entries(200)
