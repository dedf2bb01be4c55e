import cmath
import itertools
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclicgraph.groups import (
    Abelian,
    CayleyFile,
    ClosureBoundExceeded,
    Cyclic,
    Dicyclic,
    Dihedral,
    GroupError,
    InvalidParameters,
    NoIdentity,
    NoInverse,
    NotAPermutation,
    NotAssociative,
    NotLatinSquare,
    PermFile,
    Product,
    SemidirectCyclic,
    SpecSyntaxError,
    Symmetric,
    construct_family,
    direct_product,
    element_order,
    from_cayley_table,
    from_permutation_generators,
    parse_spec,
    read_cayley_file,
    write_cayley_file,
)
from cyclicgraph.numtheory import divisors, phi

from conftest import naive_order


def _first_nonassociative_loop(n):
    """Backtrack over normalized Latin squares of order n (identity 0)
    and return the first one with two-sided inverses that is not associative."""
    T = [[None] * n for _ in range(n)]
    for i in range(n):
        T[0][i] = T[i][0] = i
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]

    def two_sided(T):
        return all((T[a][b] == 0) == (T[b][a] == 0) for a in range(n) for b in range(n))

    def assoc(T):
        return all(T[T[a][b]][c] == T[a][T[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def fill(k):
        if k == len(cells):
            return None if assoc(T) or not two_sided(T) else [row[:] for row in T]
        r, c = cells[k]
        for v in range(n):
            if v in T[r][:c] or any(T[i][c] == v for i in range(r)):
                continue
            T[r][c] = v
            found = fill(k + 1)
            if found:
                return found
        T[r][c] = None
        return None

    return fill(0)


def test_trivial_table():
    G = from_cayley_table([[0]])
    assert G.order == 1 and G.identity == 0
    assert list(G.elt_order) == [1]


def test_z2_table():
    G = from_cayley_table([[0, 1], [1, 0]])
    assert list(G.elt_order) == [1, 2]


def test_identity_not_assumed_at_zero():
    # Z3 relabelled so that the identity is element 2
    t = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = from_cayley_table(t)
    assert G.identity == 2
    assert sorted(G.elt_order) == [1, 3, 3]


def test_order5_loop_rejected_as_nonassociative():
    loop = _first_nonassociative_loop(5)
    assert loop is not None
    with pytest.raises(NotAssociative, match=r"\(a, b, c\)"):
        from_cayley_table(loop)
    # the same table passes once the triple scan is skipped
    from_cayley_table(loop, check_associativity=False)


def test_3x3_non_group_latin_square():
    # x*y = -x-y mod 3 is a Latin square with no identity
    t = [[(-x - y) % 3 for y in range(3)] for x in range(3)]
    with pytest.raises(NoIdentity):
        from_cayley_table(t)


def test_no_inverse():
    with pytest.raises(NoInverse, match="element 1"):
        from_cayley_table([[0, 1, 2], [1, 1, 1], [2, 1, 2]])


def test_not_latin():
    with pytest.raises(NotLatinSquare, match="row 1"):
        from_cayley_table([[0, 1, 2], [1, 0, 0], [2, 0, 1]])


@pytest.mark.parametrize("bad", [[[0, 1]], [[0, 5], [5, 0]], [], [[0.0]]])
def test_malformed_tables(bad):
    with pytest.raises(GroupError):
        from_cayley_table(bad)


def test_permutation_closure_cyclic():
    G = from_permutation_generators(3, [[1, 2, 0]])
    assert G.order == 3 and G.is_abelian()
    assert G.identity == 0


def test_permutation_closure_s3():
    G = from_permutation_generators(3, [[1, 0, 2], [0, 2, 1]])
    # brute force: all 6 permutations are reachable
    assert G.order == 6 == len(list(itertools.permutations(range(3))))
    assert not G.is_abelian()


def test_closure_bound():
    with pytest.raises(ClosureBoundExceeded):
        from_permutation_generators(4, [[1, 2, 3, 0]], closure_bound=3)


@pytest.mark.parametrize("gens", [[[0, 0, 1]], [[0, 1]], [[0, 1, 3]]])
def test_not_a_permutation(gens):
    with pytest.raises(NotAPermutation):
        from_permutation_generators(3, gens)


def test_permutation_table_is_composition():
    G = Symmetric(4).build()
    # recover each element's permutation from BFS order and check the table
    perms = [None] * G.order
    perms[0] = tuple(range(4))
    gens = Symmetric(4).generators()
    idx = {perms[0]: 0}
    order = [perms[0]]
    for x in order:
        for g in gens:
            y = tuple(x[g[i]] for i in range(4))
            if y not in idx:
                idx[y] = len(order)
                order.append(y)
    for a, pa in enumerate(order):
        for b, pb in enumerate(order):
            assert G.mul[a, b] == idx[tuple(pa[pb[i]] for i in range(4))]


def test_cyclic12_orders():
    G = Cyclic(12).build()
    assert G.order_histogram() == {d: phi(d) for d in divisors(12)}


def _dicyclic_matrix_histogram(n):
    """Orders in Dic_n realized as 2x2 complex matrices."""
    z = cmath.exp(1j * math.pi / n)
    a = np.array([[z, 0], [0, 1 / z]])
    x = np.array([[0, -1], [1, 0]], dtype=complex)
    key = lambda m: tuple(np.round(m, 8).ravel().tolist())
    elems = {key(np.eye(2)): np.eye(2, dtype=complex)}
    frontier = list(elems.values())
    while frontier:
        nxt = []
        for m in frontier:
            for g in (a, x):
                p = m @ g
                if key(p) not in elems:
                    elems[key(p)] = p
                    nxt.append(p)
        frontier = nxt
    hist = Counter()
    for m in elems.values():
        t, p = 1, m
        while key(p) != key(np.eye(2)):
            p = p @ m
            t += 1
        hist[t] += 1
    return dict(hist)


def test_dicyclic3_histogram():
    expected = {1: 1, 2: 1, 3: 2, 4: 6, 6: 2}
    assert _dicyclic_matrix_histogram(3) == expected
    assert Dicyclic(3).build().order_histogram() == expected


@pytest.mark.parametrize("n", [2, 4, 5, 6])
def test_dicyclic_matches_matrix_model(n):
    assert Dicyclic(n).build().order_histogram() == _dicyclic_matrix_histogram(n)


def test_dihedral_matches_polygon_symmetries():
    for n in range(3, 9):
        rot = [(i + 1) % n for i in range(n)]
        ref = [(-i) % n for i in range(n)]
        P = from_permutation_generators(n, [rot, ref])
        assert Dihedral(n).build().order_histogram() == P.order_histogram()


def test_semidirect_7_3_2():
    G = SemidirectCyclic(7, 3, 2).build()
    assert pow(2, 3, 7) == 1
    assert G.order == 21 and not G.is_abelian()
    from_cayley_table(G.mul)


@pytest.mark.parametrize("m, n, k", [(7, 3, 3), (6, 2, 3), (0, 2, 1), (5, 2, 5)])
def test_semidirect_invalid(m, n, k):
    with pytest.raises(InvalidParameters):
        SemidirectCyclic(m, n, k).build()


def test_direct_product_examples():
    G = direct_product([Cyclic(2).build(), Cyclic(3).build()])
    assert G.order == 6 and 6 in G.elt_order
    V = direct_product([Cyclic(2).build(), Cyclic(2).build()])
    assert V.order_histogram() == {1: 1, 2: 3}


def test_s3_times_z5_histogram():
    S3 = from_permutation_generators(3, [[1, 0, 2], [0, 2, 1]])
    Z5 = Cyclic(5).build()
    G = direct_product([S3, Z5])
    brute = Counter(
        math.lcm(naive_order(S3, a), naive_order(Z5, b)) for a in range(6) for b in range(5)
    )
    assert G.order_histogram() == dict(brute)
    assert dict(brute) == {1: 1, 2: 3, 3: 2, 5: 4, 10: 12, 15: 8}


def test_product_order_is_lcm():
    A, B = Dihedral(4).build(), Cyclic(9).build()
    G = direct_product([A, B])
    for a in range(A.order):
        for b in range(B.order):
            assert G.elt_order[a * B.order + b] == math.lcm(int(A.elt_order[a]), int(B.elt_order[b]))


def test_product_bound():
    with pytest.raises(ClosureBoundExceeded):
        direct_product([Cyclic(10).build(), Cyclic(10).build()], closure_bound=50)


def test_element_order_examples():
    Z12 = Cyclic(12).build()
    assert element_order(Z12, Z12.identity) == 1
    assert element_order(Z12, 1) == 12
    D3 = Dicyclic(3).build()
    center = [a for a in range(12) if D3.elt_order[a] == 2]
    assert len(center) == 1 and element_order(D3, center[0]) == 2


def test_element_orders_against_naive(catalog):
    for e in catalog:
        G = e.build()
        for a in range(G.order):
            assert G.elt_order[a] == naive_order(G, a)
        assert all(element_order(G, a) == G.elt_order[a] for a in range(0, G.order, 7))


def test_order_classes_divisible_by_phi(catalog):
    for e in catalog:
        for d, c in e.build().order_histogram().items():
            assert e.order % d == 0 and c % phi(d) == 0


def test_round_trip_validation(catalog):
    for e in catalog:
        G = e.build()
        H = from_cayley_table(G.mul, check_associativity=G.order <= 64)
        assert H.identity == G.identity
        assert np.array_equal(H.elt_order, G.elt_order)


@pytest.mark.parametrize("spec", ["SD[8,2,3]xZ3", "S5", "A5", "Dic12", "Ab[4,2,2]xZ5"])
def test_round_trip_full_associativity(spec):
    G = parse_spec(spec).build()
    from_cayley_table(G.mul)


def test_inverse_and_identity_invariants(catalog):
    for e in catalog[::5]:
        G = e.build()
        ar = np.arange(G.order)
        assert np.array_equal(G.mul[G.identity], ar)
        assert (G.mul[ar, G.inverse] == G.identity).all()


def test_table_is_read_only():
    G = Cyclic(4).build()
    with pytest.raises(ValueError):
        G.mul[0, 0] = 1


@given(st.lists(st.integers(1, 6), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_abelian_family(factors):
    G = Abelian(factors).build()
    assert G.order == math.prod(factors)
    assert G.is_abelian() and G.is_nilpotent()
    assert int(G.elt_order.max()) == math.lcm(*factors)


@given(st.lists(st.permutations(list(range(5))), min_size=1, max_size=2))
@settings(max_examples=40, deadline=None)
def test_random_permutation_groups_validate(gens):
    G = from_permutation_generators(5, gens)
    assert 120 % G.order == 0
    from_cayley_table(G.mul)


@pytest.mark.parametrize(
    "text, spec",
    [
        ("Z12", Cyclic(12)),
        ("D6", Dihedral(6)),
        ("Dic3", Dicyclic(3)),
        ("Q8", Dicyclic(2)),
        ("S4", Symmetric(4)),
        ("Ab[6,2]", Abelian([6, 2])),
        ("SD[7,3,2]", SemidirectCyclic(7, 3, 2)),
        ("Z3xZ3", Product([Cyclic(3), Cyclic(3)])),
        ("Ab[2,2]xD3", Product([Abelian([2, 2]), Dihedral(3)])),
    ],
)
def test_parse_spec(text, spec):
    assert parse_spec(text) == spec
    assert parse_spec(spec.label) == spec


@pytest.mark.parametrize("text", ["Z0", "Q12", "SD[7,3,3]", "Ab[0]"])
def test_parse_invalid_parameters(text):
    with pytest.raises(InvalidParameters):
        parse_spec(text)


@pytest.mark.parametrize("text", ["", "G12", "Z", "SD[1,2]", "@foo.txt", "Z3x"])
def test_parse_syntax(text):
    with pytest.raises(SpecSyntaxError):
        parse_spec(text)


def test_cayley_file_round_trip(tmp_path):
    G = Dicyclic(2).build()
    path = tmp_path / "q8.cayley"
    write_cayley_file(G, path)
    spec = parse_spec(f"@{path}")
    assert isinstance(spec, CayleyFile)
    H = construct_family(spec)
    assert np.array_equal(H.mul, G.mul)


def test_cayley_file_trailing_garbage(tmp_path):
    path = tmp_path / "z2.cayley"
    path.write_text("2\n0 1\n1 0\n0 1\n")
    with pytest.raises(GroupError, match="expected 2 table rows"):
        read_cayley_file(path)
    path.write_text("2\n0 1 1\n1 0\n")
    with pytest.raises(GroupError):
        read_cayley_file(path)
    path.write_text("2\n0 1\n1 0 junk\n")
    with pytest.raises(GroupError):
        read_cayley_file(path)


def test_perm_file(tmp_path):
    path = tmp_path / "s3.perms"
    path.write_text("3\n1 0 2\n0 2 1\n")
    spec = parse_spec(f"@{path}")
    assert isinstance(spec, PermFile)
    assert construct_family(spec).order == 6
    path.write_text("3\n1 0 2\n0 2 1 4\n")
    with pytest.raises(GroupError):
        construct_family(spec)
