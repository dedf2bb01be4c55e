"""Cyclic subgroup graphs of finite groups and their edge counts."""
from .bijection import (
    Infeasible,
    OrderBijection,
    find_order_bijection,
    order_histogram,
    verify_order_bijection,
)
from .catalog import CatalogEntry, groups_of_order
from .groups import (
    FiniteGroup,
    GroupError,
    construct_family,
    direct_product,
    element_order,
    from_cayley_table,
    from_permutation_generators,
    parse_spec,
)
from .lattice import (
    coprime_product_edge_count,
    cyclic_poset,
    cyclic_subgroups,
    edge_count_formula,
    edge_count_hasse,
    hasse_cover_edges,
)
from .numtheory import cyclic_edge_count, factorize, lemma23_compare, omega_phi, ratio

__version__ = "0.1.0"
