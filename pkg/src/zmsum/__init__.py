"""Subgroup-sum function S(G) on small finite groups.

S(G) sums, over every subgroup H of G, the number of elements of H whose
order equals the exponent of H. This package computes S two independent
ways — by brute-force subgroup enumeration on permutation groups, and in
closed form on the (m1, n1, s) subgroup lattice of the metacyclic groups
ZM(m, n, r) — and ships a verifier that checks S(G) >= |G| with equality
exactly on the groups whose Sylow subgroups are all cyclic.
"""

from .groups import (
    CapExceeded,
    FiniteGroup,
    Subgroup,
    all_subgroups,
    alternating_group,
    cyclic_group,
    cyclic_subgroups,
    dicyclic_group,
    dihedral_group,
    direct_product,
    element_count_by_order,
    element_order,
    exponent,
    generate_group,
    is_cyclic,
    is_sylow_cyclic,
    metacyclic_group,
    phi_of_group,
    s_function_brute,
    symmetric_group,
)
from .numtheory import (
    divisors,
    euler_totient,
    factorize,
    geometric_sum_mod,
    mod_pow,
    multiplicative_order,
)
from .verifier import GroupSpec, TheoremReport, build_corpus, verify_theorem
from .zm import (
    LatticeEntry,
    LTriple,
    ZmParams,
    enumerate_L,
    enumerate_valid_r,
    is_cyclic_triple,
    s_function_formula,
    subgroup_of_triple,
    subgroup_order_formula,
    to_permutation_group,
    validate_zm_params,
    zm_element_order,
    zm_mul,
)

__version__ = "0.1.0"
