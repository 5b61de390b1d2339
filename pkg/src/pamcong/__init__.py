"""Partial automorphism monoids of finite-rank free group actions.

The package builds the monoid G wr I_n of partial automorphisms, classifies
its congruences through a small structural description, and checks every
classification against brute-force oracles on instances small enough to
enumerate.
"""

from .errors import PamcongError, SizeBoundError, ValidationError
from .groups import (
    FiniteGroup,
    Subgroup,
    all_normal_subgroups,
    all_subgroups,
    cayley_document,
    chief_length,
    direct_power,
    group_from_cayley_document,
    make_group,
    quotient,
)
from .partial_injections import (
    InCongruenceSpec,
    PartialInjection,
    UNDEF,
    count_in_congruences,
    enumerate_in_congruence_specs,
    enumerate_partial_injections,
    green_related,
    h_class_permutation,
    monoid_size,
)
from .wreath import WreathElement, WreathMonoid, wreath_size
from .invariant import (
    ClosedChain,
    InvariantQuadruple,
    InvariantSubgroup,
    build_K,
    enumerate_closed_chains,
    enumerate_invariant_normal,
    extract_quadruple,
    full_invariant,
    pi_join,
    pi_le,
    pi_meet,
    product_kernel,
    project,
    trivial_invariant,
)
from .wreath_normal import (
    NormalSubgroupTriple,
    WreathSymGroup,
    build_wreath_sym,
    classify_all_normal,
    count_normal_descriptors,
    extract_triple,
    full_triple,
    triple_join,
    triple_le,
    triple_meet,
    triple_to_subgroup,
    trivial_triple,
    validate_triple,
)
from .congruence import (
    CongruenceSpec,
    chi_spec,
    count_congruences,
    count_idempotent_separating,
    decompose,
    embed_spec,
    enumerate_all,
    extensionalize,
    identity_spec,
    kernel,
    lattice_dot,
    max_idempotent_separating_spec,
    rees_spec,
    restrict_to_In,
    spec_join,
    spec_le,
    spec_meet,
    spec_to_json,
    subsemigroup_to_chi,
    universal_spec,
)
from .oracle import (
    ExtensionalCongruence,
    FiniteSemigroupTable,
    GrowthReport,
    growth_experiment,
    oracle_bound,
)

__version__ = "0.1.0"

__all__ = [
    "PamcongError", "SizeBoundError", "ValidationError",
    "FiniteGroup", "Subgroup", "make_group", "group_from_cayley_document",
    "cayley_document", "all_subgroups", "all_normal_subgroups", "quotient",
    "direct_power", "chief_length",
    "PartialInjection", "InCongruenceSpec", "UNDEF", "monoid_size",
    "enumerate_partial_injections", "enumerate_in_congruence_specs",
    "count_in_congruences", "green_related", "h_class_permutation",
    "WreathElement", "WreathMonoid", "wreath_size",
    "InvariantSubgroup", "InvariantQuadruple", "ClosedChain", "build_K",
    "extract_quadruple", "enumerate_invariant_normal", "enumerate_closed_chains",
    "product_kernel", "project", "pi_le", "pi_meet", "pi_join",
    "trivial_invariant", "full_invariant",
    "WreathSymGroup", "NormalSubgroupTriple", "build_wreath_sym",
    "classify_all_normal", "count_normal_descriptors", "validate_triple",
    "extract_triple", "triple_to_subgroup", "trivial_triple", "full_triple",
    "triple_le", "triple_join", "triple_meet",
    "CongruenceSpec", "universal_spec", "identity_spec", "rees_spec",
    "max_idempotent_separating_spec", "enumerate_all", "count_congruences",
    "count_idempotent_separating", "extensionalize", "decompose",
    "spec_le", "spec_join", "spec_meet", "spec_to_json", "lattice_dot",
    "chi_spec", "kernel", "subsemigroup_to_chi", "restrict_to_In", "embed_spec",
    "ExtensionalCongruence", "FiniteSemigroupTable", "growth_experiment",
    "GrowthReport", "oracle_bound",
]
