"""Twisted group algebras over Z_2^n with cubic-form twistings.

The package builds graded algebras from cubic forms over GF(2), checks the
graded identities they satisfy, and mechanically verifies the equivalence and
periodicity statements for the standard families (the octonion-like series,
its split signatures, and the Clifford relatives).

Bit convention used everywhere: a point of GF(2)^n is packed into an integer
with variable 1 as the most significant bit, so the string "100" is the first
basis vector e_1 of GF(2)^3.
"""

from .gf2 import (
    GF2Matrix,
    apply_table,
    basis_vec,
    bit_of,
    block_diag,
    count_gl,
    enumerate_gl,
    identity,
    is_invertible,
    mat_apply,
    mat_from_rows_1based,
    mat_invert,
    mat_mul,
    random_invertible,
    rank,
    vec_add,
    vec_from_str,
    vec_to_str,
    weight,
)
from .forms import (
    PROFILE_PART_NAMES,
    CubicForm,
    TriGraph,
    add_forms,
    anf_from_truth_table,
    beta_polar,
    embed,
    graph_to_dot,
    invariant_profile,
    make_alpha_cl_n,
    make_alpha_cl_pq,
    make_alpha_n,
    make_alpha_pq,
    make_block_pattern,
    make_cl_block_sum,
    make_cl_minus2_source,
    make_cl_plus2_source,
    make_tilde,
    phi_polar,
    substitute,
    to_graph,
    weight_rule_check,
    x1_multiplier_expand,
    zero_count,
)
from .algebra import (
    GradedAlgebra,
    TwistingTable,
    beta_of,
    check_generating_axioms,
    check_graded_alternative,
    check_graded_associative,
    check_graded_commutative,
    check_phi_zero,
    extract_generating,
    generator_square,
    has_generating_function,
    multiplication_table,
    multiply_basis,
    phi_of,
    tsv_lines,
    twist_from_form,
    twist_standard,
)
from .equivalence import (
    RECIPE_NAMES,
    Equivalent,
    Inequivalent,
    Link,
    TransformRecipe,
    Unknown,
    brute_force_search,
    build_transform,
    cl_block_equivalences,
    compose_chain,
    exhaustive_signature_classes,
    find_stored_witness,
    heuristic_search,
    load_witness_store,
    odd_class_rep,
    profile_screen,
    reduction_stages,
    tilde_chain,
    tilde_equivalence,
    verify_equivalence,
    witness_key,
)
from .periodicity import (
    EXCLUDED_MIXED,
    GluedResult,
    GlueSpec,
    classify_signature,
    glue_algebras,
    glue_forms,
    is_simple,
    r2_factor_link,
    r2_glue_factor,
    verify_complex_periodicity,
    verify_o23_tensor_lemma,
    verify_real_periodicity,
)

__version__ = "0.1.0"

__all__ = [
    # gf2
    "GF2Matrix",
    "apply_table",
    "basis_vec",
    "bit_of",
    "block_diag",
    "count_gl",
    "enumerate_gl",
    "identity",
    "is_invertible",
    "mat_apply",
    "mat_from_rows_1based",
    "mat_invert",
    "mat_mul",
    "random_invertible",
    "rank",
    "vec_add",
    "vec_from_str",
    "vec_to_str",
    "weight",
    # forms
    "PROFILE_PART_NAMES",
    "CubicForm",
    "TriGraph",
    "add_forms",
    "anf_from_truth_table",
    "beta_polar",
    "embed",
    "graph_to_dot",
    "invariant_profile",
    "make_alpha_cl_n",
    "make_alpha_cl_pq",
    "make_alpha_n",
    "make_alpha_pq",
    "make_block_pattern",
    "make_cl_block_sum",
    "make_cl_minus2_source",
    "make_cl_plus2_source",
    "make_tilde",
    "phi_polar",
    "substitute",
    "to_graph",
    "weight_rule_check",
    "x1_multiplier_expand",
    "zero_count",
    # algebra
    "GradedAlgebra",
    "TwistingTable",
    "beta_of",
    "check_generating_axioms",
    "check_graded_alternative",
    "check_graded_associative",
    "check_graded_commutative",
    "check_phi_zero",
    "extract_generating",
    "generator_square",
    "has_generating_function",
    "multiplication_table",
    "multiply_basis",
    "phi_of",
    "tsv_lines",
    "twist_from_form",
    "twist_standard",
    # equivalence
    "RECIPE_NAMES",
    "Equivalent",
    "Inequivalent",
    "Link",
    "TransformRecipe",
    "Unknown",
    "brute_force_search",
    "build_transform",
    "cl_block_equivalences",
    "compose_chain",
    "exhaustive_signature_classes",
    "find_stored_witness",
    "heuristic_search",
    "load_witness_store",
    "odd_class_rep",
    "profile_screen",
    "reduction_stages",
    "tilde_chain",
    "tilde_equivalence",
    "verify_equivalence",
    "witness_key",
    # periodicity
    "EXCLUDED_MIXED",
    "GluedResult",
    "GlueSpec",
    "classify_signature",
    "glue_algebras",
    "glue_forms",
    "is_simple",
    "r2_factor_link",
    "r2_glue_factor",
    "verify_complex_periodicity",
    "verify_o23_tensor_lemma",
    "verify_real_periodicity",
    "__version__",
]
