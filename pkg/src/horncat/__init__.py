"""Finite engine for relational Horn theories and their categories of models."""

from .catops import (
    CoproductResult,
    PullbackResult,
    Sink,
    Source,
    coequalizer,
    coproduct,
    equalizer,
    final_lift,
    initial_lift,
    is_embedding,
    is_final_sink,
    is_initial_source,
    is_isomorphism,
    is_quotient,
    product,
    pullback,
)
from .core import (
    EQ,
    Edge,
    Morphism,
    Signature,
    Structure,
    compose,
    edge,
    identity,
    is_pi_morphism,
    preimage_edge_set,
    reflects_relations,
    structure,
    transport_edge,
    transport_edge_set,
    validate_structure,
)
from .extensivity import (
    ExtensivityReport,
    check_connected,
    check_coproduct_edge_formula,
    check_disjointness,
    check_distributivity,
    check_universality,
    final_density_sink,
    hom_count,
    hom_set,
    representing_object,
)
from .quantale import (
    DistMatrix,
    Quantale,
    boolean_chain,
    builtin_theories,
    capped_chain,
    from_distance,
    gen_theory,
    pos_theory,
    preord_theory,
    to_distance,
    trivial_quantale,
    validate_quantale,
)
from .saturate import closure, free_model, is_T_relation, naive_closure, reflect_with_equality
from .theory import (
    Formula,
    Theory,
    check_variable_condition,
    formula,
    is_model,
    satisfies,
    strip_equality,
    uses_equality,
    vars_of,
    vars_of_set,
)

__version__ = "0.1.0"
