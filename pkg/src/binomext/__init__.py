"""Binomial extension ideals of simplicial complexes.

Scroll-matrix presentations, mixed decompositions, colorations of the
reduced graph, and reduction-number certificates, over exact fields.
"""

from .color import (
    Coloration,
    NotADTree,
    ReductionVectors,
    UncoloredVertex,
    ValidationFailed,
    coloration_valid,
    colored_facet_members,
    dtree_coloration,
    g_prime_graph,
    is_binomial_coloration,
    is_good_coloration,
    is_proper_coloration,
    reduction_vectors,
    search_binomial_coloration,
)
from .complexes import (
    DTreeVerdict,
    DuplicateVertexInFacet,
    EmptyFacet,
    Graph,
    ProperStar,
    SimplicialComplex,
    Vertex,
    clique_complex,
    clique_number,
    facet_intersection_graph,
    graph,
    induces_forest,
    is_connected,
    is_generalized_d_tree,
    is_proper_edge,
    maximal_cliques,
    proper_edge_stars,
    quasi_tree_order,
    skeleton_graph,
    stanley_reisner_generators,
    validate_complex,
)
from .extension import (
    DuplicatePointName,
    EmptyExtension,
    ExtensionComplex,
    FacetExtension,
    IdealPresentation,
    NotAProperEdge,
    OriginMismatch,
    ScrollBlock,
    ScrollMatrix,
    binomial_extension_ideal,
    build_extension_complex,
    column_minor,
    component_ideals,
    facet_minors,
    reduced_graph,
    scroll_matrix,
    scroll_minors,
)
from .poly import (
    HilbertData,
    MonomialOrder,
    OrderMismatch,
    Polynomial,
    PrimeField,
    RationalField,
    Ring,
    buchberger,
    field_by_name,
    groebner_equal,
    hilbert_data,
    ideal_intersection,
    ideal_intersection_many,
    ideal_membership,
    krull_dimension_lt,
    monomials_of_degree,
    normal_form,
)
from .reduce import (
    BothXVariables,
    ContainmentFailed,
    FacetCondition,
    HypothesisFailed,
    MainTheoremReport,
    NoColorationFound,
    NotInMatrix,
    NotSOP,
    ReductionReport,
    RewriteStep,
    RewriteTrace,
    WrongCount,
    degree_containment,
    modB_normal_pair,
    monomial_covered,
    reduction_number,
    verify_main_theorem,
    verify_sop,
)

__version__ = "0.1.0"
