"""matchcut: matching-cut style decision problems on undirected graphs.

The package decides three problems on connected graphs — matching cut
(``mc``), disconnected perfect matching (``dpm``) and perfect matching cut
(``pmc``) — with brute-force oracles, exact branch-and-propagate solvers,
and polynomial algorithms for structured classes built on a red-blue
propagation engine and a 2-SAT endgame.  It also generates the hardness
gadgets that map 1-in-3 satisfiability onto these problems.
"""

from .colouring import (
    Colour,
    RedBlueColouring,
    cut_edges,
    extension_witness,
    format_colouring,
    format_matching,
    has_perfect_matching,
    is_perfect,
    is_perfect_extendable,
    is_valid,
    maximum_matching,
    parse_colouring,
    parse_matching,
    perfect_matching,
)
from .errors import (
    BadStartingPair,
    DisconnectedInput,
    InvalidColouring,
    MalformedInstance,
    MalformedTuple,
    MatchcutError,
    NotAnEdge,
    NotApplicable,
    NotDominating,
    NotFound,
    NotOneInThree,
    ParseError,
    PartialColouring,
    PatternTooLarge,
    TooLarge,
)
from .graph_core import (
    DominatingStructure,
    Graph,
    complete_bipartite_graph,
    complete_graph,
    connected_components,
    contains_induced,
    cycle_graph,
    disjoint_union,
    eccentricities,
    enumerate_dominating_sets,
    find_dominating_structure_p6free,
    format_graph,
    h_star_graph,
    is_connected,
    parse_graph,
    parse_pattern_token,
    path_graph,
    radius,
    star_graph,
)
from .propagation import (
    REFUSAL_RULES,
    FourTuple,
    PropagationOutcome,
    RuleApplication,
    StartingPair,
    apply_rules_r1_r11,
    apply_rules_r1_r7,
    check_final_structure,
    check_intermediate_structure,
    init_from_starting_pair,
    propagate,
    record_final_tuples,
    trace_to,
)
from .reductions import (
    FreenessReport,
    FreenessVerdict,
    GadgetGraph,
    OneInThreeInstance,
    assignment_to_colouring,
    build_dpm_gadget,
    build_gadget,
    build_mc_gadget,
    colouring_to_assignment,
    format_instance,
    format_roles,
    k22_replace,
    k22_replace_exhaustive,
    parse_instance,
    satisfies_one_in_three,
    verify_freeness_claims,
)
from .solvers import (
    DEFAULT_BRANCH_BUDGET,
    ORACLE_MAX_VERTICES,
    Answer,
    Problem,
    SolveResult,
    SolveStats,
    base_solver_for,
    exact_dpm,
    exact_mc,
    exact_pmc,
    oracle_dpm,
    oracle_mc,
    oracle_pmc,
    pmc_bounded_domination,
    pmc_h_plus_p4,
    pmc_monochromatic_dominating,
    pmc_p6free,
    pmc_radius2,
    solve_mono_from_final,
)
from .twosat import TwoSatFormula, lit, neg, solve_2sat

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "BadStartingPair",
    "Colour",
    "DEFAULT_BRANCH_BUDGET",
    "DisconnectedInput",
    "DominatingStructure",
    "FourTuple",
    "FreenessReport",
    "FreenessVerdict",
    "GadgetGraph",
    "Graph",
    "InvalidColouring",
    "MalformedInstance",
    "MalformedTuple",
    "MatchcutError",
    "NotAnEdge",
    "NotApplicable",
    "NotDominating",
    "NotFound",
    "NotOneInThree",
    "ORACLE_MAX_VERTICES",
    "OneInThreeInstance",
    "ParseError",
    "PartialColouring",
    "PatternTooLarge",
    "Problem",
    "PropagationOutcome",
    "REFUSAL_RULES",
    "RedBlueColouring",
    "RuleApplication",
    "SolveResult",
    "SolveStats",
    "StartingPair",
    "TooLarge",
    "TwoSatFormula",
    "apply_rules_r1_r11",
    "apply_rules_r1_r7",
    "assignment_to_colouring",
    "base_solver_for",
    "build_dpm_gadget",
    "build_gadget",
    "build_mc_gadget",
    "check_final_structure",
    "check_intermediate_structure",
    "colouring_to_assignment",
    "complete_bipartite_graph",
    "complete_graph",
    "connected_components",
    "contains_induced",
    "cut_edges",
    "cycle_graph",
    "disjoint_union",
    "eccentricities",
    "enumerate_dominating_sets",
    "exact_dpm",
    "exact_mc",
    "exact_pmc",
    "extension_witness",
    "find_dominating_structure_p6free",
    "format_colouring",
    "format_graph",
    "format_instance",
    "format_matching",
    "format_roles",
    "h_star_graph",
    "has_perfect_matching",
    "init_from_starting_pair",
    "is_connected",
    "is_perfect",
    "is_perfect_extendable",
    "is_valid",
    "k22_replace",
    "k22_replace_exhaustive",
    "lit",
    "maximum_matching",
    "neg",
    "oracle_dpm",
    "oracle_mc",
    "oracle_pmc",
    "parse_colouring",
    "parse_graph",
    "parse_instance",
    "parse_matching",
    "parse_pattern_token",
    "path_graph",
    "perfect_matching",
    "pmc_bounded_domination",
    "pmc_h_plus_p4",
    "pmc_monochromatic_dominating",
    "pmc_p6free",
    "pmc_radius2",
    "propagate",
    "radius",
    "record_final_tuples",
    "satisfies_one_in_three",
    "solve_2sat",
    "solve_mono_from_final",
    "star_graph",
    "trace_to",
    "verify_freeness_claims",
]
