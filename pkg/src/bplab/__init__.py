"""Workbench for read-once branching program size bounds on monotone 2-CNFs.

Graphs, matching widths, hard instance families, branching programs with
uniformization and compilation, weighted cover analysis, and cut-cover
certificates, plus a CLI tying them into reproducible experiments.
"""

from .bp import (
    BpReport,
    Nfbdd,
    Nrobp,
    best_order_size,
    bp_equivalence,
    bp_satisfying_set,
    is_uniform,
    nfbdd_compile,
    path_literals,
    root_leaf_paths,
    uniformize,
    validate_nrobp,
)
from .covers import (
    CompositeBound,
    CutCoverCertificate,
    DeepcoverReport,
    LowerBoundConstants,
    NodeContext,
    composed_bound_constants,
    constants,
    coverlb_bound,
    covered_weight,
    extract_cut_cover,
    min_dis_cover,
    node_context,
    path_weight_total,
    relative_weight,
    verify_deepcover,
)
from .graphs import (
    Assignment,
    Graph,
    Matching,
    MonotoneCnf,
    cnf_from_graph,
    complete_graph,
    covers,
    cycle_graph,
    edges_distant_compatible,
    enumerate_satisfying,
    is_connected,
    is_dis,
    is_distant_matching,
    isolated_vertices,
    path_graph,
    primal_graph,
    satisfies,
)
from .instances import (
    FamilyParams,
    LabeledTree,
    TdReport,
    TreeDecomposition,
    canonical_tree_decomposition,
    complete_binary_tree,
    copy_of,
    cross_matching_finder,
    family_edge_count,
    family_params,
    family_threshold,
    hard_family_instance,
    label_of,
    product_vertex,
    tree_path,
    tree_product,
    validate_tree_decomposition,
)
from .suites import SUITES, CheckResult, random_read_once_program
from .widths import (
    PrefixPartition,
    WidthResult,
    cut_distant_matching_size,
    cut_matching_size,
    dmw_exact,
    greedy_distant_extraction,
    max_cross_matching,
    max_distant_cross_matching,
    mw_exact,
    mw_structural_lower_bound,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BpReport",
    "CheckResult",
    "CompositeBound",
    "CutCoverCertificate",
    "DeepcoverReport",
    "FamilyParams",
    "Graph",
    "LabeledTree",
    "LowerBoundConstants",
    "Matching",
    "MonotoneCnf",
    "Nfbdd",
    "NodeContext",
    "Nrobp",
    "PrefixPartition",
    "SUITES",
    "TdReport",
    "TreeDecomposition",
    "WidthResult",
    "best_order_size",
    "bp_equivalence",
    "bp_satisfying_set",
    "canonical_tree_decomposition",
    "cnf_from_graph",
    "complete_binary_tree",
    "complete_graph",
    "composed_bound_constants",
    "constants",
    "copy_of",
    "coverlb_bound",
    "covered_weight",
    "covers",
    "cross_matching_finder",
    "cut_distant_matching_size",
    "cut_matching_size",
    "cycle_graph",
    "dmw_exact",
    "edges_distant_compatible",
    "enumerate_satisfying",
    "extract_cut_cover",
    "family_edge_count",
    "family_params",
    "family_threshold",
    "greedy_distant_extraction",
    "hard_family_instance",
    "is_connected",
    "is_dis",
    "is_distant_matching",
    "is_uniform",
    "isolated_vertices",
    "label_of",
    "max_cross_matching",
    "max_distant_cross_matching",
    "min_dis_cover",
    "mw_exact",
    "mw_structural_lower_bound",
    "nfbdd_compile",
    "node_context",
    "path_graph",
    "path_literals",
    "path_weight_total",
    "primal_graph",
    "product_vertex",
    "random_read_once_program",
    "relative_weight",
    "root_leaf_paths",
    "satisfies",
    "tree_path",
    "tree_product",
    "uniformize",
    "validate_nrobp",
    "validate_tree_decomposition",
    "verify_deepcover",
]
