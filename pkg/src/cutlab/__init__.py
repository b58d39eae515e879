"""cutlab: a graph-perturbation laboratory for MaxCut under QAOA."""

from .automorphisms import (
    AutReport,
    CospectralReport,
    aut_order,
    cospectral_nonisomorphic_check,
    is_isomorphic,
    predict_kn_deleted_edge_order,
    predict_kn_pendant_order,
    predict_shadow_order,
    predict_tree_deleted_edge_order,
    predict_tree_order,
    predict_tree_pendant_order,
)
from .charpoly import CharPoly, char_poly
from .experiment import ExperimentConfig, build_dataset, parse_config, run_experiment
from .graphs import (
    DeleteEdge,
    Graph,
    GraphMeta,
    PendantEdge,
    Perturbation,
    Shadow,
    apply_perturbation,
    complement_graph,
    delete_nodes,
    enumerate_edge_deletions,
    gen_complete,
    gen_erdos_renyi,
    gen_full_binary_tree,
    gen_full_rary_tree,
    gen_random_regular,
    graph_from_json,
    relabel,
)
from .maxcut import CutSolution, ShiftReport, brute_force_maxcut, cut_value, perturbation_shift
from .metrics import (
    HeuristicReport,
    MetricsRecord,
    approx_symmetry_index,
    heuristic_report,
    mean_ar,
    quotient_i_prime,
    symmetry_index,
)
from .qaoa import (
    AngleSet,
    CircuitShape,
    QaoaRun,
    approximation_ratio,
    build_cost_diagonal,
    circuit_shape,
    evolve,
    expectation,
    optimize,
    transfer_parameters,
)
from .reporting import emit_report, records_from_csv_text, records_to_csv_text, render_plots
from .spectral import (
    BoundsReport,
    IdentityReport,
    RadiusReport,
    SpectralDecomposition,
    check_radius_preservation,
    complement_charpoly,
    eigen_decomposition,
    maxcut_upper_bounds,
    predicted_charpoly_pendant,
    predicted_charpoly_shadow,
    spectral_radius,
    tree_charpoly,
    verify_deleted_edge_identity,
    verify_two_node_deletion_identity,
)

__version__ = "0.1.0"
