"""Graph-based Sybil detection as low-pass graph filtering.

The compiled core exposes the graph/shift-matrix machinery, block-model
generators, spectral filtering (exact and Chebyshev), the six detectors,
loopy belief propagation, spectral clustering, and the AUC/NMI metrics.
"""

from sybilfilter._core import (  # noqa: F401
    BlockModelParams,
    Clustering,
    Dataset,
    DetectorParams,
    FilterKernel,
    Graph,
    LabelSet,
    LbpResult,
    MessageSet,
    NonBacktracking,
    PairwiseMRF,
    PlantedGraph,
    ScoreVector,
    ShiftMatrix,
    Spectrum,
    SybilError,
    apply_filter,
    auc,
    augment_graph,
    bethe_hessian_nullspace_residual,
    bethe_hessian_r,
    build_shift,
    chebyshev_apply,
    chebyshev_coeffs,
    cia,
    degrees,
    detect,
    detectability_margin,
    detector_ids,
    eig,
    flip_labels,
    gft,
    igft,
    jacobian_at,
    kmeans,
    largest_connected_component,
    lbp_run,
    load_dataset,
    magnetization,
    mu_update,
    nmi,
    non_backtracking_matrix,
    nu_update,
    sample_dcsbm,
    sample_labels,
    sample_sbm,
    spectral_clustering,
    sybilbelief,
    sybilheat,
    sybilrank,
    sybilscar,
    sybilwalk,
)

__version__ = "0.1.0"
