"""percolab: bond percolation on finite graphs, with exact and statistical checks."""

from .errors import *  # noqa: F401,F403
from .exploration import (
    BfsTrace,
    SetCensus,
    band_mass,
    bfs_explore,
    census_sets,
    component_metrics,
    size_thresholds,
)
from .generators import (
    GeneratorSpec,
    class_labels,
    complete_bipartite,
    complete_graph,
    gen_classic,
    gen_gadget_A,
    gen_gadget_B,
    gen_random_regular,
    generate,
    hypercube,
    structured_sets,
)
from .graph import (
    CompleteGraph,
    ComponentCensus,
    Graph,
    VertexSet,
    build_graph,
    components,
    cut_edges,
    edge_boundary,
    induced_subgraph,
    is_connected,
)
from .harness import (
    ExperimentConfig,
    ExperimentSummary,
    evaluate_predicates,
    read_report,
    run_experiment,
    write_report,
)
from .isoperimetry import (
    CoreExtractionResult,
    IsoResult,
    expansion_core,
    iso_exact,
    iso_sampled_upper,
    iso_spectral_lower,
)
from .percolation import (
    ExposureSchedule,
    PercolationSample,
    expose,
    percolate,
    schedule_from_epsilon,
    split_probability,
    union_rounds,
)
from .theory import Solution, binomial_gw_survival, poisson_survival, series_F

__version__ = "0.1.0"
