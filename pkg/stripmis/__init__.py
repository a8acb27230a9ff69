try:
    from ._version import version as __version__
except ImportError:
    __version__ = "unknown"

from stripmis.graph import (
    Graph,
    GraphError,
    GraphFormatError,
    Separation,
    SeparationError,
    SizeCapExceeded,
    VertexSet,
    WeightFn,
    closed_neighborhood,
    connected_components,
    distance,
    induced_subgraph,
    is_independent,
    open_neighborhood,
    parse_graph,
    read_graph,
    vertex_set,
    write_graph,
)
from stripmis.matching import EdgeWeightedGraph, Matching, MatchingError, max_weight_matching
from stripmis.pattern import find_induced_subdivided_claw, find_induced_tree_containing, is_sttt_free
from stripmis.reduction import ReductionError, reduce_mwis
from stripmis.solution import Solution, TraceNode
from stripmis.solver import (
    BruteForceFallbackWarning,
    ConfigError,
    ProviderError,
    ProviderSpec,
    SolverConfig,
    providers,
    solve_mwis,
)
from stripmis.display import renderers
