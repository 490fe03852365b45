"""Eulerian-cycle counting via twisted adjacency traces.

The count of Eulerian cycles of a connected Eulerian multigraph equals a
signed average of trace powers of twisted vertex or edge adjacency
matrices over the mod-2 twists supported on any cotree.  This package
implements that formula, its directed mod-t analog, the per-class circuit
census it specializes, the BEST-theorem pipeline it cross-checks against,
a brute-force oracle, and the antisymmetry/automorphism reductions that
shrink the twist sums.
"""

from ._backend import backend_name
from .census import (
    CountReport,
    count_circuits_in_class,
    count_circuits_in_homology,
)
from .errors import (
    BudgetError,
    EulerCountError,
    GraphParseError,
    PreconditionError,
    ResidualError,
)
from .eulerian import (
    BestReport,
    Orientation,
    best_count,
    count_eulerian_cycles,
    count_eulerian_cycles_directed,
    count_via_best,
    enumerate_eulerian_orientations,
    is_eulerian_orientation,
)
from .graphs import (
    MultiGraph,
    OrientedEdge,
    SpanningTree,
    Walk,
    default_spanning_tree,
    load_graph,
    parse_graph,
    parse_graph_file,
    random_spanning_tree,
    spanning_tree_from_edges,
)
from .homology import (
    Chain,
    abelianization,
    canonical_element,
    coefficient_sum,
    extend_to_circulation,
    is_circulation,
    pairing,
    twist_space,
)
from .oracle import (
    OracleBudget,
    census_oracle,
    count_eulerian_oracle,
    enumerate_circuits,
    enumerate_closed_walks,
)
from .reductions import (
    AntisymPartition,
    GraphAutomorphism,
    OrbitPartition,
    antisym_partition,
    count_class_reduced,
    count_eulerian_antisym,
    count_eulerian_reduced,
    find_automorphisms,
    orbit_partition,
)
from .twists import (
    TwistedMatrix,
    edge_matrix,
    spectrum,
    trace_power,
    vertex_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AntisymPartition",
    "BestReport",
    "BudgetError",
    "Chain",
    "CountReport",
    "EulerCountError",
    "GraphAutomorphism",
    "GraphParseError",
    "MultiGraph",
    "OracleBudget",
    "OrbitPartition",
    "Orientation",
    "OrientedEdge",
    "PreconditionError",
    "ResidualError",
    "SpanningTree",
    "TwistedMatrix",
    "Walk",
    "abelianization",
    "antisym_partition",
    "backend_name",
    "best_count",
    "canonical_element",
    "census_oracle",
    "coefficient_sum",
    "count_circuits_in_class",
    "count_circuits_in_homology",
    "count_eulerian_antisym",
    "count_eulerian_cycles",
    "count_eulerian_cycles_directed",
    "count_eulerian_oracle",
    "count_eulerian_reduced",
    "count_class_reduced",
    "count_via_best",
    "default_spanning_tree",
    "edge_matrix",
    "enumerate_circuits",
    "enumerate_closed_walks",
    "enumerate_eulerian_orientations",
    "extend_to_circulation",
    "find_automorphisms",
    "is_circulation",
    "is_eulerian_orientation",
    "load_graph",
    "orbit_partition",
    "pairing",
    "parse_graph",
    "parse_graph_file",
    "random_spanning_tree",
    "spanning_tree_from_edges",
    "spectrum",
    "trace_power",
    "twist_space",
    "vertex_matrix",
]
