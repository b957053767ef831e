"""Even and odd graph Laplacians, graph gluing, exact characteristic polynomials,
spectral invariants and discrete quantum evolution."""

from .errors import (
    Disconnected,
    DimensionMismatch,
    EigendecompositionFailure,
    GraphGlueError,
    IndexOutOfRange,
    InexactDivision,
    InvalidBridge,
    InvalidInterface,
    NoConvergence,
    NoEdges,
    NoNonzeroEigenvalue,
    NotSquare,
    NotSymmetric,
    ParallelEdge,
    SameEdge,
    SameIndex,
    SelfLoop,
    TooLarge,
    TooSmall,
    ValidationError,
    VerticesAdjacent,
)
from .graph import (
    BridgeSpec,
    GluedGraph,
    InterfaceSpec,
    OrientedGraph,
    Zeta,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    euler_characteristic,
    flip_orientation,
    glue_bridge,
    glue_interface,
    interface_from_vertices,
    new_graph,
    path_graph,
    relabel,
    zeta,
)
from .laplacian import (
    IntMatrix,
    adjacency_matrix,
    even_laplacian,
    even_laplacian_bridge_glued,
    even_laplacian_interface_glued,
    flip_odd_laplacian,
    incidence_matrix,
    odd_laplacian,
    odd_laplacian_bridge_glued,
    odd_laplacian_interface_glued,
    odd_laplacian_vertex_interface_glued,
)
from .poly import (
    IntPoly,
    EulerRatio,
    add_edge_charpoly,
    bridge_charpoly,
    charpoly,
    complete_bridge_glue_charpoly,
    complete_charpoly,
    complete_interface_glue_charpoly,
    complete_minor_charpoly,
    cycle_bridge_glue_eval,
    cycle_charpoly_eval,
    cycle_interface_glue_eval,
    cycle_minor_charpoly_eval,
    det_bareiss,
    euler_ratio,
    interpolate,
    minor_charpoly,
    multi_bridge_charpoly,
    offdiag_minor_det,
    q_poly,
    vertex_interface_charpoly,
)
from .quantum import EvolutionParams, evolve, propagator, propagator_series
from .spectral import (
    FiedlerBounds,
    Spectrum,
    betti_numbers,
    cheeger_constant,
    eigenvalues_sym,
    even_spectrum,
    fiedler_bounds_complete_bridge,
    fiedler_bounds_complete_bridge_samuelson,
    fiedler_value,
    isospectral_check,
    jacobi_eigh,
    odd_spectrum,
    samuelson_root_bounds,
    spanning_tree_count,
    spanning_tree_count_cofactor,
)

__version__ = "0.1.0"
