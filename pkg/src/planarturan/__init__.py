"""Constructions and machine checks for dense planar graphs with no l-cycle.

The package builds the hexagonal host family and its girth-g stretches,
substitutes short-cycle triangulation gadgets for host vertices, and
certifies in exact rational arithmetic that the results are planar, free of
l-cycles, and strictly denser than the conjectured planar Turan bound.
"""

from .bounds import (
    Certificate,
    Rejection,
    certify,
    conjectured_bound,
    counterexample_coefficients,
    counterexample_order,
    moon_moser_bound,
    revised_bound,
)
from .cycles import (
    CycleReport,
    canonical_cycle,
    enumerate_cycles,
    girth,
    has_cycle_of_length,
    longest_cycle_exact,
)
from .embedding import (
    EmbeddedGraph,
    FaceList,
    build_graph,
    euler_audit,
    export_graph,
    import_graph,
    subdivide_edge,
    trace_faces,
)
from .gadgets import (
    Gadget,
    LayeredTriangulation,
    base_triangulation,
    layer_cycle_cap,
    moon_moser,
    octahedron,
    stack_all_faces,
    stacked_gadget,
)
from .hexhost import (
    DenseHost,
    HexHost,
    build_hex_host,
    nonfacial_cycle_audit,
    stretch_to_girth,
)
from .substitution import (
    SubstitutionResult,
    density_coefficient,
    predict_counts,
    substitute,
    trim_to_order,
    verify_density_identity,
)

__version__ = "0.1.0"
