"""girthgeom: exact-arithmetic constructions of axis-aligned box families
and straight-line families in 3-space whose intersection graphs have
large girth and large chromatic number, with every claim re-verified
exactly at construction time."""

from .boxes import (
    BoxFamily,
    CopyEmbedding,
    GroundedSquareBox,
    build_box_family,
    check_box_structure,
    embed_copy_boxes,
    ground_trace,
    make_ground_boxes,
    meeting_pair_family,
    normalize_traces,
    odd_cycle_boxes,
    recursion_step_boxes,
    single_box_family,
)
from .budget import Budget
from .errors import (
    BudgetExhausted,
    ConstructionError,
    GirthGeomError,
    ProviderFailure,
    ProviderRefusal,
    SceneFormatError,
)
from .gallai import (
    CertificateReport,
    CopyCycleWitness,
    GallaiCertificate,
    GroundSet,
    HomotheticCopy,
    ProviderPolicy,
    enumerate_copies,
    find_copy_cycle,
    normalize_ground_set,
    pigeonhole_certificate,
    search_certificate,
    vdw_certificate,
    verify_certificate,
)
from .geometry import (
    AxisMap3,
    Box3,
    Dir3,
    Homothety1D,
    Homothety3D,
    Interval,
    Line3,
    LineRelation,
    Plane3,
    PlaneRelation,
    Point3,
    Rat,
    apply_homothety,
    box_intersects,
    interval_intersect,
    line_line_relation,
    line_plane_meet,
    perp_in_plane,
    rat,
)
from .graphs import (
    ChromaticResult,
    ColoringCertificate,
    GeoGraph,
    chromatic_number,
    cycle_graph,
    from_dimacs,
    girth,
    graph_equals_expected,
    intersection_graph,
    is_k_colorable,
    to_dimacs,
)
from .lines import (
    LineFamily,
    ShiftSystem,
    TransversalFrame,
    build_line_family,
    build_shift_system,
    check_line_structure,
    choose_frame,
    double_shift_graph,
    embed_copy_lines,
    make_ground_lines,
    meeting_pair_lines,
    odd_cycle_lines,
    recursion_step_lines,
    shift_line,
    shift_meeting_point,
    single_line_family,
    verify_shift_system,
)

__version__ = "0.1.0"
