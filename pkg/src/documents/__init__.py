from .grammar import (
    format_parameter,
    parse_cpoly,
    parse_kelement,
    parse_motion,
    parse_parameter,
    parse_scalar,
)
from .render import render_frame, trace_points, view_box, write_frames
from .schema import (
    CollisionReportDocument,
    FactorizationDocument,
    LinkageDocument,
    SynthesisInput,
    collision_report,
    document_to_linkage,
    factorization_document,
    linkage_to_document,
    load_linkage,
    read_input,
)
