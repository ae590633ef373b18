from .algebra import (
    INFINITY,
    Backend,
    ComplexScalar,
    CPoly,
    KElement,
    MotionPolynomial,
    PlanePoint,
    act_point,
    k_inv,
    k_mul,
    midpt,
    poly_eval,
    poly_mul,
)
from .collision import (
    CollisionAnalyzer,
    CollisionEvent,
    OrderingResult,
    detect_collisions,
    event_residual,
    search_ordering,
)
from .curves import CurveSpec, apply_drawing_multiplier, curve_motion, drawing_motion
from .factor import (
    FactorizationResult,
    Matching,
    RootPermutation,
    admissible_permutation,
    build_Q,
    drawing_multiplier,
    factor_motion_polynomial,
    gcd_of_Q,
    is_factorizable,
    max_matching,
    minimal_R,
    solve_secondary,
    strip_real_content,
)
from .flip import FlipPair, LadderMeta, choose_l, flip, flip_cascade, fm, ifm, revert_flip_check
from .layers import JointType, LayerAssignment, LinkLayer, LinkType, assign_layers, validate_layers
from .linkage import (
    Joint,
    Linkage,
    LinkageKind,
    Pose,
    SynthesisMeta,
    Trajectory,
    chain_linkage,
    construct_strong,
    construct_weak,
    count_report,
    flip_linkage,
    joint_trajectory,
    ladder_linkage,
    mobility_sample_check,
    pen_trajectory,
    pose_at,
    relative_motion,
)
from .roots import c_gcd, complex_roots, group_conjugates, is_bounded, root_multiplicity
