"""twistlab: exact computations with Dehn-twist monodromy factorizations of
Lefschetz fibrations."""

from .exact import F2Matrix, IntMatrix, SmithForm, rank_over_rationals, smith_normal_form, solve_f2
from .invariants import (
    Factorization,
    InvariantReport,
    euler_characteristic,
    fiber_sum,
    h1_total_space,
    hodge_pairing,
    invariant_report,
    liu_bound_report,
    mu,
    pi1_presentation,
    signature,
    torelli_certificate,
    verify_higher_base,
)
from .metaplectic import (
    LagrangianLine,
    MetaElement,
    TildeLambdaPoint,
    act_tilde_lambda,
    boundary_multiplicity,
    cocycle,
    displacement,
    evaluate_meta_word,
    lift_generators,
    maslov_index,
    multiply,
    parse_meta_word,
    szpiro_check,
    validate,
)
from .presentations import (
    AbelianInvariants,
    DoubleCover,
    FinitePresentation,
    SurfaceGroup,
    abelianize,
    commutator_defect,
    lift_loop,
    quotient_by_normal_closure,
    reidemeister_schreier_double_cover,
)
from .surfaces import Curve, SurfaceData, intersection_pairing, is_symplectic, twist_transvection
from .systems import (
    CurveSystem,
    DualGraph,
    adjacent,
    build_geometric_presentation,
    dual_graph,
    graph_connected_to,
    verify_geometric_presentation,
)
from .words import (
    TwistLetter,
    TwistWord,
    conjugate_adjacent,
    evaluate_homological,
    express_inverse_positively,
    invert_from_positive_relation,
    is_positive,
)

__version__ = "0.1.0"
