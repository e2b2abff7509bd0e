"""Operator profiles of finite graphs and exact Levy-Prokhorov metrics."""

from .measures import (
    DiscreteMeasure,
    ShiftVector,
    discretize,
    empirical,
    marginal,
    mean_abs,
    product_with_dirac,
    shift,
)
from .lp_metric import (
    HausdorffResult,
    LpResult,
    hausdorff,
    lp_distance,
    lp_distance_bruteforce,
    lp_feasible,
)
from .operators import (
    GraphSpec,
    UnsupportedNormError,
    WeightedOperator,
    adjacency,
    adjoint,
    apply,
    bilinear,
    c_regularity,
    gplus,
    positivity_defect,
    pq_norm,
    q_norm,
    scale,
    self_adjoint_defect,
)
from .profiles import (
    DistanceReport,
    ProfileSample,
    TestFunctionStrategy,
    action_distance_estimate,
    measure_of,
    norm_from_profile,
    profile_hausdorff,
    profile_sample,
)
from .limits import (
    StarLimitSet,
    broadcast,
    distance_to_star_limit,
    non_self_adjoint_witness,
    signed_limit,
)

__version__ = "0.1.0"
