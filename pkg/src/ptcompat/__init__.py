"""Exact joint-measurability analysis for finite probabilistic theories."""

from .errors import HullRejection, InputError, InternalError
from .model import (
    Distribution,
    Effect,
    Observable,
    OutcomeMap,
    State,
    TheorySpace,
    apply,
    make_trivial,
    mix,
    noisy,
    post_process,
    validate_state,
)
from .compat import (
    Compatible,
    CompatVerdict,
    Incompatible,
    IndexResult,
    JointObservable,
    RegionSample,
    build_joint_lp,
    build_region_lp,
    check_compatible,
    compat_index,
    compat_interval,
    marginal,
    region_boundary_scan,
    region_membership,
    theory_index_estimate,
)

__all__ = [
    "Compatible",
    "CompatVerdict",
    "Distribution",
    "Effect",
    "HullRejection",
    "Incompatible",
    "IndexResult",
    "InputError",
    "InternalError",
    "JointObservable",
    "Observable",
    "OutcomeMap",
    "RegionSample",
    "State",
    "TheorySpace",
    "apply",
    "build_joint_lp",
    "build_region_lp",
    "check_compatible",
    "compat_index",
    "compat_interval",
    "make_trivial",
    "marginal",
    "mix",
    "noisy",
    "post_process",
    "region_boundary_scan",
    "region_membership",
    "validate_state",
    "theory_index_estimate",
]
