"""Hardy and weighted Bergman numbers of planar domains via Green functions."""

from .geometry import (
    ClosedDisk,
    ComplementOf,
    Disk,
    DomainSpec,
    ExteriorOfDisk,
    Point,
    PolarComplementError,
    Sector,
    Segment,
    SlitPlane,
    SpecError,
    Strip,
    contains,
    distance_to_complement,
    is_polar_complement,
    load_spec,
    save_spec,
    spec_from_dict,
    spec_to_dict,
)
from .spaces import Bergman, Hardy, MembershipVerdict, SpaceParams, Status
from .green import (
    GreenEvaluator,
    UnsupportedBackendError,
    WoSConfig,
    closed_form_green,
    green_disk,
    green_evaluator,
    green_half_plane,
    wos_green,
)
from .psi import (
    PsiProfile,
    build_profile,
    check_monotone,
    check_pole_asymptote,
    jensen_gaps,
    psi_at,
)
from .estimator import (
    EstimatorOptions,
    NumberEstimate,
    bergman_nonmembership_via_psi,
    estimate_bergman_numbers,
    estimate_hardy_number,
    hardy_membership_via_psi,
)
from .analytic import (
    CustomFunction,
    ExtremalFab,
    KoebeSquare,
    LogPowerIntegralForm,
    PowerMap,
    bgp_membership,
    check_univalence_sampled,
    classify_extremal_membership,
    classify_log_power_integral,
    lp_bergman_membership,
    lp_hardy_membership,
    make_extremal_map,
)
from .lattice import (
    InclusionVerdict,
    assemble_numbers,
    bergman_inclusion,
    extremal_pD,
    hardy_in_bergman,
    hardy_inclusion,
    kulikov_chain,
)

__version__ = "0.1.0"
