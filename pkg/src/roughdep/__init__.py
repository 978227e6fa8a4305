"""Finite-model workbench for rough-set and probabilistic dependence.

Everything runs on small indexed universes with exact rational arithmetic:
covering approximation operators with closure diagnostics, granular operator
spaces with dependence degrees, exact finite probability with set-valued
deviance, implication-algebra duality, tolerance-space squeezed semantics,
and a bridge that compares the two dependence notions inside one algebraic
language.
"""

from .core import (
    Approximation,
    BinaryRelation,
    InformationTable,
    SubsetMask,
    Universe,
    classical_approximations,
    derive_indiscernibility,
    derive_tolerance,
    rough_equal,
    rough_inclusion,
    rough_membership,
)
from .covers import (
    CoverSpace,
    SigmaField,
    closure_diagnostics,
    cover_from_neighborhoods,
    covering_reduct,
    is_unary,
    lower_l1,
    point_descriptors,
    sigma_field_from_cover,
    topology_from_base,
    upper,
)
from .dependence import (
    DependenceDegree,
    classical_beta_suite,
    dependence_degree,
    gos_beta_suite,
    pn_dependence,
    recover_approximations,
)
from .deviant import (
    DEFAULT_POLICY,
    DependenceTrail,
    DeviancePolicy,
    dependence_trail,
    deviance_equivalent,
    deviance_law_suite,
    negative_deviance,
    positive_deviance,
    trail_leq,
    trail_suite,
)
from .granular import (
    GranularOperatorSpace,
    OperatorSpace,
    basic_rough_order,
    check_dependence_space,
    general_rough_membership,
    induced_relations,
    omega_property_check,
    point_granule,
    regions,
    rough_object_census,
    validate_admissible,
)
from .probability import (
    Event,
    FiniteProbSpace,
    common_co_spectrum,
    common_spectrum,
    covariance,
    covariance_law_suite,
    dependence_sign,
    dependence_suprema,
    distance_law_suite,
    generate_positive_ideal,
    is_negative_filter,
    is_positive_ideal,
    sign_law_suite,
    symmetric_difference_distance,
    weakly_mutually_exclusive,
)
from .squeezed import (
    SqueezedSystem,
    ToleranceSpace,
    bitten_upper,
    build_squeezed,
    heyting_suite,
    implication_to,
    modal_law_suite,
    presqueezed_algebra,
    squeezed_approx,
    squeezed_lower,
    squeezed_upper,
    subtraction,
)
from .tarski import (
    FiniteTarskiAlgebra,
    TarskiSet,
    dual_set_algebra,
    duality_roundtrip,
    enumerate_filters,
    field_implication_algebra,
    full_power_algebra,
    point_spec_bijection,
    relation_box_map,
    semi_morphisms,
    sequence_distribution_check,
    spec_embedding,
    spectrum,
)
from .bridge import (
    ComparisonReport,
    embeddings_between,
    identity_map,
    preservation_hunt,
    preservation_sweep,
    shared_property_report,
)

__version__ = "0.1.0"
