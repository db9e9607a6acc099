"""Correlated two-use qubit channels: Kraus and Lindblad descriptions,
cross-validation between the two, and classical-information analysis."""

from .capacity import (
    ClosedFormTerms,
    InputEnsemble,
    ThresholdResult,
    depolarizing_threshold_closed,
    i2_ad_closed,
    i2_depolarizing_closed,
    mutual_information_numeric,
    product_memory_inequality,
    theta_ensemble,
    threshold_numeric,
    von_neumann_entropy,
)
from .channels import (
    AMPLITUDE_DAMPING,
    DEPHASING,
    DEPOLARIZING,
    ChannelParams,
    DensityMatrix,
    KrausSet,
    ad_correlated_kraus2,
    ad_uncorrelated_kraus2,
    amplitude_damping_kraus,
    apply,
    build_memory_channel,
    check_cptp,
    dephasing_correlated_kraus,
    dephasing_uncorrelated_kraus,
    depolarizing_correlated_kraus2,
    depolarizing_uncorrelated_kraus2,
    memory_channel,
    pure_state,
    random_density_matrix,
)
from .lindblad import (
    EigenoperatorCatalog,
    LindbladSpec,
    ad_correlated_spec,
    apply_generator,
    catalog_ad_correlated,
    catalog_dephasing_correlated,
    damping_angle,
    dephasing_correlated_spec,
    dephasing_flip_probability,
    dephasing_uncorrelated_spec,
    dual_basis,
    evolve,
    evolve_superoperator,
    kraus_equivalence,
    superoperator_matrix,
    verify_eigen,
)

__all__ = [
    "AMPLITUDE_DAMPING",
    "DEPHASING",
    "DEPOLARIZING",
    "ChannelParams",
    "ClosedFormTerms",
    "DensityMatrix",
    "EigenoperatorCatalog",
    "InputEnsemble",
    "KrausSet",
    "LindbladSpec",
    "ThresholdResult",
    "ad_correlated_kraus2",
    "ad_correlated_spec",
    "ad_uncorrelated_kraus2",
    "amplitude_damping_kraus",
    "apply",
    "apply_generator",
    "build_memory_channel",
    "catalog_ad_correlated",
    "catalog_dephasing_correlated",
    "check_cptp",
    "damping_angle",
    "dephasing_correlated_kraus",
    "dephasing_correlated_spec",
    "dephasing_flip_probability",
    "dephasing_uncorrelated_kraus",
    "dephasing_uncorrelated_spec",
    "depolarizing_correlated_kraus2",
    "depolarizing_threshold_closed",
    "depolarizing_uncorrelated_kraus2",
    "dual_basis",
    "evolve",
    "evolve_superoperator",
    "i2_ad_closed",
    "i2_depolarizing_closed",
    "kraus_equivalence",
    "memory_channel",
    "mutual_information_numeric",
    "product_memory_inequality",
    "pure_state",
    "random_density_matrix",
    "superoperator_matrix",
    "theta_ensemble",
    "threshold_numeric",
    "verify_eigen",
    "von_neumann_entropy",
]
