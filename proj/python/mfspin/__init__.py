"""Mean-field spin / cycle-weighted interchange process toolkit.

Exact character-sum partition functions, a dense quantum oracle, Monte Carlo
estimators for the transposition process, and the variational limit objects
(free energy, magnetization derivatives, critical coupling).
"""

from mfspin._core import (  # noqa: F401
    beta_critical,
    beta_critical_scan,
    big_r,
    colouring_identity_gap,
    dimension,
    dominance_neighbor,
    dominates,
    energy_exponent,
    enumerate_partitions,
    estimate_z,
    estimate_z_field,
    free_energy_density,
    g_max,
    hamiltonian_spectrum,
    kostka,
    log_g_weight,
    log_trace_exp,
    log_z_exact,
    log_z_field_exact,
    maximize_phi,
    multinomial,
    phi,
    rearrangement_count,
    rho,
    swap_poly_coefficients,
    verify_swap_poly,
    weighted_tail,
    z,
    z_derivatives,
)

__all__ = [
    "beta_critical",
    "beta_critical_scan",
    "big_r",
    "colouring_identity_gap",
    "dimension",
    "dominance_neighbor",
    "dominates",
    "energy_exponent",
    "enumerate_partitions",
    "estimate_z",
    "estimate_z_field",
    "free_energy_density",
    "g_max",
    "hamiltonian_spectrum",
    "kostka",
    "log_g_weight",
    "log_trace_exp",
    "log_z_exact",
    "log_z_field_exact",
    "maximize_phi",
    "multinomial",
    "phi",
    "rearrangement_count",
    "rho",
    "swap_poly_coefficients",
    "verify_swap_poly",
    "weighted_tail",
    "z",
    "z_derivatives",
]

__version__ = "0.1.0"
