"""Spectral and Monte Carlo tools for gap diffusions."""

from ._gapdiff import (
    ChainSpec,
    EmpiricalSummary,
    GapdiffError,
    JFraction,
    LaplaceEstimate,
    LevyRepresentation,
    LocalTimeConvention,
    approximant_eval,
    convergence_summary,
    empirical_laplace,
    first_passage_transform,
    jacobi_from_atoms,
    jfraction_from_chain,
    knight_functional,
    laplace_exponent,
    levy_density,
    levy_representation,
    refine,
    simulate_replicas,
    spectrum,
    stieltjes_eval,
    tail_mass,
)

__all__ = [name for name in dir() if not name.startswith("_")]
