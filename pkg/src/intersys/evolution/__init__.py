"""Markov evolutions, Schroedinger propagation and the two-agent example."""

from .core import (
    ErgodicVerdict,
    EvolutionTrace,
    ergodic_mean,
    evolve,
    is_column_stochastic,
    markov_chain,
    running_means,
    schrodinger_propagator,
    schrodinger_trace,
    write_trace_csv,
)
from .two_agent import (
    KINDS,
    TwoAgentModel,
    eigenvalue_formula,
    max_amplitude,
    max_amplitude_formula,
    period,
    propagated_psi,
    psi,
    transition_probability,
    two_agent,
    two_agent_variants,
    variant_matrix,
)

__all__ = [
    "ErgodicVerdict",
    "EvolutionTrace",
    "ergodic_mean",
    "evolve",
    "is_column_stochastic",
    "markov_chain",
    "running_means",
    "schrodinger_propagator",
    "schrodinger_trace",
    "write_trace_csv",
    "KINDS",
    "TwoAgentModel",
    "eigenvalue_formula",
    "max_amplitude",
    "max_amplitude_formula",
    "period",
    "propagated_psi",
    "psi",
    "transition_probability",
    "two_agent",
    "two_agent_variants",
    "variant_matrix",
]
