"""Interaction systems, decision states, cooperative-game transforms and linear evolutions.

Submodules
----------
linalg        self-adjoint matrices, Frobenius geometry, spectral decomposition
interaction   interaction states and their hermitian representation
measurement   linear measurements, joint spectral probabilities, Shapley value
tugame        TU-games over the coalition lattice ``2^N``
decision      (joint) decision states, tensor products, entanglement
transforms    zeta/Moebius/Hadamard/Banzhaf transforms and the Fourier matrix
games         decision games and the Eisert protocol
evolution     Markov and Schroedinger evolutions, two-agent example
"""

from .decision import DecisionState, fuzzy_state, is_entangled, is_reducible, qubit, tensor
from .errors import (
    DegenerateModelError,
    IntersysError,
    NotSelfAdjointError,
    PreconditionError,
    ShapeError,
)
from .evolution import (
    EvolutionTrace,
    TwoAgentModel,
    ergodic_mean,
    evolve,
    markov_chain,
    schrodinger_propagator,
    two_agent,
    two_agent_variants,
)
from .games import DecisionGame, eisert_play, nash_equilibria, pareto_front, payoff_table
from .interaction import InteractionState, from_hermitian, hermitian_repr, symmetry_split
from .linalg import SpectralDecomposition, eigh, frobenius_inner, frobenius_norm, pure_density
from .measurement import Measurement, joint_probabilities, measure, shapley_value
from .transforms import (
    banzhaf_interaction,
    fourier_matrix,
    hadamard_apply,
    harsanyi_coefficients,
    moebius_apply,
    zeta_apply,
)
from .tugame import TUGame

__version__ = "0.1.0"

__all__ = [
    "DecisionGame",
    "DecisionState",
    "DegenerateModelError",
    "EvolutionTrace",
    "InteractionState",
    "IntersysError",
    "Measurement",
    "NotSelfAdjointError",
    "PreconditionError",
    "ShapeError",
    "SpectralDecomposition",
    "TUGame",
    "TwoAgentModel",
    "banzhaf_interaction",
    "eigh",
    "eisert_play",
    "ergodic_mean",
    "evolve",
    "fourier_matrix",
    "frobenius_inner",
    "frobenius_norm",
    "from_hermitian",
    "fuzzy_state",
    "hadamard_apply",
    "harsanyi_coefficients",
    "hermitian_repr",
    "is_entangled",
    "is_reducible",
    "joint_probabilities",
    "markov_chain",
    "measure",
    "moebius_apply",
    "nash_equilibria",
    "pareto_front",
    "payoff_table",
    "pure_density",
    "qubit",
    "schrodinger_propagator",
    "shapley_value",
    "symmetry_split",
    "tensor",
    "two_agent",
    "two_agent_variants",
    "zeta_apply",
]
