"""Simple Kantian equilibria of symmetric 2x2 games, classical and EWL quantum."""

from .classical import (
    ClassicalBranch,
    Endpoints,
    FullInterval,
    Singleton,
    SkeSolution,
    brute_force_ske,
    diagonal_payoff,
    solve_ske,
    solve_ske_normalized,
)
from .game_core import (
    AffineTransform,
    AsymmetricGameError,
    BimatrixGame,
    DiagDistinct,
    DiagEqual,
    MixedStrategy,
    SymmetricGame,
    apply_affine,
    denormalize_payoff,
    expected_payoff,
    is_symmetric,
    nash_equilibria,
    normalize,
)
from .quantum import (
    QuantumBranch,
    QuantumSkeResult,
    UnitaryParams,
    amplitudes_closed_form,
    classical_embedding,
    evolve,
    optimize_diagonal,
    quantum_diagonal_payoff,
    quantum_payoff,
    quantum_ske,
    unitary_matrix,
)

__version__ = "0.1.0"
