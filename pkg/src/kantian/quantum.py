"""Eisert-Wilkens-Lewenstein (EWL) quantization of 2x2 games.

Each player applies an SU(2) operator to one qubit of the maximally entangled
state ``(|00> + i|11>) / sqrt(2)``. Outcome ``(k, l)`` has probability
``|<Psi_kl| U1 (x) U2 |Psi>|^2`` where ``Psi_kl = C_k (x) C_l Psi``.

Direct tensor-product evolution (:func:`evolve`) is the ground truth;
:func:`amplitudes_closed_form` is the trigonometric shortcut checked against it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import minimize

from .game_core import DEFAULT_TOL, BimatrixGame, SymmetricGame

TWO_PI = 2 * math.pi
OUTCOMES = ((0, 0), (0, 1), (1, 0), (1, 1))

C0 = np.eye(2, dtype=complex)
C1 = np.array([[0, 1j], [1j, 0]])


@dataclass(frozen=True)
class UnitaryParams:
    """Angles of ``U(theta, alpha, beta)``; theta in [0, pi], phases wrapped mod 2 pi."""

    theta: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "alpha", float(self.alpha) % TWO_PI)
        object.__setattr__(self, "beta", float(self.beta) % TWO_PI)

    @classmethod
    def canonical(cls, theta: float, alpha: float, beta: float) -> UnitaryParams:
        """Parameters in range describing the same matrix as arbitrary real angles.

        Uses ``U(t + 2pi, a, b) = U(t, a + pi, b + pi)`` and
        ``U(2pi - t, a, b) = U(t, a + pi, b)``.
        """
        theta = float(theta) % (2 * TWO_PI)
        if theta >= TWO_PI:
            theta -= TWO_PI
            alpha += math.pi
            beta += math.pi
        if theta > math.pi:
            theta = TWO_PI - theta
            alpha += math.pi
        return cls(theta, alpha, beta)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.theta, self.alpha, self.beta)


IDENTITY_PARAMS = UnitaryParams(0.0, 0.0, 0.0)


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Amplitudes over the computational basis |00>, |01>, |10>, |11>."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (4,):
            raise ValueError("a two-qubit state has four amplitudes")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: TwoQubitState) -> complex:
        """``<self|other>``."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class AmplitudeVector:
    """``c_kl = <Psi_kl| U1 (x) U2 |Psi>`` for the four outcomes."""

    c00: complex
    c01: complex
    c10: complex
    c11: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c00, self.c01, self.c10, self.c11], dtype=complex)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.as_array()) ** 2


class QuantumBranch(enum.Enum):
    BEST_DIAGONAL = "best_diagonal"  # max(a00, a11)
    OFF_DIAGONAL_AVERAGE = "off_diagonal_average"  # (a01 + a10) / 2


@dataclass(frozen=True)
class QuantumSkeResult:
    payoff: float
    witness: UnitaryParams
    branch: QuantumBranch


def unitary_matrix(u: UnitaryParams) -> np.ndarray:
    c, s = math.cos(u.theta / 2), math.sin(u.theta / 2)
    ea, eb = np.exp(1j * u.alpha), np.exp(1j * u.beta)
    return np.array([[ea * c, 1j * eb * s], [1j * np.conj(eb) * s, np.conj(ea) * c]])


def initial_state() -> TwoQubitState:
    return TwoQubitState(np.array([1, 0, 0, 1j]) / math.sqrt(2))


def basis_state(k: int, l: int) -> TwoQubitState:
    if k not in (0, 1) or l not in (0, 1):
        raise ValueError("basis labels must be bits")
    ops = (C0, C1)
    return TwoQubitState(np.kron(ops[k], ops[l]) @ initial_state().amplitudes)


_PSI = initial_state().amplitudes
# rows are <Psi_kl|, so _PROJ @ state gives the four coefficients
_PROJ = np.conj(np.array([basis_state(k, l).amplitudes for k, l in OUTCOMES]))


def evolve(u1: UnitaryParams, u2: UnitaryParams) -> AmplitudeVector:
    final = np.kron(unitary_matrix(u1), unitary_matrix(u2)) @ _PSI
    return AmplitudeVector(*(complex(c) for c in _PROJ @ final))


def _unitary_batch(theta, alpha, beta) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    ea, eb = np.exp(1j * alpha), np.exp(1j * beta)
    out = np.empty(np.shape(theta) + (2, 2), dtype=complex)
    out[..., 0, 0] = ea * c
    out[..., 0, 1] = 1j * eb * s
    out[..., 1, 0] = 1j * np.conj(eb) * s
    out[..., 1, 1] = np.conj(ea) * c
    return out


def diagonal_probabilities(theta, alpha, beta) -> np.ndarray:
    """Outcome probabilities when both players use ``U(theta, alpha, beta)``.

    Vectorized over equal-shaped angle arrays (any real angles; the matrix
    formula is applied as is). Computed by explicit tensor products.
    """
    theta, alpha, beta = np.broadcast_arrays(
        np.asarray(theta, float), np.asarray(alpha, float), np.asarray(beta, float)
    )
    u = _unitary_batch(theta, alpha, beta)
    kron = np.einsum("...ij,...kl->...ikjl", u, u).reshape(theta.shape + (4, 4))
    final = kron @ _PSI
    return np.abs(final @ _PROJ.T) ** 2


def amplitudes_closed_form(u1: UnitaryParams, u2: UnitaryParams) -> AmplitudeVector:
    """Real trigonometric expressions for the four coefficients."""
    t1, a1, b1 = u1.as_tuple()
    t2, a2, b2 = u2.as_tuple()
    c1, s1 = math.cos(t1 / 2), math.sin(t1 / 2)
    c2, s2 = math.cos(t2 / 2), math.sin(t2 / 2)
    return AmplitudeVector(
        math.cos(a1 + a2) * c1 * c2 + math.sin(b1 + b2) * s1 * s2,
        math.cos(a1 - b2) * c1 * s2 + math.sin(a2 - b1) * s1 * c2,
        math.cos(a2 - b1) * s1 * c2 + math.sin(a1 - b2) * c1 * s2,
        math.cos(b1 + b2) * s1 * s2 - math.sin(a1 + a2) * c1 * c2,
    )


def _payoff_matrices(g: Union[SymmetricGame, BimatrixGame]) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(g, SymmetricGame):
        g = g.to_bimatrix()
    return g.a, g.b


def quantum_payoff(
    g: Union[SymmetricGame, BimatrixGame], u1: UnitaryParams, u2: UnitaryParams
) -> tuple[float, float]:
    a, b = _payoff_matrices(g)
    probs = evolve(u1, u2).probabilities()
    return float(a.ravel() @ probs), float(b.ravel() @ probs)


def quantum_diagonal_payoff(g: SymmetricGame, u: UnitaryParams) -> float:
    return quantum_payoff(g, u, u)[0]


# Witnesses: all weight on outcome (0, 0), on (1, 1), or split evenly over
# the two off-diagonal outcomes.
WITNESS_FIRST = UnitaryParams(0.0, math.pi / 2, 0.0)
WITNESS_SECOND = UnitaryParams(math.pi, 0.0, 0.0)
WITNESS_OFF_DIAGONAL = UnitaryParams(math.pi / 2, math.pi / 4, 0.0)


def quantum_ske(g: SymmetricGame, tol: float = DEFAULT_TOL) -> QuantumSkeResult:
    """Closed-form best common quantum strategy payoff."""
    best = max(g.a00, g.a11)
    off = g.a01 + g.a10
    if off - 2 * best > tol:
        return QuantumSkeResult(off / 2, WITNESS_OFF_DIAGONAL, QuantumBranch.OFF_DIAGONAL_AVERAGE)
    witness = WITNESS_SECOND if g.a00 < g.a11 - tol else WITNESS_FIRST
    return QuantumSkeResult(best, witness, QuantumBranch.BEST_DIAGONAL)


def optimize_diagonal(
    g: SymmetricGame,
    grid: int = 16,
    refine_tol: float = 1e-9,
    seeds: int = 5,
) -> tuple[UnitaryParams, float]:
    """Numerically maximize the diagonal quantum payoff over (theta, alpha, beta).

    Coarse grid on [0, pi] x [0, 2pi)^2, then Nelder-Mead from the ``seeds``
    best grid points. Ties on the grid are broken lexicographically on the
    angles, so the result is deterministic.
    """
    if grid < 8:
        raise ValueError("grid must have at least 8 points per dimension")
    weights = np.array(g.payoffs)

    thetas = np.linspace(0.0, math.pi, grid)
    phases = np.arange(grid) * (TWO_PI / grid)
    T, A, B = np.meshgrid(thetas, phases, phases, indexing="ij")
    T, A, B = T.ravel(), A.ravel(), B.ravel()
    values = diagonal_probabilities(T, A, B) @ weights
    # primary key -value, then theta, alpha, beta
    order = np.lexsort((B, A, T, -values))[:seeds]

    def objective(x):
        return -float(diagonal_probabilities(x[0], x[1], x[2]) @ weights)

    best_x = np.array([T[order[0]], A[order[0]], B[order[0]]])
    best_v = float(values[order[0]])
    for i in order:
        x0 = np.array([T[i], A[i], B[i]])
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "xatol": refine_tol,
                "fatol": 1e-12,
                "maxiter": 4000,
                "initial_simplex": x0 + np.vstack([np.zeros(3), 0.1 * np.eye(3)]),
            },
        )
        if -res.fun > best_v:
            best_x, best_v = res.x, -float(res.fun)
    params = UnitaryParams.canonical(*best_x)
    return params, quantum_diagonal_payoff(g, params)


def classical_embedding(g: SymmetricGame, p: float) -> float:
    """Quantum diagonal payoff of ``U(2 arccos(sqrt p), 0, 0)``.

    With zero phases the outcome distribution factorizes, reproducing the
    classical mixed strategy ``(p, 1 - p)``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    theta = 2 * math.acos(math.sqrt(p))
    return quantum_diagonal_payoff(g, UnitaryParams(min(theta, math.pi)))
