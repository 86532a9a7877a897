"""Simple Kantian equilibria of symmetric 2x2 games under classical mixing.

Both players are constrained to the same mixed strategy ``(p, 1 - p)``; the
equilibrium strategies are the maximizers of the resulting diagonal payoff
over ``p in [0, 1]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .game_core import (
    DEFAULT_TOL,
    DiagDistinct,
    DiagEqual,
    NormalizedGame,
    SymmetricGame,
    normalize,
)

INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class Singleton:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {self.p!r}")

    def members(self, n: int = 0) -> list[float]:
        return [self.p]

    def flipped(self) -> Singleton:
        return Singleton(1.0 - self.p)

    def __str__(self):
        return f"{self.p:.12g}"


@dataclass(frozen=True)
class Endpoints:
    """The two-point set {0, 1}."""

    def members(self, n: int = 0) -> list[float]:
        return [0.0, 1.0]

    def flipped(self) -> Endpoints:
        return self

    def __str__(self):
        return "{0,1}"


@dataclass(frozen=True)
class FullInterval:
    """Every p in [0, 1]."""

    def members(self, n: int = 11) -> list[float]:
        return list(np.linspace(0.0, 1.0, max(n, 2)))

    def flipped(self) -> FullInterval:
        return self

    def __str__(self):
        return "[0,1]"


SkeStrategySet = Union[Singleton, Endpoints, FullInterval]


class ClassicalBranch(enum.Enum):
    """Which case of the closed-form argmax produced the solution."""

    PURE_DIAGONAL = "pure_diagonal"  # {1} when a01 + a10 <= 2 a00 and a00 > a11
    ENDPOINTS = "endpoints"  # {0, 1}, a00 = a11 and a01 + a10 < 2 a00
    FULL_INTERVAL = "full_interval"  # [0, 1], constant diagonal payoff
    INTERIOR_MIX = "interior_mix"  # a01 + a10 > 2 a00


@dataclass(frozen=True)
class SkeSolution:
    """Classical SKE. ``strategies`` refer to the game's own strategy labels;
    ``normalized_p`` is the probability in the normalized, possibly relabelled,
    game (``None`` for set-valued solutions)."""

    strategies: SkeStrategySet
    payoff: float
    branch: ClassicalBranch
    normalized_p: float | None
    swapped: bool = False

    @property
    def representative_p(self) -> float:
        if isinstance(self.strategies, Singleton):
            return self.strategies.p
        return 1.0


def diagonal_payoff(g: SymmetricGame, p: float) -> float:
    """Common payoff when both players mix ``(p, 1 - p)``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    r = 1.0 - p
    return p * p * g.a00 + p * r * (g.a01 + g.a10) + r * r * g.a11


def solve_ske_normalized(n: NormalizedGame, tol: float = DEFAULT_TOL) -> SkeStrategySet:
    """Argmax of the diagonal payoff of a normalized game.

    Values within ``tol`` of a branch boundary take the boundary branch.
    """
    if isinstance(n, DiagDistinct):
        if n.d < 2 - tol:
            return Singleton(1.0)
        if n.d <= 2 + tol:
            # -d / (2(1 - d)) equals 1 at d = 2
            return Singleton(1.0)
        return Singleton(-n.d / (2 * (1 - n.d)))
    if n.e < -tol:
        return Endpoints()
    if n.e <= tol:
        return FullInterval()
    return Singleton(0.5)


def solve_ske(g: SymmetricGame, tol: float = DEFAULT_TOL) -> SkeSolution:
    n, _ = normalize(g, tol)
    strategies = solve_ske_normalized(n, tol)
    src = g.swapped() if n.swapped else g
    a00, a01, a10, a11 = src.payoffs

    if isinstance(n, DiagDistinct):
        # the boundary d = 2 is reported with the interior-mix tag
        branch = ClassicalBranch.PURE_DIAGONAL if n.d < 2 - tol else ClassicalBranch.INTERIOR_MIX
    elif isinstance(strategies, Endpoints):
        branch = ClassicalBranch.ENDPOINTS
    elif isinstance(strategies, FullInterval):
        branch = ClassicalBranch.FULL_INTERVAL
    else:
        branch = ClassicalBranch.INTERIOR_MIX

    s = a01 + a10
    if branch is ClassicalBranch.INTERIOR_MIX:
        payoff = (s * s - 4 * a00 * a11) / (4 * (s - a00 - a11))
    else:
        payoff = a00

    normalized_p = strategies.p if isinstance(strategies, Singleton) else None
    if n.swapped:
        strategies = strategies.flipped()
    return SkeSolution(strategies, payoff, branch, normalized_p, n.swapped)


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10
) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def brute_force_ske(g: SymmetricGame, grid_points: int = 1001) -> tuple[float, float]:
    """Grid search plus golden-section refinement of the diagonal payoff.

    Independent of the closed form: it only evaluates the payoff.
    """
    if grid_points < 3:
        raise ValueError("grid_points must be at least 3")
    grid = np.linspace(0.0, 1.0, grid_points)
    values = [diagonal_payoff(g, float(p)) for p in grid]
    i = int(np.argmax(values))
    best_p, best_v = float(grid[i]), values[i]
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, grid_points - 1)])
    p, v = golden_section_max(lambda x: diagonal_payoff(g, x), lo, hi)
    if v > best_v:
        best_p, best_v = p, v
    return best_p, best_v
