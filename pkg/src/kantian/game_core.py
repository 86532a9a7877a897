"""Two-player 2x2 games: representations, payoffs, affine maps and normalization.

Strategy 0 is the "first" strategy. A mixed strategy is described by the
probability ``p`` of playing strategy 0, so ``(p, 1 - p)`` in the usual
notation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Union

import numpy as np

DEFAULT_TOL = 1e-9


def _finite(values, what: str) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{what} must be finite real numbers, got {v!r}")


def _frozen_matrix(m) -> np.ndarray:
    arr = np.array(m, dtype=float)
    if arr.shape != (2, 2):
        raise ValueError(f"payoff matrix must be 2x2, got shape {arr.shape}")
    _finite(arr.ravel(), "payoffs")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BimatrixGame:
    """A 2x2 bimatrix game ``(A, B)``; ``a[k, l]`` is the row player's payoff."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _frozen_matrix(self.a))
        object.__setattr__(self, "b", _frozen_matrix(self.b))

    def __eq__(self, other):
        if not isinstance(other, BimatrixGame):
            return NotImplemented
        return np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b)

    def __hash__(self):
        return hash((self.a.tobytes(), self.b.tobytes()))

    def __repr__(self):
        return f"BimatrixGame(a={self.a.tolist()}, b={self.b.tolist()})"

    def allclose(self, other: BimatrixGame, tol: float = 1e-12) -> bool:
        return bool(
            np.all(np.abs(self.a - other.a) <= tol)
            and np.all(np.abs(self.b - other.b) <= tol)
        )

    def to_symmetric(self, tol: float = DEFAULT_TOL) -> SymmetricGame:
        """Return the row player's payoffs as a SymmetricGame.

        Raises ``AsymmetricGameError`` naming the offending entries when
        ``b`` is not the transpose of ``a`` within ``tol``.
        """
        bad = asymmetric_entries(self, tol)
        if bad:
            raise AsymmetricGameError(bad)
        return SymmetricGame(*self.a.ravel())


class AsymmetricGameError(ValueError):
    def __init__(self, entries: list[str]):
        self.entries = entries
        super().__init__("game is not symmetric: " + "; ".join(entries))


@dataclass(frozen=True)
class SymmetricGame:
    """Symmetric 2x2 game given by the row player's payoffs.

    The column player's matrix is the transpose, so the profile ``(k, l)``
    pays ``(a_kl, a_lk)``.
    """

    a00: float
    a01: float
    a10: float
    a11: float

    def __post_init__(self):
        for name in ("a00", "a01", "a10", "a11"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _finite(self.payoffs, "payoffs")

    @property
    def payoffs(self) -> tuple[float, float, float, float]:
        return (self.a00, self.a01, self.a10, self.a11)

    def to_bimatrix(self) -> BimatrixGame:
        a = [[self.a00, self.a01], [self.a10, self.a11]]
        return BimatrixGame(a, np.transpose(a))

    def swapped(self) -> SymmetricGame:
        """Relabel the strategies (swap both rows and both columns)."""
        return SymmetricGame(self.a11, self.a10, self.a01, self.a00)

    def affine(self, t: AffineTransform) -> SymmetricGame:
        return SymmetricGame(*(t(x) for x in self.payoffs))


@dataclass(frozen=True)
class MixedStrategy:
    """Probability ``p`` of playing the first pure strategy."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {p!r}")
        object.__setattr__(self, "p", p)

    @property
    def probabilities(self) -> tuple[float, float]:
        return (self.p, 1.0 - self.p)


@dataclass(frozen=True)
class AffineTransform:
    """The positive affine map ``x -> scale * x + shift``."""

    scale: float
    shift: float = 0.0

    def __post_init__(self):
        _finite((self.scale, self.shift), "affine coefficients")
        if not self.scale > 0:
            raise ValueError(f"affine scale must be positive, got {self.scale!r}")

    def __call__(self, x):
        return self.scale * x + self.shift

    def inverse(self) -> AffineTransform:
        return AffineTransform(1.0 / self.scale, -self.shift / self.scale)

    def invert(self, y):
        """Apply the inverse map without forming it (avoids a rounding step)."""
        return (y - self.shift) / self.scale

    def compose(self, inner: AffineTransform) -> AffineTransform:
        """Return ``self o inner``."""
        return AffineTransform(self.scale * inner.scale, self.scale * inner.shift + self.shift)


IDENTITY = AffineTransform(1.0, 0.0)


@dataclass(frozen=True)
class DiagDistinct:
    """Normal form with diagonal payoffs 1 and 0.

    Row payoffs are ``[[1, a], [d - a, 0]]``.
    """

    a: float
    d: float
    swapped: bool = False

    def game(self) -> SymmetricGame:
        return SymmetricGame(1.0, self.a, self.d - self.a, 0.0)


@dataclass(frozen=True)
class DiagEqual:
    """Normal form with both diagonal payoffs 0.

    Row payoffs are ``[[0, b], [e - b, 0]]``.
    """

    b: float
    e: float
    swapped: bool = False

    def game(self) -> SymmetricGame:
        return SymmetricGame(0.0, self.b, self.e - self.b, 0.0)


NormalizedGame = Union[DiagDistinct, DiagEqual]


def expected_payoff(
    g: BimatrixGame, s1: MixedStrategy, s2: MixedStrategy
) -> tuple[float, float]:
    x = np.array(s1.probabilities)
    y = np.array(s2.probabilities)
    return float(x @ g.a @ y), float(x @ g.b @ y)


def asymmetric_entries(g: BimatrixGame, tol: float = DEFAULT_TOL) -> list[str]:
    bad = []
    for k, l in itertools.product(range(2), repeat=2):
        if abs(g.b[l, k] - g.a[k, l]) > tol:
            bad.append(f"b[{l}][{k}]={g.b[l, k]:.12g} != a[{k}][{l}]={g.a[k, l]:.12g}")
    return bad


def is_symmetric(g: BimatrixGame, tol: float = DEFAULT_TOL) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return not asymmetric_entries(g, tol)


def apply_affine(g: BimatrixGame, t1: AffineTransform, t2: AffineTransform) -> BimatrixGame:
    for t in (t1, t2):
        if not t.scale > 0:
            raise ValueError("affine scale must be positive")
    return BimatrixGame(t1(g.a), t2(g.b))


def normalize(
    g: SymmetricGame, tol: float = DEFAULT_TOL
) -> tuple[NormalizedGame, AffineTransform]:
    """Map ``g`` to one of the two canonical forms by a positive affine transform.

    When ``a00 < a11`` (beyond ``tol``) the strategies are relabelled first and
    the result is flagged ``swapped``. The returned transform maps the payoffs
    of the (possibly relabelled) game onto the normalized ones.
    """
    swapped = g.a00 < g.a11 - tol
    src = g.swapped() if swapped else g
    a00, a01, a10, a11 = src.payoffs
    if abs(a00 - a11) <= tol:
        t = AffineTransform(1.0, -a00)
        return DiagEqual(b=a01 - a00, e=a01 + a10 - 2 * a00, swapped=swapped), t
    span = a00 - a11
    t = AffineTransform(1.0 / span, -a11 / span)
    n = DiagDistinct(a=(a01 - a11) / span, d=(a01 + a10 - 2 * a11) / span, swapped=swapped)
    return n, t


def denormalize_payoff(n: NormalizedGame, t: AffineTransform, v: float) -> float:
    """Map a payoff of the normalized game back to the original payoff scale."""
    if isinstance(n, DiagEqual):
        # inverse of x -> x - a00
        return v - t.shift
    return t.invert(v)


@dataclass(frozen=True)
class NashEquilibria:
    """Equilibria of a 2x2 game found by support enumeration.

    ``profiles`` holds ``(p, q)`` pairs. ``indifferent_players`` lists players
    (1 or 2) whose payoff does not depend on their own strategy at all; for
    such games the equilibrium set contains continua that ``profiles`` only
    samples at the pure endpoints.
    """

    profiles: tuple[tuple[MixedStrategy, MixedStrategy], ...]
    indifferent_players: tuple[int, ...] = field(default=())

    @property
    def continuum(self) -> bool:
        return bool(self.indifferent_players)

    def __iter__(self) -> Iterator[tuple[MixedStrategy, MixedStrategy]]:
        return iter(self.profiles)

    def __len__(self) -> int:
        return len(self.profiles)

    def __getitem__(self, i):
        return self.profiles[i]

    def as_pairs(self) -> list[tuple[float, float]]:
        return [(s1.p, s2.p) for s1, s2 in self.profiles]


def nash_equilibria(g: BimatrixGame, tol: float = DEFAULT_TOL) -> NashEquilibria:
    a, b = g.a, g.b
    found: list[tuple[float, float]] = []

    # pure profiles: no profitable unilateral deviation
    for k, l in itertools.product(range(2), repeat=2):
        if a[k, l] >= a[1 - k, l] - tol and b[k, l] >= b[k, 1 - l] - tol:
            found.append((1.0 - k, 1.0 - l))

    # interior mixing: each player makes the other indifferent
    # row gain of strategy 0 over 1 against q: (a00 - a10) q + (a01 - a11)(1 - q)
    row_den = a[0, 0] - a[1, 0] - a[0, 1] + a[1, 1]
    col_den = b[0, 0] - b[0, 1] - b[1, 0] + b[1, 1]
    if abs(row_den) > tol and abs(col_den) > tol:
        q = (a[1, 1] - a[0, 1]) / row_den
        p = (b[1, 1] - b[1, 0]) / col_den
        if tol < p < 1 - tol and tol < q < 1 - tol:
            found.append((float(p), float(q)))

    unique: list[tuple[float, float]] = []
    for p, q in found:
        if not any(abs(p - u) <= tol and abs(q - v) <= tol for u, v in unique):
            unique.append((p, q))

    indifferent = []
    if abs(a[0, 0] - a[1, 0]) <= tol and abs(a[0, 1] - a[1, 1]) <= tol:
        indifferent.append(1)
    if abs(b[0, 0] - b[0, 1]) <= tol and abs(b[1, 0] - b[1, 1]) <= tol:
        indifferent.append(2)

    profiles = tuple((MixedStrategy(p), MixedStrategy(q)) for p, q in unique)
    return NashEquilibria(profiles, tuple(indifferent))
