"""Classical vs quantum comparisons, game-space sampling and oracle checks.

Random games are drawn with numpy's Philox counter-based generator. Chunk
``j`` of a run with seed ``s`` uses key ``s`` and counter ``(0, 0, 0, j)``, so
the stream for each chunk is fixed regardless of how chunks are scheduled.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .classical import SkeSolution, brute_force_ske, solve_ske
from .game_core import (
    DEFAULT_TOL,
    AsymmetricGameError,
    BimatrixGame,
    SymmetricGame,
    expected_payoff,
    nash_equilibria,
)
from .quantum import QuantumSkeResult, optimize_diagonal, quantum_ske

CHUNK_SIZE = 8192
MAX_SEED = 2**64 - 1
Z95 = 1.959963984540054


class GameSpecError(ValueError):
    """Malformed game description."""


@dataclass(frozen=True)
class GameSpec:
    """A game as supplied by the user: symmetric payoffs or a full bimatrix."""

    symmetric: tuple[float, float, float, float] | None = None
    bimatrix: BimatrixGame | None = None
    label: str = ""

    def __post_init__(self):
        if (self.symmetric is None) == (self.bimatrix is None):
            raise GameSpecError("exactly one of 'symmetric' or 'bimatrix' is required")

    @classmethod
    def parse(cls, text: str, label: str = "") -> GameSpec:
        """Parse ``"a00,a01,a10,a11"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise GameSpecError(f"expected four comma-separated payoffs, got {text!r}")
        try:
            values = tuple(float(p) for p in parts)
        except ValueError as exc:
            raise GameSpecError(f"non-numeric payoff in {text!r}") from exc
        _check_finite(values)
        return cls(symmetric=values, label=label or text.replace(" ", ""))

    @classmethod
    def from_record(cls, record) -> GameSpec:
        if not isinstance(record, dict):
            raise GameSpecError("record must be an object")
        label = record.get("label", "")
        if not isinstance(label, str):
            raise GameSpecError("'label' must be a string")
        unknown = set(record) - {"symmetric", "bimatrix", "label"}
        if unknown:
            raise GameSpecError(f"unknown fields: {sorted(unknown)}")
        if "symmetric" in record and "bimatrix" in record:
            raise GameSpecError("give either 'symmetric' or 'bimatrix', not both")
        if "symmetric" in record:
            values = _numbers(record["symmetric"], 4, "symmetric")
            return cls(symmetric=tuple(values), label=label)
        if "bimatrix" in record:
            bm = record["bimatrix"]
            if not isinstance(bm, dict) or set(bm) != {"a", "b"}:
                raise GameSpecError("'bimatrix' must have exactly the keys 'a' and 'b'")
            a = [_numbers(row, 2, "bimatrix row") for row in _rows(bm["a"])]
            b = [_numbers(row, 2, "bimatrix row") for row in _rows(bm["b"])]
            return cls(bimatrix=BimatrixGame(a, b), label=label)
        raise GameSpecError("record needs 'symmetric' or 'bimatrix'")

    def symmetric_game(self, tol: float = DEFAULT_TOL) -> SymmetricGame:
        """The game as a SymmetricGame; raises AsymmetricGameError otherwise."""
        if self.symmetric is not None:
            return SymmetricGame(*self.symmetric)
        return self.bimatrix.to_symmetric(tol)


def _rows(value):
    if not isinstance(value, list) or len(value) != 2:
        raise GameSpecError("payoff matrix must be a list of two rows")
    return value


def _numbers(value, n: int, what: str) -> list[float]:
    if not isinstance(value, list) or len(value) != n:
        raise GameSpecError(f"'{what}' must be a list of {n} numbers")
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        raise GameSpecError(f"'{what}' must contain only numbers")
    values = [float(v) for v in value]
    _check_finite(values)
    return values


def _check_finite(values) -> None:
    if not all(math.isfinite(v) for v in values):
        raise GameSpecError("payoffs must be finite")


@dataclass(frozen=True)
class InputError:
    """A game that could not be processed; ``code`` is the CLI exit code."""

    source: str
    message: str
    code: int


def read_game_specs(lines: Iterable[str]) -> list[Union[GameSpec, InputError]]:
    """Parse a JSON-lines stream of game records. Blank lines are skipped."""
    out: list[Union[GameSpec, InputError]] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            out.append(GameSpec.from_record(json.loads(line)))
        except (json.JSONDecodeError, GameSpecError, ValueError) as exc:
            out.append(InputError(f"line {lineno}", str(exc), 2))
    return out


class Classification(enum.Enum):
    EQUAL = "Equal"
    QUANTUM_ADVANTAGE = "QuantumAdvantage"


@dataclass(frozen=True)
class NashProfile:
    p: float
    q: float
    payoffs: tuple[float, float]


@dataclass(frozen=True)
class ComparisonReport:
    spec: GameSpec
    game: SymmetricGame
    classical: SkeSolution
    quantum: QuantumSkeResult
    gap: float
    classification: Classification
    nash_baseline: tuple[NashProfile, ...] = field(default=())
    nash_continuum: bool = False


def compare_game(
    spec: GameSpec, tol: float = DEFAULT_TOL, sym_tol: float = DEFAULT_TOL
) -> ComparisonReport:
    game = spec.symmetric_game(sym_tol)
    classical = solve_ske(game, tol)
    quantum = quantum_ske(game, tol)
    gap = quantum.payoff - classical.payoff
    cls = Classification.QUANTUM_ADVANTAGE if gap > tol else Classification.EQUAL

    bimatrix = game.to_bimatrix()
    nash = nash_equilibria(bimatrix, tol)
    baseline = tuple(
        NashProfile(s1.p, s2.p, expected_payoff(bimatrix, s1, s2)) for s1, s2 in nash
    )
    return ComparisonReport(spec, game, classical, quantum, gap, cls, baseline, nash.continuum)


def compare_games(
    items: Sequence[Union[GameSpec, InputError]],
    tol: float = DEFAULT_TOL,
    sym_tol: float = DEFAULT_TOL,
) -> list[Union[ComparisonReport, InputError]]:
    """Compare each game; failures become InputError entries in place."""
    out: list[Union[ComparisonReport, InputError]] = []
    for i, item in enumerate(items, start=1):
        if isinstance(item, InputError):
            out.append(item)
            continue
        try:
            out.append(compare_game(item, tol, sym_tol))
        except AsymmetricGameError as exc:
            out.append(InputError(item.label or f"game {i}", str(exc), 3))
    return out


# ---------------------------------------------------------------- sampling


def _check_seed(seed: int) -> None:
    if not 0 <= seed <= MAX_SEED:
        raise ValueError("seed must be an unsigned 64-bit integer")


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, chunk]))


def _chunk_payoffs(seed: int, chunk: int, count: int, low: float, high: float) -> np.ndarray:
    return chunk_generator(seed, chunk).uniform(low, high, size=(count, 4))


def random_payoffs(seed: int, n: int, low: float = -10.0, high: float = 10.0) -> np.ndarray:
    """``(n, 4)`` array of i.i.d. uniform payoffs ``a00, a01, a10, a11``."""
    _check_seed(seed)
    parts = [
        _chunk_payoffs(seed, j, min(CHUNK_SIZE, n - start), low, high)
        for j, start in enumerate(range(0, n, CHUNK_SIZE))
    ]
    return np.concatenate(parts) if parts else np.empty((0, 4))


def random_games(seed: int, n: int, low: float = -10.0, high: float = 10.0) -> list[SymmetricGame]:
    return [SymmetricGame(*row) for row in random_payoffs(seed, n, low, high)]


def advantage_mask_and_gap(payoffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized quantum-advantage test and closed-form gap (zero elsewhere)."""
    a00, a01, a10, a11 = payoffs.T
    s = a01 + a10
    hi = np.maximum(a00, a11)
    lo = np.minimum(a00, a11)
    adv = s - 2 * hi > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        gap = np.where(adv, (s - 2 * hi) * (s - 2 * lo) / (4 * (s - a00 - a11)), 0.0)
    return adv, gap


def _chunk_stats(args) -> tuple[int, float]:
    seed, chunk, count, low, high = args
    adv, gap = advantage_mask_and_gap(_chunk_payoffs(seed, chunk, count, low, high))
    return int(adv.sum()), float(gap[adv].sum())


@dataclass(frozen=True)
class SampleReport:
    seed: int
    n: int
    low: float
    high: float
    advantage_count: int
    advantage_fraction: float
    ci95_halfwidth: float
    mean_gap: float | None
    distribution: str = "uniform"


def sample(
    n: int, seed: int, low: float = 0.0, high: float = 1.0, workers: int = 1
) -> SampleReport:
    """Estimate the share of games whose quantum SKE payoff is strictly higher.

    The result does not depend on ``workers``: chunks are reduced in order.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not (math.isfinite(low) and math.isfinite(high) and low < high):
        raise ValueError("bounds must be finite with low < high")
    _check_seed(seed)
    jobs = [
        (seed, j, min(CHUNK_SIZE, n - start), low, high)
        for j, start in enumerate(range(0, n, CHUNK_SIZE))
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(_chunk_stats, jobs))
    else:
        stats = [_chunk_stats(job) for job in jobs]

    count = sum(c for c, _ in stats)
    gap_sum = math.fsum(g for _, g in stats)
    frac = count / n
    half = Z95 * math.sqrt(frac * (1 - frac) / n)
    mean_gap = gap_sum / count if count else None
    return SampleReport(seed, n, float(low), float(high), count, frac, half, mean_gap)


# ----------------------------------------------------------- verification


@dataclass(frozen=True)
class VerifySummary:
    n_games: int
    seed: int
    tol: float
    grid: int
    classical_max_deviation: float
    quantum_max_deviation: float
    failures: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify(
    n_games: int, seed: int, tol: float = 1e-5, grid: int = 16, low: float = -10.0, high: float = 10.0
) -> VerifySummary:
    """Cross-check both closed forms against their numerical oracles."""
    worst_c = worst_q = 0.0
    failures = []
    for i, g in enumerate(random_games(seed, n_games, low, high)):
        dev_c = abs(brute_force_ske(g)[1] - solve_ske(g).payoff)
        dev_q = abs(optimize_diagonal(g, grid=grid)[1] - quantum_ske(g).payoff)
        worst_c, worst_q = max(worst_c, dev_c), max(worst_q, dev_q)
        if dev_c > tol or dev_q > tol:
            failures.append(i)
    return VerifySummary(n_games, seed, tol, grid, worst_c, worst_q, tuple(failures))


# ---------------------------------------------------------------- output


def fmt(x: float | None) -> str:
    return "nan" if x is None else f"{x:.12g}"


def _num(x: float | None):
    """Round to 12 significant digits for structured output."""
    return None if x is None else float(f"{x:.12g}")


CSV_COLUMNS = [
    "label", "a00", "a01", "a10", "a11", "classical_p_repr",
    "classical_payoff", "quantum_payoff", "gap", "classification",
]


def report_record(r: ComparisonReport) -> dict:
    c, q = r.classical, r.quantum
    return {
        "label": r.spec.label,
        "game": {k: _num(v) for k, v in zip(("a00", "a01", "a10", "a11"), r.game.payoffs)},
        "classical": {
            "strategies": str(c.strategies),
            "payoff": _num(c.payoff),
            "branch": c.branch.value,
            "normalized_p": _num(c.normalized_p),
            "swapped": c.swapped,
        },
        "quantum": {
            "payoff": _num(q.payoff),
            "witness": {k: _num(v) for k, v in zip(("theta", "alpha", "beta"), q.witness.as_tuple())},
            "branch": q.branch.value,
        },
        "gap": _num(r.gap),
        "classification": r.classification.value,
        "nash_baseline": [
            {"p": _num(n.p), "q": _num(n.q), "payoffs": [_num(n.payoffs[0]), _num(n.payoffs[1])]}
            for n in r.nash_baseline
        ],
        "nash_continuum": r.nash_continuum,
    }


def _csv_row(r: ComparisonReport) -> list[str]:
    return [r.spec.label, *(fmt(v) for v in r.game.payoffs), str(r.classical.strategies),
            fmt(r.classical.payoff), fmt(r.quantum.payoff), fmt(r.gap), r.classification.value]


def _error_record(e: InputError) -> dict:
    return {"error": e.message, "source": e.source, "code": e.code}


def emit_report(items: Sequence[Union[ComparisonReport, InputError]], format: str = "human") -> str:
    """Render comparison reports. Errors appear inline except in csv, which
    carries reports only."""
    if format == "json-lines":
        lines = [
            json.dumps(_error_record(it) if isinstance(it, InputError) else report_record(it))
            for it in items
        ]
        return "".join(line + "\n" for line in lines)
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for it in items:
            if isinstance(it, ComparisonReport):
                w.writerow(_csv_row(it))
        return buf.getvalue()
    if format == "human":
        return _human_table(items)
    raise ValueError(f"unknown format {format!r}")


def _human_table(items) -> str:
    header = ["game", "classical SKE p", "classical", "quantum", "gap", "class", "Nash (p, q)"]
    rows = []
    for it in items:
        if isinstance(it, InputError):
            rows.append([it.source, f"error: {it.message}"])
            continue
        nash = "; ".join(f"({fmt(n.p)}, {fmt(n.q)})" for n in it.nash_baseline)
        if it.nash_continuum:
            nash += " + continuum"
        rows.append([it.spec.label or ",".join(fmt(v) for v in it.game.payoffs),
                     str(it.classical.strategies), fmt(it.classical.payoff),
                     fmt(it.quantum.payoff), fmt(it.gap), it.classification.value, nash])
    widths = [len(h) for h in header]
    for row in rows:
        if len(row) == len(header):
            widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _keyvalue(pairs: list[tuple[str, object]], format: str) -> str:
    if format == "json-lines":
        return json.dumps(dict(pairs)) + "\n"
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([k for k, _ in pairs])
        w.writerow(["" if v is None else fmt(v) if isinstance(v, float) else v for _, v in pairs])
        return buf.getvalue()
    if format == "human":
        width = max(len(k) for k, _ in pairs)
        return "".join(
            f"{k.ljust(width)}  {fmt(v) if isinstance(v, float) or v is None else v}\n"
            for k, v in pairs
        )
    raise ValueError(f"unknown format {format!r}")


def emit_sample(r: SampleReport, format: str = "human") -> str:
    return _keyvalue([
        ("seed", r.seed), ("n", r.n), ("distribution", r.distribution),
        ("low", _num(r.low)), ("high", _num(r.high)),
        ("advantage_count", r.advantage_count),
        ("advantage_fraction", _num(r.advantage_fraction)),
        ("ci95_halfwidth", _num(r.ci95_halfwidth)),
        ("mean_gap", _num(r.mean_gap)),
    ], format)


def emit_verify(s: VerifySummary, format: str = "human") -> str:
    return _keyvalue([
        ("n_games", s.n_games), ("seed", s.seed), ("tol", s.tol), ("grid", s.grid),
        ("classical_max_deviation", s.classical_max_deviation),
        ("quantum_max_deviation", s.quantum_max_deviation),
        ("failures", len(s.failures)),
        ("status", "pass" if s.passed else "FAIL"),
    ], format)
