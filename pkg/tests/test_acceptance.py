"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary."""

import io
import math
import time
import timeit

import numpy as np

from kantian.analysis import random_games, sample
from kantian.classical import ClassicalBranch, Singleton, brute_force_ske, solve_ske
from kantian.cli import main
from kantian.game_core import AffineTransform, SymmetricGame, apply_affine, nash_equilibria
from kantian.quantum import (
    UnitaryParams,
    amplitudes_closed_form,
    evolve,
    optimize_diagonal,
    quantum_diagonal_payoff,
    quantum_payoff,
    quantum_ske,
)

from conftest import GENERAL_SUM_GAME, ZERO_SUM_GAME, P_ADVANTAGE_UNIFORM

SEED = 20240601


def test_ac1_battle_of_sexes_like(record_property):
    """AC1 (1,5,3,1): classical p=1/2 payoff 2.5, quantum payoff 4, tol 1e-9, < 1 ms"""
    g = SymmetricGame(1, 5, 3, 1)
    c, q = solve_ske(g), quantum_ske(g)
    assert isinstance(c.strategies, Singleton)
    assert abs(c.strategies.p - 0.5) <= 1e-9
    assert abs(c.payoff - 2.5) <= 1e-9
    assert abs(q.payoff - 4.0) <= 1e-9
    per_call = min(timeit.repeat(lambda: (solve_ske(g), quantum_ske(g)), number=100, repeat=5)) / 100
    record_property("seconds_per_solve", f"{per_call:.2e}")
    assert per_call < 1e-3


def test_ac2_prisoners_dilemma():
    """AC2 (3,0,5,1): classical {1} payoff 3, quantum payoff 3 with witness U(0,pi/2,0), tol 1e-9"""
    g = SymmetricGame(3, 0, 5, 1)
    c, q = solve_ske(g), quantum_ske(g)
    assert c.strategies == Singleton(1.0) and c.branch is ClassicalBranch.PURE_DIAGONAL
    assert abs(c.payoff - 3) <= 1e-9
    assert abs(q.payoff - 3) <= 1e-9
    assert q.witness == UnitaryParams(0, math.pi / 2, 0)
    assert abs(quantum_diagonal_payoff(g, q.witness) - 3) <= 1e-9


def test_ac3_nash_baseline():
    """AC3 general-sum game and its zero-sum affine image: unique NE ((2/5,3/5),(1/2,1/2)), tol 1e-9"""
    image = apply_affine(GENERAL_SUM_GAME, AffineTransform(1 / 2, 5), AffineTransform(1 / 3, -3))
    assert image.allclose(ZERO_SUM_GAME, 1e-9)
    for g in (GENERAL_SUM_GAME, ZERO_SUM_GAME, image):
        eq = nash_equilibria(g)
        assert len(eq) == 1 and not eq.continuum
        s1, s2 = eq[0]
        assert np.allclose(s1.probabilities, (2 / 5, 3 / 5), atol=1e-9)
        assert np.allclose(s2.probabilities, (1 / 2, 1 / 2), atol=1e-9)


def test_ac4_classical_oracle(record_property):
    """AC4 1000 random games in [-10,10]: |closed form - grid+golden max| <= 1e-6, < 10 s"""
    start = time.perf_counter()
    worst = 0.0
    for g in random_games(SEED, 1000, -10, 10):
        worst = max(worst, abs(solve_ske(g).payoff - brute_force_ske(g)[1]))
    elapsed = time.perf_counter() - start
    record_property("max_dev", f"{worst:.2e}")
    record_property("seconds", f"{elapsed:.2f}")
    assert worst <= 1e-6
    assert elapsed < 10


def test_ac5_quantum_oracle(record_property):
    """AC5 100 random games: |closed-form quantum payoff - optimizer| <= 1e-5, < 60 s"""
    start = time.perf_counter()
    worst = 0.0
    for g in random_games(SEED + 1, 100, -10, 10):
        worst = max(worst, abs(quantum_ske(g).payoff - optimize_diagonal(g)[1]))
    elapsed = time.perf_counter() - start
    record_property("max_dev", f"{worst:.2e}")
    record_property("seconds", f"{elapsed:.2f}")
    assert worst <= 1e-5
    assert elapsed < 60


def _random_params(rng):
    return UnitaryParams(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))


def test_ac6_amplitude_identities(record_property):
    """AC6 1000 random pairs: closed form vs evolution <= 1e-10, norm <= 1e-12, symmetry <= 1e-12"""
    rng = np.random.default_rng(SEED)
    games = random_games(SEED + 2, 1000, -10, 10)
    dev = norm = sym = 0.0
    for g in games:
        u1, u2 = _random_params(rng), _random_params(rng)
        direct = evolve(u1, u2).probabilities()
        closed = amplitudes_closed_form(u1, u2).probabilities()
        dev = max(dev, float(np.max(np.abs(direct - closed))))
        norm = max(norm, abs(direct.sum() - 1))
        sym = max(sym, abs(quantum_payoff(g, u1, u2)[0] - quantum_payoff(g, u2, u1)[1]))
    record_property("closed_form_dev", f"{dev:.1e}")
    record_property("norm_dev", f"{norm:.1e}")
    record_property("symmetry_dev", f"{sym:.1e}")
    assert dev <= 1e-10 and norm <= 1e-12 and sym <= 1e-12


def test_ac7_amplitude_maxima():
    """AC7 optimizer: max |c00|^2 = 1 and max |c01|^2 = 1/2 within 1e-6"""
    _, v00 = optimize_diagonal(SymmetricGame(1, 0, 0, 0))
    _, v01 = optimize_diagonal(SymmetricGame(0, 1, 0, 0))
    assert abs(v00 - 1) <= 1e-6
    assert abs(v01 - 0.5) <= 1e-6


def test_ac8_dominance_and_gap(record_property):
    """AC8 1000 random games: quantum - classical >= -1e-9; equals the gap formula within 1e-9 when advantaged"""
    advantaged = 0
    for g in random_games(SEED + 3, 1000, -10, 10):
        gap = quantum_ske(g).payoff - solve_ske(g).payoff
        assert gap >= -1e-9
        s = g.a01 + g.a10
        hi, lo = max(g.a00, g.a11), min(g.a00, g.a11)
        if s - 2 * hi > 1e-9:
            advantaged += 1
            expected = (s - 2 * hi) * (s - 2 * lo) / (4 * (s - g.a00 - g.a11))
            assert abs(gap - expected) <= 1e-9
    record_property("advantaged", advantaged)
    assert advantaged > 0


def test_ac9_sampler(record_property):
    """AC9 sampler: byte-reproducible; n=100000 uniform [0,1] within its 95% CI of quadrature value, < 30 s"""
    args = ["sample", "--n", "100000", "--seed", "7", "--format", "json-lines"]
    outputs = []
    start = time.perf_counter()
    for _ in range(2):
        buf = io.StringIO()
        assert main(args, buf, io.StringIO()) == 0
        outputs.append(buf.getvalue().encode())
    r = sample(100000, seed=7, low=0.0, high=1.0)
    elapsed = time.perf_counter() - start
    record_property("fraction", f"{r.advantage_fraction:.5f}+-{r.ci95_halfwidth:.5f}")
    record_property("oracle", f"{P_ADVANTAGE_UNIFORM:.5f}")
    assert outputs[0] == outputs[1]
    assert abs(r.advantage_fraction - P_ADVANTAGE_UNIFORM) <= r.ci95_halfwidth
    assert elapsed < 30
