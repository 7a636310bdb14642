import ast
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
import sympy

from gaussmoments import (
    ValidationError,
    cholesky,
    isserlis_sum,
    make_gaussian_spec,
    mc_estimate,
    standard_spec,
    stein_moment,
)
from gaussmoments.oracles import McReport, box_muller

ORACLES_SRC = Path(__file__).resolve().parents[1] / "src" / "gaussmoments" / "oracles.py"


def test_oracles_import_only_core():
    tree = ast.parse(ORACLES_SRC.read_text())
    local = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom) and node.level:
            local.add(node.module)
    assert local <= {"core"}


def test_stein_examples(half_corr):
    m1, m2, c12 = Fraction(2, 3), Fraction(-1, 2), Fraction(1, 5)
    spec = make_gaussian_spec([m1, m2], [[1, c12], [c12, 1]])
    assert stein_moment((1, 1), spec) == c12 + m1 * m2
    assert stein_moment((2, 2), half_corr) == Fraction(3, 2)
    assert stein_moment((0, 0, 0), standard_spec(3)) == 1


def test_isserlis_symbolic_four_distinct():
    c = sympy.Matrix(4, 4, lambda i, j: sympy.Symbol(f"c{min(i, j) + 1}{max(i, j) + 1}"))
    got = sympy.expand(isserlis_sum((1, 1, 1, 1), c.tolist()))
    s = {name: sympy.Symbol(name) for name in ("c12", "c34", "c13", "c24", "c14", "c23")}
    assert got == s["c12"] * s["c34"] + s["c13"] * s["c24"] + s["c14"] * s["c23"]


def test_isserlis_examples():
    assert isserlis_sum((4,), [[1]]) == 3
    assert isserlis_sum((1, 1, 1), [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 0
    assert isserlis_sum((6,), [[Fraction(2)]]) == 15 * 8


def test_stein_vs_isserlis_central():
    spec = make_gaussian_spec([0, 0, 0], [["2", "1/3", "-1/2"], ["1/3", "1", "1/5"], ["-1/2", "1/5", "3"]])
    for a in [(2, 2, 2), (4, 0, 2), (1, 1, 2), (3, 2, 1), (0, 0, 6)]:
        assert stein_moment(a, spec) == isserlis_sum(a, spec.cov)


def test_cholesky_examples():
    assert cholesky([[1, 0], [0, 1]]) == [[1.0, 0.0], [0.0, 1.0]]
    L = cholesky([[4, 2], [2, 2]])
    assert L == [[2.0, 0.0], [1.0, 1.0]]
    with pytest.raises(ValidationError, match="positive semidefinite"):
        cholesky([[1, 2], [2, 1]])


def test_cholesky_semidefinite_boundary():
    L = np.array(cholesky([[1, 1], [1, 1]]))
    assert np.allclose(L @ L.T, [[1, 1], [1, 1]])


def test_box_muller_moments():
    z = box_muller(np.random.default_rng(3), 200_001)
    assert z.shape == (200_001,)
    assert abs(z.mean()) < 0.02 and abs(z.var() - 1) < 0.02


def test_mc_deterministic_given_seed():
    spec = standard_spec(2)
    r1 = mc_estimate((2, 2), spec, 10_000, seed=7)
    r2 = mc_estimate((2, 2), spec, 10_000, seed=7)
    assert r1 == r2
    assert r1.std_error >= 0 and r1.n_samples == 10_000


def test_mc_examples(half_corr):
    r = mc_estimate((2,), standard_spec(1), 1_000_000, seed=1)
    assert r.z_score(1) <= 5
    r = mc_estimate((2, 2), half_corr, 1_000_000, seed=2)
    assert r.z_score(Fraction(3, 2)) <= 5
    r = mc_estimate((4,), make_gaussian_spec([1], [[1]]), 1_000_000, seed=3)
    assert r.z_score(10) <= 5


def test_mc_rejects_indefinite():
    spec = make_gaussian_spec([0, 0], [[1, 2], [2, 1]])
    with pytest.raises(ValidationError):
        mc_estimate((1, 1), spec, 100, 0)
    with pytest.raises(ValidationError):
        mc_estimate((1,), standard_spec(1), 1, 0)


def test_z_score_degenerate():
    assert McReport(1.0, 0.0, 10, 0).z_score(1) == 0.0
    assert math.isinf(McReport(1.0, 0.0, 10, 0).z_score(2))
