"""Independent ground truth for Gaussian product moments.

Nothing here may import from ``support``, ``coefficients`` or ``evaluator``;
``tests/test_oracles.py`` enforces this.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import GaussianSpec, ValidationError, make_multi_index

PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class McReport:
    estimate: float
    std_error: float
    n_samples: int
    seed: int

    def z_score(self, exact) -> float:
        if self.std_error == 0:
            return 0.0 if float(exact) == self.estimate else math.inf
        return abs(self.estimate - float(exact)) / self.std_error


def stein_moment(a, spec: GaussianSpec):
    """Moment via Gaussian integration by parts.

    E{X_k * prod X_i^b_i} = mu_k E{prod X_i^b_i} + sum_j b_j phi_kj E{prod X_i^(b_i - [i == j])}
    """
    a = make_multi_index(a)
    if spec.n != a.n:
        raise ValidationError(f"dimension mismatch: multi-index has n={a.n}, spec has n={spec.n}")
    mu, cov = spec.mu, spec.cov
    memo: dict[tuple[int, ...], object] = {}

    def E(b: tuple[int, ...]):
        if b in memo:
            return memo[b]
        k = next((i for i, bi in enumerate(b) if bi), None)
        if k is None:
            return 1
        rest = list(b)
        rest[k] -= 1
        val = mu[k] * E(tuple(rest))
        for j, bj in enumerate(rest):
            if bj:
                lower = list(rest)
                lower[j] -= 1
                val += bj * cov[k][j] * E(tuple(lower))
        memo[b] = val
        return val

    out = E(a.a)
    return Fraction(out) if isinstance(out, int) else out


def isserlis_sum(a, cov: Sequence[Sequence]):
    """Central moment as a sum over perfect pairings of the expanded variable list."""
    a = make_multi_index(a)
    if len(cov) != a.n:
        raise ValidationError(f"dimension mismatch: multi-index has n={a.n}, covariance has {len(cov)} rows")
    items = [k for k, ak in enumerate(a.a) for _ in range(ak)]
    if len(items) % 2:
        return Fraction(0)

    def pairings(rest: list[int]):
        if not rest:
            return 1
        first, others = rest[0], rest[1:]
        total = 0
        for idx, partner in enumerate(others):
            total += cov[first][partner] * pairings(others[:idx] + others[idx + 1:])
        return total

    out = pairings(items)
    return Fraction(out) if isinstance(out, int) else out


def cholesky(cov: Sequence[Sequence]) -> list[list[float]]:
    """Lower-triangular L with L L^T = cov. Pivots in [-1e-10, 0] are clamped to zero."""
    n = len(cov)
    A = [[float(x) for x in row] for row in cov]
    L = [[0.0] * n for _ in range(n)]
    for j in range(n):
        s = A[j][j] - sum(L[j][k] ** 2 for k in range(j))
        if s < -PIVOT_TOL:
            raise ValidationError("covariance not positive semidefinite")
        if s <= 0.0:
            # zero pivot: the remaining column is zero for a PSD matrix
            continue
        L[j][j] = math.sqrt(s)
        for i in range(j + 1, n):
            L[i][j] = (A[i][j] - sum(L[i][k] * L[j][k] for k in range(j))) / L[j][j]
    return L


def box_muller(rng: np.random.Generator, count: int) -> np.ndarray:
    """`count` standard normals from pairs of uniforms."""
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # in (0, 1], keeps log finite
    u2 = rng.random(pairs)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = r * np.cos(2.0 * np.pi * u2)
    z[1::2] = r * np.sin(2.0 * np.pi * u2)
    return z[:count]


def mc_estimate(a, spec: GaussianSpec, n_samples: int = 1_000_000, seed: int = 0) -> McReport:
    a = make_multi_index(a)
    if n_samples < 2:
        raise ValidationError("n_samples must be at least 2")
    if spec.n != a.n:
        raise ValidationError(f"dimension mismatch: multi-index has n={a.n}, spec has n={spec.n}")
    L = np.array(cholesky(spec.cov))
    mu = np.array([float(x) for x in spec.mu])
    rng = np.random.default_rng(seed)
    z = box_muller(rng, n_samples * a.n).reshape(n_samples, a.n)
    x = mu + z @ L.T
    vals = np.prod(x ** np.array(a.a, dtype=float), axis=1)
    se = float(np.std(vals, ddof=1) / math.sqrt(n_samples))
    return McReport(float(np.mean(vals)), se, n_samples, seed)
