"""Seeded random rational Gaussian specs for tests and experiment scripts."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import GaussianSpec, make_gaussian_spec


@dataclass(frozen=True)
class CorpusConfig:
    max_n: int = 3
    max_degree: int = 7
    max_num: int = 3  # entries of B and mu are p/q with |p| <= max_num
    max_den: int = 3
    seed: int = 20240601


def random_rational(rng: random.Random, cfg: CorpusConfig) -> Fraction:
    return Fraction(rng.randint(-cfg.max_num, cfg.max_num), rng.randint(1, cfg.max_den))


def random_psd_cov(rng: random.Random, n: int, cfg: CorpusConfig) -> list[list[Fraction]]:
    """B^T B for a random rational n x n matrix B: PSD by construction, exactly."""
    B = [[random_rational(rng, cfg) for _ in range(n)] for _ in range(n)]
    return [[sum(B[k][i] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def random_spec(rng: random.Random, n: int, cfg: CorpusConfig, centered: bool = False) -> GaussianSpec:
    mu = [Fraction(0)] * n if centered else [random_rational(rng, cfg) for _ in range(n)]
    return make_gaussian_spec(mu, random_psd_cov(rng, n, cfg))


def random_multi_index(rng: random.Random, n: int, max_degree: int) -> tuple[int, ...]:
    total = rng.randint(0, max_degree)
    a = [0] * n
    for _ in range(total):
        a[rng.randrange(n)] += 1
    return tuple(a)


def block_diagonal(s1: GaussianSpec, s2: GaussianSpec) -> GaussianSpec:
    n1, n2 = s1.n, s2.n
    zero = Fraction(0)
    cov = [list(r) + [zero] * n2 for r in s1.cov] + [[zero] * n1 + list(r) for r in s2.cov]
    return make_gaussian_spec(list(s1.mu) + list(s2.mu), cov)


def corpus(size: int, cfg: CorpusConfig = CorpusConfig()):
    """Yield (a, spec) pairs, deterministic for a given config."""
    rng = random.Random(cfg.seed)
    for _ in range(size):
        n = rng.randint(1, cfg.max_n)
        yield random_multi_index(rng, n, cfg.max_degree), random_spec(rng, n, cfg)
