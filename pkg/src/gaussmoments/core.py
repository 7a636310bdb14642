"""Validated data types shared by every other module.

Indices are 0-based throughout the Python API. Rendering and the CLI use
1-based variable names (``c12``, ``m1``) to match conventional notation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

SYMMETRY_RTOL = 1e-12


class ValidationError(ValueError):
    """Bad user input: negative exponent, wrong shape, asymmetric covariance..."""


class InvariantError(RuntimeError):
    """An internal invariant failed (e.g. a coefficient division was not exact)."""


class UnsupportedOperationError(ValidationError):
    pass


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValidationError(f"unknown numeric mode {mode!r}; expected one of {MODES}")
    return mode


def upper_index(n: int, i: int, j: int) -> int:
    """Position of l_ij (i <= j) in row-major upper-triangle storage."""
    return i * n - i * (i - 1) // 2 + (j - i)


def upper_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


@dataclass(frozen=True)
class MultiIndex:
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) == 0:
            raise ValidationError("multi-index must have at least one entry")
        for k, ak in enumerate(self.a):
            if isinstance(ak, bool) or not isinstance(ak, int):
                raise ValidationError(f"non-integer exponent at position {k + 1}: {ak!r}")
            if ak < 0:
                raise ValidationError(f"negative exponent at position {k + 1}")

    @property
    def n(self) -> int:
        return len(self.a)

    def total_degree(self) -> int:
        return sum(self.a)

    def __getitem__(self, k: int) -> int:
        return self.a[k]

    def __iter__(self):
        return iter(self.a)

    def __len__(self) -> int:
        return len(self.a)


def make_multi_index(a: Iterable[int]) -> MultiIndex:
    if isinstance(a, MultiIndex):
        return a
    return MultiIndex(tuple(a))


@dataclass(frozen=True)
class PairExponentMatrix:
    """Symmetric exponent matrix l, stored once per unordered pair (i <= j)."""

    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("dimension must be positive")
        if len(self.entries) != self.n * (self.n + 1) // 2:
            raise ValidationError(
                f"expected {self.n * (self.n + 1) // 2} upper-triangle entries, got {len(self.entries)}"
            )
        if any(e < 0 for e in self.entries):
            raise ValidationError("exponent matrix entries must be nonnegative")

    @classmethod
    def zeros(cls, n: int) -> PairExponentMatrix:
        return cls(n, (0,) * (n * (n + 1) // 2))

    @classmethod
    def from_pairs(cls, n: int, pairs: dict[tuple[int, int], int]) -> PairExponentMatrix:
        entries = [0] * (n * (n + 1) // 2)
        for (i, j), v in pairs.items():
            if i > j:
                i, j = j, i
            entries[upper_index(n, i, j)] = v
        return cls(n, tuple(entries))

    def get(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self.entries[upper_index(self.n, i, j)]

    def diag_sum(self) -> int:
        return sum(self.get(k, k) for k in range(self.n))

    def with_entry(self, i: int, j: int, value: int) -> PairExponentMatrix:
        if i > j:
            i, j = j, i
        entries = list(self.entries)
        entries[upper_index(self.n, i, j)] = value
        return PairExponentMatrix(self.n, tuple(entries))

    def leading_block(self, m: int) -> PairExponentMatrix:
        """The top-left m x m block of l."""
        return PairExponentMatrix(m, tuple(self.get(i, j) for i in range(m) for j in range(i, m)))

    def items(self):
        """Yield ((i, j), l_ij) over the upper triangle in canonical order."""
        for (i, j), v in zip(upper_positions(self.n), self.entries):
            yield (i, j), v


@dataclass(frozen=True)
class ResidualDegrees:
    L: tuple[int, ...]

    @property
    def admissible(self) -> bool:
        return all(x >= 0 for x in self.L)


@dataclass(frozen=True)
class MomentTerm:
    l: PairExponentMatrix
    d: int
    L: ResidualDegrees


@dataclass(frozen=True)
class MomentPolynomial:
    """Sum of d * prod(phi_ij ** l_ij) * prod(mu_j ** L_j) over its terms.

    Terms are kept in canonical order: ascending lexicographic on the
    row-major upper triangle of l. An empty term list is the zero polynomial.
    """

    a: MultiIndex
    terms: tuple[MomentTerm, ...]

    def __post_init__(self):
        for prev, cur in zip(self.terms, self.terms[1:]):
            if not prev.l.entries < cur.l.entries:
                raise InvariantError("polynomial terms are not in strict canonical order")

    def __len__(self) -> int:
        return len(self.terms)

    def scale(self, factor: int) -> MomentPolynomial:
        if factor == 0:
            return MomentPolynomial(self.a, ())
        return MomentPolynomial(
            self.a, tuple(MomentTerm(t.l, t.d * factor, t.L) for t in self.terms)
        )


@dataclass(frozen=True)
class GaussianSpec:
    """Mean vector and symmetric covariance matrix, all entries in one numeric mode."""

    mu: tuple[Scalar, ...]
    cov: tuple[tuple[Scalar, ...], ...]
    mode: str = EXACT

    @property
    def n(self) -> int:
        return len(self.mu)

    def restrict(self, idx: Sequence[int]) -> GaussianSpec:
        return GaussianSpec(
            tuple(self.mu[i] for i in idx),
            tuple(tuple(self.cov[i][j] for j in idx) for i in idx),
            self.mode,
        )

    def centered(self) -> GaussianSpec:
        zero = Fraction(0) if self.mode == EXACT else 0.0
        return GaussianSpec((zero,) * self.n, self.cov, self.mode)

    def as_mode(self, mode: str) -> GaussianSpec:
        check_mode(mode)
        if mode == self.mode:
            return self
        conv = Fraction if mode == EXACT else float
        return GaussianSpec(
            tuple(conv(x) for x in self.mu),
            tuple(tuple(conv(x) for x in row) for row in self.cov),
            mode,
        )


def parse_scalar(x, mode: str = EXACT) -> Scalar:
    """Parse a JSON-ish scalar: int, float or a string such as "1/2" or "0.25".

    Floats are read through their shortest decimal repr in exact mode, so the
    JSON number 0.1 becomes 1/10 rather than its binary approximation.
    """
    if isinstance(x, bool):
        raise ValidationError(f"boolean is not a scalar: {x!r}")
    if isinstance(x, Fraction):
        value = x
    elif isinstance(x, int):
        value = Fraction(x)
    elif isinstance(x, float):
        if not math.isfinite(x):
            raise ValidationError(f"non-finite scalar {x!r}")
        if mode == FLOAT:
            return x
        value = Fraction(repr(x))
    elif isinstance(x, str):
        try:
            value = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse scalar {x!r}") from exc
    else:
        raise ValidationError(f"unsupported scalar type {type(x).__name__}")
    return value if mode == EXACT else float(value)


def make_gaussian_spec(mu, cov, mode: str = EXACT) -> GaussianSpec:
    check_mode(mode)
    mu = tuple(parse_scalar(x, mode) for x in mu)
    n = len(mu)
    if n == 0:
        raise ValidationError("mean vector must be non-empty")
    rows = [tuple(parse_scalar(x, mode) for x in row) for row in cov]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError(f"dimension mismatch: mean has length {n}, covariance must be {n}x{n}")

    for i in range(n):
        for j in range(i + 1, n):
            x, y = rows[i][j], rows[j][i]
            if mode == EXACT:
                if x != y:
                    raise ValidationError(f"covariance not symmetric at ({i + 1},{j + 1})")
            elif abs(x - y) > SYMMETRY_RTOL * max(abs(x), abs(y)):
                raise ValidationError(f"covariance not symmetric at ({i + 1},{j + 1})")

    if mode == FLOAT:
        rows = [tuple((rows[i][j] + rows[j][i]) / 2 for j in range(n)) for i in range(n)]
    return GaussianSpec(mu, tuple(rows), mode)


def standard_spec(n: int, mode: str = EXACT) -> GaussianSpec:
    """Zero mean, identity covariance."""
    return make_gaussian_spec([0] * n, [[int(i == j) for j in range(n)] for i in range(n)], mode)
