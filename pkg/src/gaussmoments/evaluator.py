"""Build, evaluate, render and differentiate the moment polynomial.

E{prod X_k^a_k} = sum over admissible l of d_{a,l} * prod_{i<=j} phi_ij^l_ij * prod_j mu_j^L_j
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable

from .coefficients import coefficient_closed_form
from .core import (
    EXACT,
    FLOAT,
    GaussianSpec,
    MomentPolynomial,
    MomentTerm,
    MultiIndex,
    UnsupportedOperationError,
    ValidationError,
    check_mode,
    make_multi_index,
    upper_positions,
)
from .support import enumerate_support, residual_degrees, support_partitions


def build_polynomial(a) -> MomentPolynomial:
    a = make_multi_index(a)
    terms = []
    for l in enumerate_support(a):
        terms.append(MomentTerm(l, coefficient_closed_form(a, l), residual_degrees(a, l)))
    return MomentPolynomial(a, tuple(terms))


class _PowerTables:
    """Cached integer powers of every phi_ij and mu_j, up to the degree needed."""

    def __init__(self, spec: GaussianSpec, degree: int):
        one = Fraction(1) if spec.mode == EXACT else 1.0
        cov_flat = [spec.cov[i][j] for i, j in upper_positions(spec.n)]
        self.cov = [_powers(x, degree, one) for x in cov_flat]
        self.mu = [_powers(x, degree, one) for x in spec.mu]
        self.one = one

    def term(self, d: int, l_entries, L) -> object:
        # 0**0 == 1 by construction of the tables
        v = self.one * d
        for p, e in enumerate(l_entries):
            if e:
                v *= self.cov[p][e]
        for k, e in enumerate(L):
            if e:
                v *= self.mu[k][e]
        return v


def _powers(x, degree: int, one) -> list:
    out = [one]
    for _ in range(degree):
        out.append(out[-1] * x)
    return out


def _prepare(a: MultiIndex, spec: GaussianSpec, mode: str | None) -> GaussianSpec:
    mode = check_mode(mode or spec.mode)
    if spec.n != a.n:
        raise ValidationError(f"dimension mismatch: multi-index has n={a.n}, spec has n={spec.n}")
    return spec.as_mode(mode)


def _sum(values: Iterable, mode: str):
    if mode == FLOAT:
        return math.fsum(values)
    total = Fraction(0)
    for v in values:
        total += v
    return total


def evaluate(poly: MomentPolynomial, spec: GaussianSpec, mode: str | None = None):
    """Evaluate in canonical term order. Float mode sums with math.fsum."""
    spec = _prepare(poly.a, spec, mode)
    tables = _PowerTables(spec, poly.a.total_degree())
    return _sum((tables.term(t.d, t.l.entries, t.L.L) for t in poly.terms), spec.mode)


def _fold(a: MultiIndex, spec: GaussianSpec, prefix=()):
    tables = _PowerTables(spec, a.total_degree())

    def values():
        for l in enumerate_support(a, prefix):
            L = residual_degrees(a, l)
            yield tables.term(coefficient_closed_form(a, l), l.entries, L.L)

    return _sum(values(), spec.mode)


def _fold_task(args):
    return _fold(*args)


def moment(a, spec: GaussianSpec, mode: str | None = None, workers: int = 1):
    """E{prod X_k^a_k}, streaming over the support without building the polynomial.

    With workers > 1 the support is split on the first upper-triangle entry
    and partial sums are combined in partition order. Exact mode gives the same
    value as the sequential fold; float mode may differ in the last bits.
    """
    a = make_multi_index(a)
    spec = _prepare(a, spec, mode)
    if workers <= 1:
        return _fold(a, spec)
    parts = support_partitions(a, depth=1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        partials = list(pool.map(_fold_task, [(a, spec, p) for p in parts]))
    return _sum(partials, spec.mode)


def _cov_name(i: int, j: int, n: int, fmt: str) -> str:
    if fmt == "latex":
        sub = f"{i + 1}{j + 1}" if n < 10 else f"{i + 1},{j + 1}"
        return "\\varphi_{" + sub + "}"
    return f"c{i + 1}{j + 1}" if n < 10 else f"c{i + 1}_{j + 1}"


def _mu_name(j: int, fmt: str) -> str:
    return "\\mu_{" + str(j + 1) + "}" if fmt == "latex" else f"m{j + 1}"


def _power(base: str, e: int, fmt: str) -> str:
    if e == 1:
        return base
    return f"{base}^{{{e}}}" if fmt == "latex" else f"{base}^{e}"


def to_symbolic(poly: MomentPolynomial, format: str = "text") -> str:
    """Render as text (c12, m1, '*', '^') or LaTeX (\\varphi_{12}, \\mu_{1})."""
    if format not in ("text", "latex"):
        raise ValidationError(f"unknown format {format!r}; expected 'text' or 'latex'")
    if not poly.terms:
        return "0"
    n = poly.a.n
    sep = " " if format == "latex" else "*"
    rendered = []
    for t in poly.terms:
        factors = [_power(_cov_name(i, j, n, format), v, format) for (i, j), v in t.l.items() if v]
        factors += [_power(_mu_name(k, format), e, format) for k, e in enumerate(t.L.L) if e]
        body = sep.join(factors)
        if not body:
            rendered.append(str(t.d))
        elif t.d == 1:
            rendered.append(body)
        else:
            rendered.append(f"{t.d}{'' if format == 'latex' else '*'}{body}")
    return " + ".join(rendered)


def differentiate_wrt_cov(a, i: int, j: int) -> MomentPolynomial:
    """Formal partial derivative of the moment polynomial with respect to phi_ij (i != j).

    Returns a polynomial indexed by a - e_i - e_j, or the zero polynomial
    (indexed by `a`) when a_i or a_j is zero.
    """
    a = make_multi_index(a)
    if not (0 <= i < a.n and 0 <= j < a.n):
        raise ValidationError(f"index out of range for n={a.n}: ({i}, {j})")
    if i == j:
        raise UnsupportedOperationError("derivative with respect to a variance phi_ii is not supported")
    if i > j:
        i, j = j, i
    if a[i] == 0 or a[j] == 0:
        return MomentPolynomial(a, ())

    lowered = list(a.a)
    lowered[i] -= 1
    lowered[j] -= 1
    target = MultiIndex(tuple(lowered))

    merged: dict[tuple[int, ...], list] = {}
    for t in build_polynomial(a).terms:
        e = t.l.get(i, j)
        if e == 0:
            continue
        l_new = t.l.with_entry(i, j, e - 1)
        key = l_new.entries
        if key in merged:
            merged[key][1] += t.d * e
        else:
            merged[key] = [l_new, t.d * e]
    terms = []
    for key in sorted(merged):
        l_new, d = merged[key]
        if d:
            terms.append(MomentTerm(l_new, d, residual_degrees(target, l_new)))
    return MomentPolynomial(target, tuple(terms))
