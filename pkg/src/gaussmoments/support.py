"""Admissible exponent matrices: residual degrees, membership, enumeration, counting."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .core import (
    MultiIndex,
    PairExponentMatrix,
    ResidualDegrees,
    ValidationError,
    make_multi_index,
    upper_positions,
)


def _check_dims(a: MultiIndex, l: PairExponentMatrix) -> None:
    if a.n != l.n:
        raise ValidationError(f"dimension mismatch: multi-index has n={a.n}, exponent matrix n={l.n}")


def residual_degrees(a, l: PairExponentMatrix) -> ResidualDegrees:
    """L_k = a_k - 2 l_kk - sum_{j != k} l_jk. May be negative."""
    a = make_multi_index(a)
    _check_dims(a, l)
    L = []
    for k in range(a.n):
        used = sum(l.get(j, k) for j in range(a.n)) + l.get(k, k)
        L.append(a[k] - used)
    return ResidualDegrees(tuple(L))


def is_admissible(a, l: PairExponentMatrix) -> bool:
    return residual_degrees(a, l).admissible


def _walk(budgets: list[int], positions: list[tuple[int, int]], start: int, entries: list[int]):
    """Backtracking over upper-triangle positions from `start`, bounded by budgets.

    Mutates `budgets`/`entries` in place and restores them; yields after each
    complete assignment. Values at each position ascend, so the output is in
    lexicographic order of the flattened entries.
    """
    npos = len(positions)
    if start == npos:
        yield
        return
    # entries[p] == -1 marks a position not yet assigned
    p = start
    entries[p] = -1
    while p >= start:
        i, j = positions[p]
        v = entries[p]
        # undo the previous value at this position
        if v >= 0:
            if i == j:
                budgets[i] += 2 * v
            else:
                budgets[i] += v
                budgets[j] += v
        v += 1
        cap = budgets[i] // 2 if i == j else min(budgets[i], budgets[j])
        if v > cap:
            entries[p] = 0
            p -= 1
            continue
        entries[p] = v
        if i == j:
            budgets[i] -= 2 * v
        else:
            budgets[i] -= v
            budgets[j] -= v
        if p + 1 == npos:
            yield
        else:
            p += 1
            entries[p] = -1


def _apply_prefix(a: MultiIndex, prefix: Sequence[int]):
    positions = upper_positions(a.n)
    if len(prefix) > len(positions):
        raise ValidationError("prefix longer than the number of upper-triangle positions")
    budgets = list(a.a)
    for (i, j), v in zip(positions, prefix):
        if v < 0:
            return None, positions
        if i == j:
            budgets[i] -= 2 * v
        else:
            budgets[i] -= v
            budgets[j] -= v
        if budgets[i] < 0 or budgets[j] < 0:
            return None, positions
    return budgets, positions


def enumerate_support(a, prefix: Sequence[int] = ()) -> Iterator[PairExponentMatrix]:
    """Yield every admissible l for `a` in canonical order.

    `prefix` pins the first entries of the flattened upper triangle, which
    lets callers partition the support across independent workers.
    """
    a = make_multi_index(a)
    budgets, positions = _apply_prefix(a, prefix)
    if budgets is None:
        return
    entries = list(prefix) + [0] * (len(positions) - len(prefix))
    n = a.n
    for _ in _walk(budgets, positions, len(prefix), entries):
        yield PairExponentMatrix(n, tuple(entries))


def support_partitions(a, depth: int = 1) -> list[tuple[int, ...]]:
    """Feasible prefixes of length `depth`, in canonical order."""
    a = make_multi_index(a)
    positions = upper_positions(a.n)
    depth = min(depth, len(positions))
    out = []
    budgets = list(a.a)
    entries = [0] * len(positions)
    # walk only the first `depth` positions
    for _ in _walk(budgets, positions[:depth], 0, entries):
        out.append(tuple(entries[:depth]))
    return out


def count_support(a) -> int:
    """|S_a|, by the same backtracking memoized on (position, remaining budgets)."""
    a = make_multi_index(a)
    positions = tuple(upper_positions(a.n))

    @lru_cache(maxsize=None)
    def count(p: int, budgets: tuple[int, ...]) -> int:
        if p == len(positions):
            return 1
        i, j = positions[p]
        total = 0
        b = list(budgets)
        if i == j:
            for v in range(budgets[i] // 2 + 1):
                b[i] = budgets[i] - 2 * v
                total += count(p + 1, tuple(b))
        else:
            for v in range(min(budgets[i], budgets[j]) + 1):
                b[i] = budgets[i] - v
                b[j] = budgets[j] - v
                total += count(p + 1, tuple(b))
        return total

    return count(0, a.a)
