"""Exact integer coefficients d_{a,l} of the Gaussian product-moment polynomial.

Two independent routes are provided:

* :func:`coefficient_closed_form` evaluates the factorial ratio directly.
* :func:`coefficient_recursive` strips the last variable, multiplies by the
  prefactor produced by eliminating the cross exponents l_km, and recurses on
  the leading block, bottoming out at the univariate coefficient.

Both must agree on every admissible l; the test-suite checks this exhaustively.
"""
from __future__ import annotations

import threading

from .core import InvariantError, PairExponentMatrix, ValidationError, make_multi_index
from .support import residual_degrees


class FactorialTable:
    """Growable memo of k! values. Extension is locked; reads are lock-free."""

    def __init__(self, size: int = 32):
        self._values = [1]
        self._lock = threading.Lock()
        self._grow(size)

    def _grow(self, k: int) -> None:
        with self._lock:
            vals = list(self._values)
            while len(vals) <= k:
                vals.append(vals[-1] * len(vals))
            self._values = vals

    def __call__(self, k: int) -> int:
        if k < 0:
            raise ValidationError(f"factorial of negative integer {k}")
        vals = self._values
        if k >= len(vals):
            self._grow(k)
            vals = self._values
        return vals[k]


factorial = FactorialTable()


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise InvariantError(f"coefficient division not exact: {num} / {den}")
    return q


def coefficient_closed_form(a, l: PairExponentMatrix) -> int:
    """prod a_k! / (2^M_l * prod_{i<=j} l_ij! * prod_j L_j!)."""
    a = make_multi_index(a)
    L = residual_degrees(a, l)
    if not L.admissible:
        raise ValidationError(f"exponent matrix {l.entries} is not admissible for a={a.a}")
    num = 1
    for ak in a:
        num *= factorial(ak)
    den = 1 << l.diag_sum()
    for v in l.entries:
        den *= factorial(v)
    for Lj in L.L:
        den *= factorial(Lj)
    return _exact_div(num, den)


def coefficient_univariate(a1: int, l: int) -> int:
    """a1! / (2^l l! (a1 - 2l)!), for 0 <= l <= a1 // 2."""
    if a1 < 0 or l < 0 or 2 * l > a1:
        raise ValidationError(f"univariate index out of range: a1={a1}, l={l}")
    return _exact_div(factorial(a1), (1 << l) * factorial(l) * factorial(a1 - 2 * l))


def _recursive(a: tuple[int, ...], l: PairExponentMatrix) -> int:
    m = len(a) - 1
    if m == 0:
        return coefficient_univariate(a[0], l.get(0, 0))

    cross = [l.get(k, m) for k in range(m)]
    rest_m = a[m] - sum(cross)

    # prod_{k<m} a_k! * a_m! / (prod l_km! * prod (a_k - l_km)! * (a_m - sum l_km)!)
    num = factorial(a[m])
    den = factorial(rest_m)
    for k in range(m):
        num *= factorial(a[k])
        den *= factorial(cross[k]) * factorial(a[k] - cross[k])
    prefactor = _exact_div(num, den)

    reduced = tuple(a[k] - cross[k] for k in range(m))
    inner = _recursive(reduced, l.leading_block(m))
    return prefactor * inner * coefficient_univariate(rest_m, l.get(m, m))


def coefficient_recursive(a, l: PairExponentMatrix) -> int:
    """d_{a,l} by eliminating the last variable's cross exponents and recursing.

    Does not call :func:`coefficient_closed_form`; only the univariate base
    case and the elimination prefactor are used.
    """
    a = make_multi_index(a)
    if not residual_degrees(a, l).admissible:
        raise ValidationError(f"exponent matrix {l.entries} is not admissible for a={a.a}")
    return _recursive(a.a, l)
