"""Batch command-line front end.

Exit codes: 0 success, 1 verification failed, 2 bad usage or input, 3 internal error.
All results go to stdout as ``key: value`` lines; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .coefficients import coefficient_closed_form, coefficient_recursive
from .core import (
    EXACT,
    FLOAT,
    GaussianSpec,
    InvariantError,
    ValidationError,
    make_gaussian_spec,
    make_multi_index,
    standard_spec,
)
from .evaluator import build_polynomial, differentiate_wrt_cov, moment, to_symbolic
from .oracles import isserlis_sum, mc_estimate, stein_moment
from .support import count_support, enumerate_support

MC_SIGMAS = 5.0
ORACLES = ("stein", "isserlis", "mc", "price", "factor", "recursive")


def parse_exponents(text: str):
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"cannot parse exponents {text!r}: expected comma-separated integers") from exc
    return make_multi_index(values)


def load_spec(path: str | None, n: int, mode: str = EXACT) -> GaussianSpec:
    """Read {"mu": [...], "cov": [[...]]}; without a path, a standard normal of dimension n."""
    if path is None:
        return standard_spec(n, mode)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read input {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "mu" not in doc or "cov" not in doc:
        raise ValidationError("input document must be an object with fields 'mu' and 'cov'")
    spec = make_gaussian_spec(doc["mu"], doc["cov"], mode)
    if spec.n != n:
        raise ValidationError(f"dimension mismatch: --a has {n} entries, input spec has n={spec.n}")
    return spec


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def default_bench_spec(n: int) -> GaussianSpec:
    """Dense rational spec: mu_j = 1/(j+2), unit variances, covariances 1/3."""
    mu = [Fraction(1, j + 2) for j in range(n)]
    cov = [[Fraction(1) if i == j else Fraction(1, 3) for j in range(n)] for i in range(n)]
    return make_gaussian_spec(mu, cov)


def cmd_compute(args) -> int:
    a = parse_exponents(args.a)
    spec = load_spec(args.input, a.n, args.mode)
    value = moment(a, spec, args.mode, workers=args.workers)
    print(f"value: {format_scalar(value)}")
    print(f"terms: {count_support(a)}")
    return 0


def cmd_symbolic(args) -> int:
    a = parse_exponents(args.a)
    print(to_symbolic(build_polynomial(a), args.format))
    return 0


def cmd_terms(args) -> int:
    print(count_support(parse_exponents(args.a)))
    return 0


def _report(passed: bool, **fields) -> int:
    for key, val in fields.items():
        print(f"{key}: {val}")
    print("PASS" if passed else "FAIL")
    return 0 if passed else 1


def _components(spec: GaussianSpec) -> list[list[int]]:
    """Connected components of the graph with an edge wherever phi_ij != 0."""
    seen: set[int] = set()
    comps = []
    for start in range(spec.n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(spec.n):
                if j not in seen and spec.cov[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def cmd_verify(args) -> int:
    a = parse_exponents(args.a)
    oracle = args.oracle

    if oracle == "price":
        if args.i is None or args.j is None:
            raise ValidationError("--oracle price requires --i and --j (1-based)")
        i, j = args.i - 1, args.j - 1
        got = differentiate_wrt_cov(a, i, j)
        if a[i] == 0 or a[j] == 0:
            return _report(not got.terms, derivative="0", expected="0")
        lowered = list(a.a)
        lowered[i] -= 1
        lowered[j] -= 1
        expected = build_polynomial(lowered).scale(a[i] * a[j])
        return _report(
            got == expected,
            derivative=to_symbolic(got),
            expected=f"{a[i] * a[j]} * ({to_symbolic(build_polynomial(lowered))})",
        )

    if oracle == "recursive":
        checked = mismatches = 0
        for l in enumerate_support(a):
            checked += 1
            if coefficient_recursive(a, l) != coefficient_closed_form(a, l):
                mismatches += 1
        return _report(mismatches == 0, terms_checked=checked, mismatches=mismatches)

    mode = FLOAT if oracle == "mc" else EXACT
    spec = load_spec(args.input, a.n, mode)

    if oracle == "stein":
        ours, ref = moment(a, spec), stein_moment(a, spec)
        return _report(ours == ref, formula=format_scalar(ours), oracle=format_scalar(ref))

    if oracle == "isserlis":
        centered = spec.centered()
        ours, ref = moment(a, centered), isserlis_sum(a, centered.cov)
        return _report(ours == ref, formula=format_scalar(ours), oracle=format_scalar(ref))

    if oracle == "mc":
        exact = moment(a, spec.as_mode(EXACT))
        rep = mc_estimate(a, spec, args.samples, args.seed)
        z = rep.z_score(exact)
        return _report(
            z <= MC_SIGMAS,
            formula=format_scalar(exact),
            estimate=repr(rep.estimate),
            std_error=repr(rep.std_error),
            z=f"{z:.4f}",
            samples=rep.n_samples,
            seed=rep.seed,
        )

    if oracle == "factor":
        comps = _components(spec)
        whole = moment(a, spec)
        prod = Fraction(1)
        for comp in comps:
            prod *= moment([a[k] for k in comp], spec.restrict(comp))
        blocks = " | ".join(",".join(str(k + 1) for k in c) for c in comps)
        return _report(whole == prod, blocks=blocks, formula=format_scalar(whole), product=format_scalar(prod))

    raise ValidationError(f"unknown oracle {oracle!r}")


def cmd_bench(args) -> int:
    a = parse_exponents(args.a)
    spec = load_spec(args.input, a.n) if args.input else default_bench_spec(a.n)
    reps = max(1, args.reps)
    n_terms = count_support(a)

    enum_times, eval_times = [], []
    for _ in range(reps):
        t0 = time.perf_counter()
        for _l in enumerate_support(a):
            pass
        enum_times.append(time.perf_counter() - t0)
        t0 = time.perf_counter()
        moment(a, spec)
        eval_times.append(time.perf_counter() - t0)

    best_eval = min(eval_times)
    print(f"terms: {n_terms}")
    print(f"enumerate_seconds: {min(enum_times):.6f}")
    print(f"evaluate_seconds: {best_eval:.6f}")
    print(f"terms_per_second: {n_terms / best_eval if best_eval > 0 else float('inf'):.1f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussmoments", description="Exact product moments of multivariate Gaussian variables."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_a(p):
        p.add_argument("--a", required=True, help="comma-separated nonnegative exponents, e.g. 2,3,1")

    p = sub.add_parser("compute", help="evaluate the moment")
    add_a(p)
    p.add_argument("--input", help='JSON document {"mu": [...], "cov": [[...]]}; default standard normal')
    p.add_argument("--mode", choices=(EXACT, FLOAT), default=EXACT)
    p.add_argument("--workers", type=int, default=1, help="fold terms in this many processes")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("symbolic", help="print the moment polynomial")
    add_a(p)
    p.add_argument("--format", choices=("text", "latex"), default="text")
    p.set_defaults(func=cmd_symbolic)

    p = sub.add_parser("verify", help="check the formula against an independent oracle")
    add_a(p)
    p.add_argument("--oracle", choices=ORACLES, required=True)
    p.add_argument("--input")
    p.add_argument("--i", type=int, help="1-based row index for --oracle price")
    p.add_argument("--j", type=int, help="1-based column index for --oracle price")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("terms", help="print the number of terms")
    add_a(p)
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("bench", help="time enumeration and exact evaluation")
    add_a(p)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--input")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
