"""Tabulate |S_a| and exact-evaluation time for equal exponents a = (k, ..., k).

    python scripts/term_counts.py --max-n 4 --max-k 5
"""
import argparse
import time

from gaussmoments import count_support, moment
from gaussmoments.cli import default_bench_spec


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=4)
    parser.add_argument("--max-k", type=int, default=4)
    parser.add_argument("--time-limit", type=float, default=10.0, help="skip evaluation above this many terms/1e4 s")
    args = parser.parse_args()

    print(f"{'n':>3} {'k':>3} {'terms':>10} {'eval_s':>10}")
    for n in range(1, args.max_n + 1):
        spec = default_bench_spec(n)
        for k in range(1, args.max_k + 1):
            a = (k,) * n
            terms = count_support(a)
            if terms / 1e4 > args.time_limit:
                print(f"{n:>3} {k:>3} {terms:>10} {'skipped':>10}")
                continue
            t0 = time.perf_counter()
            moment(a, spec)
            print(f"{n:>3} {k:>3} {terms:>10} {time.perf_counter() - t0:>10.4f}")


if __name__ == "__main__":
    main()
