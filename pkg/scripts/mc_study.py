"""Monte Carlo z-scores against the exact moment over a random rational corpus.

    python scripts/mc_study.py --size 30 --samples 200000
"""
import argparse

from gaussmoments import mc_estimate, moment
from gaussmoments.corpus import CorpusConfig, corpus


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", type=int, default=30)
    parser.add_argument("--samples", type=int, default=200_000)
    parser.add_argument("--max-degree", type=int, default=5)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    cfg = CorpusConfig(max_degree=args.max_degree, seed=args.seed)
    zs = []
    for k, (a, spec) in enumerate(corpus(args.size, cfg)):
        exact = moment(a, spec)
        rep = mc_estimate(a, spec, args.samples, seed=args.seed * 1000 + k)
        z = rep.z_score(exact)
        zs.append(z)
        print(f"a={a!s:<12} exact={float(exact):>14.6g} mc={rep.estimate:>14.6g} se={rep.std_error:>10.3g} z={z:6.2f}")
    print(f"max z = {max(zs):.2f}; fraction within 2 SE = {sum(z <= 2 for z in zs) / len(zs):.2f}")


if __name__ == "__main__":
    main()
