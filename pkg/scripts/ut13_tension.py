"""Orbit sizes and constituent count for the u_13(2) functional.

Prints the chain, |O| (computed and enumerated), the constituent count and
the orbit exponents next to the reference ones.  An independent Monte Carlo
estimate of |{nu restricted to s : nu in lambda G}| follows with --sample.
"""

import argparse
import json

import numpy as np

from algchar import fixtures
from algchar.dualforms import chain, restrict
from algchar.grouporbit import action_matrix, g_inv
from algchar.verify import ut13_report


def sample_restrictions(draws: int, batch: int, seed: int) -> int:
    alg, lam = fixtures.ut13()
    ch = chain(alg, lam)
    F = alg.field
    rng = np.random.default_rng(seed)
    seen = set()
    for _ in range(draws // batch):
        gs = rng.integers(0, 2, size=(batch, alg.dim))
        for g in gs:
            nu = F.matmul(lam, action_matrix(alg, g, "right"))
            seen.add(restrict(alg, nu, ch.s).tobytes())
    return len(seen)


def main() -> None:
    ap = argparse.ArgumentParser(description="u_13(2) orbit sizes")
    ap.add_argument("--sample", type=int, default=0, help="random group elements to draw")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(json.dumps(ut13_report(), indent=2, sort_keys=True, default=str))
    if args.sample:
        n = sample_restrictions(args.sample, 512, args.seed)
        print(f"distinct restrictions after {args.sample} draws: {n} (2^15 = {1 << 15}, 2^16 = {1 << 16})")


if __name__ == "__main__":
    main()
