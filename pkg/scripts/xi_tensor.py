"""Do products of xi characters stay in the span of the xi characters?

Usage: python scripts/xi_tensor.py N Q
"""

import argparse
import json

from algchar.analysis import xi_tensor_experiment
from algchar.gf import GF
from algchar.nilalg import make_ut


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n", type=int)
    ap.add_argument("q", type=int)
    ap.add_argument("--max-pairs", type=int)
    args = ap.parse_args()
    res = xi_tensor_experiment(make_ut(args.n, GF(args.q)), max_pairs=args.max_pairs)
    res["witnesses"] = res["witnesses"][:3]
    print(json.dumps(res, indent=2, sort_keys=True, default=str))


if __name__ == "__main__":
    main()
