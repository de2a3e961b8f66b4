"""Run every verification suite and print one PASS/FAIL line per suite.

Usage: python scripts/run_acceptance.py [--slow] [--json PATH]
"""

import argparse
import json
import sys

from algchar.verify import SUITES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--slow", action="store_true", help="include u_4(3) in the oracle and Exp checks")
    ap.add_argument("--json", help="write suite details to this file")
    args = ap.parse_args()
    results = []
    for i, name in enumerate(SUITES, 1):
        r = run_suite(name, slow=args.slow)
        print(f"[{i:2d}] {r.line()}", flush=True)
        results.append(r)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2, sort_keys=True, default=str)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
