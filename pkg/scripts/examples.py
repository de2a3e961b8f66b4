"""Reproduce the Q8 and u_5 worked examples."""

import json

from algchar.verify import q8_report, ut5_report

if __name__ == "__main__":
    print(json.dumps({"q8": q8_report(), "ut5-odd": ut5_report(3)}, indent=2, sort_keys=True))
