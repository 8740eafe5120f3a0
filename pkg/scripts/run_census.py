#!/usr/bin/env python3
"""Almost-prime squarefree-discriminant census over coefficient boxes
B in {5, 10, 15}, plus the congruence-class slice at B = 38 (which contains
exactly the anchor form).  Aggregates as JSON lines on stdout; pass an
output directory to also dump the passing rows of the B = 5 box as CSV."""

import json
import sys
import time
from pathlib import Path

from quartics.experiments import census


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else None
    for bound in (5, 10, 15):
        t0 = time.time()
        csv_path = None
        if out_dir is not None and bound == 5:
            out_dir.mkdir(parents=True, exist_ok=True)
            csv_path = str(out_dir / f"census_b{bound}.csv")
        agg = census(bound, out_csv=csv_path)
        agg["elapsed_s"] = round(time.time() - t0, 1)
        print(json.dumps(agg, sort_keys=True), flush=True)
    agg = census(38, require_s=True)
    print(json.dumps(agg, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
