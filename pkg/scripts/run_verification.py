#!/usr/bin/env python3
"""Full verification sweep: exhaustive oracle-vs-closed comparison for
p in {5, 7}, sampled for p up to 23, then the geometric assembly identity
for p in {5, 7, 11}.  Mirrors the CLI but keeps everything in-process."""

import sys
import time

import numpy as np

from quartics.vectorized import all_forms_array, oracle_n_batch, scheme_counts_batch
from quartics.fourier import closed_n


def main() -> int:
    rc = 0
    for p, samples in ((5, None), (7, None), (11, 200), (13, 200), (17, 200), (19, 200), (23, 200)):
        t0 = time.time()
        if samples is None:
            forms = all_forms_array(p)
        else:
            forms = np.random.default_rng([1, p]).integers(0, p, size=(samples, 5), dtype=np.int64)
        oracle = oracle_n_batch(p, forms, check_fibers=True)
        bad = 0
        for k in range(len(forms)):
            if closed_n(p, tuple(int(v) for v in forms[k])) != int(oracle[k]):
                bad += 1
        status = "ok" if bad == 0 else f"{bad} MISMATCHES"
        print(f"p={p:3d}  forms={len(forms):7d}  {status}  ({time.time()-t0:.1f}s)")
        rc |= bad != 0

    for p in (5, 7, 11):
        t0 = time.time()
        forms = all_forms_array(p)
        forms = forms[np.any(forms, axis=1)]
        n = oracle_n_batch(p, forms, check_fibers=False)
        x122, x22, x1212 = scheme_counts_batch(p, forms)
        ok = np.array_equal(n, p * (x122 + x22 - x1212 - (p + 1) ** 2))
        print(f"assembly p={p:3d}  {'ok' if ok else 'MISMATCH'}  ({time.time()-t0:.1f}s)")
        rc |= not ok
    return rc


if __name__ == "__main__":
    sys.exit(main())
