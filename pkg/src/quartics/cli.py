"""Command-line front end: verification sweeps, single-form queries, and
the lattice experiments.  JSON goes to stdout, progress to stderr; output
is byte-identical across runs with the same flags and seed (and across
thread counts).

Exit codes: 0 success, 1 verification failure (a minimal counterexample is
printed in the JSON), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from multiprocessing import Pool

import numpy as np

from . import experiments
from .elliptic import e_prime_of, jacobian_model, point_count, two_two_from_quartic
from .forms import QuarticForm, format_form, invariants_mod, parse_form
from .fourier import closed_n, oracle_fourier
from .intfactor import primes_below
from .schemes import (
    closed_scheme_counts,
    count_X122,
    count_X1212,
    count_X22,
)
from .vectorized import all_forms_array, oracle_n_batch


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _primes_in(lo_exclusive: int, hi_inclusive: int) -> list[int]:
    return [p for p in primes_below(hi_inclusive + 1) if p > lo_exclusive]


# ---------------------------------------------------------------------------
# verify-theorem


def _verify_prime(args) -> dict:
    p, samples, seed = args
    if samples is None:
        forms = all_forms_array(p)
    else:
        rng = np.random.default_rng([seed, p])
        forms = rng.integers(0, p, size=(samples, 5), dtype=np.int64)
    oracle = oracle_n_batch(p, forms)
    bad = []
    for k in range(len(forms)):
        c = tuple(int(v) for v in forms[k])
        n_closed = closed_n(p, c)
        if n_closed != int(oracle[k]):
            bad.append(
                {
                    "p": p,
                    "form": format_form(c),
                    "oracle_n": int(oracle[k]),
                    "closed_n": n_closed,
                }
            )
            if len(bad) >= 3:
                break
    return {
        "p": p,
        "forms": len(forms),
        "mismatches": len(bad),
        "examples": bad,
    }


def cmd_verify_theorem(ns) -> int:
    ex_primes = _primes_in(3, ns.exhaustive_pmax)
    sa_primes = [p for p in _primes_in(3, ns.sampled_pmax) if p > ns.exhaustive_pmax]
    tasks = [(p, None, ns.seed) for p in ex_primes] + [
        (p, ns.samples, ns.seed) for p in sa_primes
    ]
    if ns.threads > 1 and len(tasks) > 1:
        with Pool(ns.threads) as pool:
            results = pool.map(_verify_prime, tasks)
    else:
        results = []
        for t in tasks:
            _progress(f"verifying p={t[0]} ({'exhaustive' if t[1] is None else 'sampled'})")
            results.append(_verify_prime(t))
    per_p = {r["p"]: r for r in results}
    exhaustive = [per_p[p] for p in ex_primes]
    sampled = [per_p[p] for p in sa_primes]
    ok = all(r["mismatches"] == 0 for r in results)
    _emit(
        {
            "command": "verify-theorem",
            "exhaustive": exhaustive,
            "sampled": sampled,
            "seed": ns.seed,
            "ok": ok,
        }
    )
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# fourier / schemes


def cmd_fourier(ns) -> int:
    coeffs = parse_form(ns.form)
    payload = {"command": "fourier", "p": ns.p, "form": format_form(coeffs), "method": ns.method}
    ok = True
    if ns.method in ("oracle", "both"):
        payload["oracle_n"] = oracle_fourier(ns.p, coeffs).n
    if ns.method in ("closed", "both"):
        payload["closed_n"] = closed_n(ns.p, coeffs)
    if ns.method == "both":
        ok = payload["oracle_n"] == payload["closed_n"]
        payload["match"] = ok
    n = payload.get("closed_n", payload.get("oracle_n"))
    payload["n"] = n
    payload["value"] = f"{n}/{ns.p**5}"
    _emit(payload)
    return 0 if ok else 1


def cmd_schemes(ns) -> int:
    coeffs = parse_form(ns.form)
    f = QuarticForm.from_coeffs(coeffs, p=ns.p)
    brute = (count_X122(f), count_X22(f), count_X1212(f))
    closed = closed_scheme_counts(f)
    names = ("x122", "x22", "x1212")
    counts = {
        name: {"brute": b, "closed": c}
        for name, b, c in zip(names, brute, closed)
    }
    ok = brute == closed
    _emit(
        {
            "command": "schemes",
            "p": ns.p,
            "form": format_form(coeffs),
            "counts": counts,
            "ok": ok,
        }
    )
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# experiments


def cmd_box_sum(ns) -> int:
    res = experiments.box_sum(ns.q, ns.r)
    _emit(
        {
            "command": "box-sum",
            "q": ns.q,
            "r": ns.r,
            "exact": f"{res.exact.numerator}/{res.exact.denominator}",
            "value": res.value,
            "bound": res.bound,
            "ratio": res.ratio,
            "in_x": str(res.in_x_exact),
            "in_x_q5_one": str(res.in_x_q5_one),
        }
    )
    return 0


def cmd_singular_count(ns) -> int:
    rows = []
    ok = True
    for r in range(1, ns.rmax + 1):
        _progress(f"singular-count r={r}")
        b = experiments.singular_lattice_count(r, method="b")
        row = {"r": r, "parametrized": b, "ratio_r2": b / (r * r)}
        if (2 * r + 1) ** 5 <= experiments._METHOD_A_LIMIT:
            a = experiments.singular_lattice_count(r, method="a")
            row["exhaustive"] = a
            if a != b:
                ok = False
        rows.append(row)
    _emit({"command": "singular-count", "rmax": ns.rmax, "rows": rows, "ok": ok})
    return 0 if ok else 1


def cmd_census(ns) -> int:
    agg = experiments.census(
        ns.coeff_bound,
        height_bound=ns.height,
        require_s=ns.require_s,
        out_csv=ns.out,
    )
    agg["command"] = "census"
    _emit(agg)
    return 0


def cmd_jacobian_check(ns) -> int:
    checked = []
    mismatches = []
    for p in _primes_in(3, ns.pmax):
        rng = np.random.default_rng([ns.seed, p])
        found = 0
        while found < ns.samples:
            c = tuple(int(v) for v in rng.integers(0, p, size=5))
            i, j, d = invariants_mod(c, p)
            if j == 0 or d == 0:
                continue
            found += 1
            f = QuarticForm.from_coeffs(c, p=p)
            n_curve = point_count(e_prime_of(f))
            n_jac = point_count(jacobian_model(two_two_from_quartic(f)))
            n_scheme = count_X1212(f)
            if not (n_curve == n_jac == n_scheme):
                mismatches.append(
                    {
                        "p": p,
                        "form": format_form(c),
                        "e_prime": n_curve,
                        "jacobian_model": n_jac,
                        "x1212": n_scheme,
                    }
                )
        checked.append({"p": p, "forms": ns.samples})
        _progress(f"jacobian-check p={p} done")
    ok = not mismatches
    _emit(
        {
            "command": "jacobian-check",
            "pmax": ns.pmax,
            "samples": ns.samples,
            "seed": ns.seed,
            "checked": checked,
            "mismatches": mismatches,
            "ok": ok,
        }
    )
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quartics",
        description="Exact transform of the singular binary-quartic indicator, "
        "scheme point counts, and lattice experiments.",
    )
    default_threads = int(os.environ.get("QUARTICS_THREADS", "1"))
    sub = ap.add_subparsers(dest="command", required=True)

    vt = sub.add_parser("verify-theorem", help="oracle vs closed-form sweep")
    vt.add_argument("--exhaustive-pmax", type=int, required=True)
    vt.add_argument("--sampled-pmax", type=int, default=0)
    vt.add_argument("--samples", type=int, default=200)
    vt.add_argument("--seed", type=int, default=1)
    vt.add_argument("--threads", type=int, default=default_threads)
    vt.set_defaults(func=cmd_verify_theorem)

    fo = sub.add_parser("fourier", help="transform value of one form")
    fo.add_argument("--p", type=int, required=True)
    fo.add_argument("--form", type=str, required=True)
    fo.add_argument("--method", choices=("oracle", "closed", "both"), default="closed")
    fo.set_defaults(func=cmd_fourier)

    sc = sub.add_parser("schemes", help="brute and closed scheme counts")
    sc.add_argument("--p", type=int, required=True)
    sc.add_argument("--form", type=str, required=True)
    sc.set_defaults(func=cmd_schemes)

    bs = sub.add_parser("box-sum", help="dyadic modulus box sum")
    bs.add_argument("--q", type=int, required=True)
    bs.add_argument("--r", type=int, required=True)
    bs.set_defaults(func=cmd_box_sum)

    sl = sub.add_parser("singular-count", help="integral family points in boxes")
    sl.add_argument("--rmax", type=int, required=True)
    sl.set_defaults(func=cmd_singular_count)

    ce = sub.add_parser("census", help="almost-prime squarefree-discriminant census")
    ce.add_argument("--coeff-bound", type=int, required=True)
    ce.add_argument("--height", type=int, default=None)
    ce.add_argument("--require-s", action="store_true")
    ce.add_argument("--out", type=str, default=None)
    ce.set_defaults(func=cmd_census)

    jc = sub.add_parser("jacobian-check", help="genus-one model consistency")
    jc.add_argument("--pmax", type=int, required=True)
    jc.add_argument("--samples", type=int, default=50)
    jc.add_argument("--seed", type=int, default=1)
    jc.set_defaults(func=cmd_jacobian_check)

    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
