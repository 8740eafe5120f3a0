"""Desk-scale lattice experiments: dyadic box sums of the transform over
squarefree moduli, integral points on the triple/double-double family in
coefficient boxes, and the almost-prime squarefree-discriminant census.

Everything is exact: box sums aggregate integer numerators per modulus and
only then become Fractions; the census decides squarefreeness and prime
counts by complete trial division (deterministic Miller-Rabin for large
prime cofactors), real solubility by sign analysis plus Sturm sequences,
and irreducibility by exact factorization over Q (with mod-p certificates
as a vectorized fast path).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .forms import (
    QuarticForm,
    factor_over_Q,
    format_form,
    in_family_X,
    invariants,
    is_R_soluble,
    splitting_type_mod,
)
from .elliptic import S_MODULUS
from .intfactor import FactorResult, factorize, is_prime, primes_below
from .vectorized import box_coeff_array, closed_n_batch

__all__ = [
    "F0",
    "Box",
    "BoxSumResult",
    "box_sum",
    "singular_lattice_count",
    "family_x_forms_in_box",
    "OmegaResult",
    "omega_and_squarefree",
    "CensusRow",
    "census",
    "census_rows",
    "census_s_rows",
    "write_census_csv",
    "CSV_HEADER",
]

#: the anchor form of the congruence class S: -x^4 - 38x^3y - 12x^2y^2 - 8xy^3
F0 = QuarticForm(-1, -38, -12, -8, 0)


@dataclass(frozen=True)
class Box:
    """The coefficient box rB = {f : |a_i| <= r}; (2r+1)^5 lattice points."""

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("positive half-width required")

    @property
    def size(self) -> int:
        return (2 * self.r + 1) ** 5

    def coeff_array(self) -> np.ndarray:
        return box_coeff_array(self.r)


def _squarefree_moduli(lo: int, hi: int) -> list[int]:
    return [q for q in range(lo, hi + 1) if q >= 1 and factorize(q).squarefree]


@dataclass(frozen=True)
class BoxSumResult:
    Q: int
    r: int
    exact: Fraction
    bound: float  # r^2/Q + r^4/Q^2 + r^5/Q^(5/2)
    in_x_exact: Fraction  # sub-sum over integral f in the singular family
    in_x_q5_one: Fraction  # its part where every p | q stays in the family

    @property
    def value(self) -> float:
        return float(self.exact)

    @property
    def ratio(self) -> float:
        return float(self.exact) / self.bound


def box_sum(Q: int, r: int) -> BoxSumResult:
    """S(Q, r) = sum over squarefree q in [Q, 2Q] and nonzero f in rB of
    |Phi_hat_q(f)|, exactly.

    The inner sum for a fixed q is an integer once scaled by q'^5
    (q' = q with the 2- and 3-parts removed), so the double sum is a short
    exact Fraction aggregation; per-prime |n| vectors over the box are
    computed once and reused across moduli.
    """
    if Q <= r:
        raise ValueError("Q > r required")
    qs = _squarefree_moduli(Q, 2 * Q)
    box = box_coeff_array(r)
    nonzero = np.any(box, axis=1)
    nz_count = int(nonzero.sum())

    q_parts = {q: sorted(p for p in factorize(q).factors if p > 3) for q in qs}
    absn: dict[int, np.ndarray] = {}
    for q in qs:
        for p in q_parts[q]:
            if p not in absn:
                absn[p] = np.abs(closed_n_batch(p, box))

    total = Fraction(0)
    for q in qs:
        ps = q_parts[q]
        if not ps:
            total += Fraction(nz_count)
            continue
        vec = absn[ps[0]]
        for p in ps[1:]:
            vec = vec * absn[p]
        num = int(vec[nonzero].sum())
        den = 1
        for p in ps:
            den *= p
        total += Fraction(num, den**5)

    in_x, in_x_q5_one = _in_x_subsums(qs, q_parts, r, absn, box)
    bound = r * r / Q + r**4 / Q**2 + r**5 / Q**2.5
    return BoxSumResult(Q, r, total, bound, in_x, in_x_q5_one)


def _in_x_subsums(qs, q_parts, r, absn, box):
    """Diagnostic split: the contribution of integral f in the singular
    family, and its part where no prime of q leaves the family mod p."""
    xs = sorted(family_x_forms_in_box(r) - {(0, 0, 0, 0, 0)})
    if not xs:
        return Fraction(0), Fraction(0)
    side = 2 * r + 1
    idx = np.array(
        [sum((c + r) * side ** (4 - k) for k, c in enumerate(f)) for f in xs],
        dtype=np.int64,
    )
    in_family_modp: dict[tuple[int, int], bool] = {}

    def stays(fi, f, p) -> bool:
        key = (fi, p)
        hit = in_family_modp.get(key)
        if hit is None:
            c = tuple(v % p for v in f)
            hit = not any(c) or splitting_type_mod(c, p).in_family_x
            in_family_modp[key] = hit
        return hit

    tot = Fraction(0)
    tot_q5 = Fraction(0)
    for q in qs:
        ps = q_parts[q]
        if not ps:
            tot += Fraction(len(xs))
            tot_q5 += Fraction(len(xs))
            continue
        den = 1
        for p in ps:
            den *= p
        den = den**5
        nums = np.ones(len(xs), dtype=np.int64)
        for p in ps:
            nums = nums * absn[p][idx]
        tot += Fraction(int(nums.sum()), den)
        keep = np.array(
            [all(stays(fi, f, p) for p in ps) for fi, f in zip(idx, xs)], dtype=bool
        )
        tot_q5 += Fraction(int(nums[keep].sum()), den)
    return tot, tot_q5


# ---------------------------------------------------------------------------
# Integral points of the singular family in boxes


def family_x_forms_in_box(r: int) -> set:
    """All integral forms in rB lying in the family (zero form included),
    by parametrized enumeration: (ax+by)^3 (cx+dy) and t (ax^2+bxy+cy^2)^2,
    deduplicated."""
    forms = {(0, 0, 0, 0, 0)}
    amax = 1
    while (amax + 1) ** 3 <= r:
        amax += 1
    for a in range(-amax, amax + 1):
        for b in range(-amax, amax + 1):
            if a == 0 and b == 0:
                continue
            a3, a2b, ab2, b3 = a**3, 3 * a * a * b, 3 * a * b * b, b**3
            for c in range(-r, r + 1):
                f0, f3t = a3 * c, b3 * c
                if abs(f0) > r:
                    continue
                for d in range(-r, r + 1):
                    f = (
                        f0,
                        a3 * d + a2b * c,
                        a2b * d + ab2 * c,
                        ab2 * d + f3t,
                        b3 * d,
                    )
                    if all(abs(v) <= r for v in f):
                        forms.add(f)
    sr = isqrt(r)
    sb = isqrt(3 * r) + 1
    for t in range(-r, r + 1):
        if t == 0:
            continue
        for a in range(-sr, sr + 1):
            for b in range(-sb, sb + 1):
                for c in range(-sr, sr + 1):
                    if a == 0 and b == 0 and c == 0:
                        continue
                    f = (
                        t * a * a,
                        2 * t * a * b,
                        t * (b * b + 2 * a * c),
                        2 * t * b * c,
                        t * c * c,
                    )
                    if all(abs(v) <= r for v in f):
                        forms.add(f)
    return forms


_METHOD_A_LIMIT = 60_000_000


def singular_lattice_count(r: int, method: str = "both") -> int:
    """|V(Z) & rB & family|: method "a" scans the whole box exhaustively
    (with a vectorized Disc = 0 prefilter; membership among the survivors
    is decided by exact Q-factorization), method "b" enumerates the two
    parametrizing families with dedup, "both" runs and cross-checks."""
    if method not in ("a", "b", "both"):
        raise ValueError("method must be 'a', 'b' or 'both'")
    count_b = len(family_x_forms_in_box(r)) if method in ("b", "both") else None
    count_a = None
    if method in ("a", "both"):
        if (2 * r + 1) ** 5 > _METHOD_A_LIMIT:
            raise ValueError(f"box (2*{r}+1)^5 too large for the exhaustive scan")
        box = box_coeff_array(r)
        a0, a1, a2, a3, a4 = (box[:, k] for k in range(5))
        i = 12 * a0 * a4 - 3 * a1 * a3 + a2 * a2
        j = (
            72 * a0 * a2 * a4
            + 9 * a1 * a2 * a3
            - 27 * (a0 * a3 * a3 + a1 * a1 * a4)
            - 2 * a2**3
        )
        cand = box[4 * i**3 - j * j == 0]
        count_a = sum(
            1 for row in cand if in_family_X(QuarticForm.from_coeffs(row))
        )
    if method == "a":
        return count_a
    if method == "b":
        return count_b
    if count_a != count_b:
        raise RuntimeError(
            f"family counts disagree at r={r}: scan {count_a}, parametrized {count_b}"
        )
    return count_a


# ---------------------------------------------------------------------------
# Prime-factor counting


@dataclass(frozen=True)
class OmegaResult:
    omega: int  # prime factors with multiplicity (of the factored part)
    squarefree: bool
    complete: bool


def omega_and_squarefree(n: int, trial_bound: int = 10**6) -> OmegaResult:
    """Omega(n) and squarefreeness of a nonzero integer, sign ignored.

    A composite cofactor beyond trial_bound^2 yields an explicit
    incomplete result instead of a guess.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    res: FactorResult = factorize(n, trial_bound=trial_bound)
    return OmegaResult(res.omega, res.squarefree and res.complete, res.complete)


# ---------------------------------------------------------------------------
# Census


CSV_HEADER = [
    "form",
    "a0",
    "a1",
    "a2",
    "a3",
    "a4",
    "I",
    "J",
    "Disc",
    "height",
    "omega",
    "squarefree",
    "irreducible",
    "r_soluble",
    "in_S",
]


@dataclass(frozen=True)
class CensusRow:
    coeffs: tuple
    i: int
    j: int
    disc: int
    height: object  # int or Fraction
    omega: int | None  # of Disc (Disc / 2^20 for rows in S); None when Disc = 0
    squarefree: bool
    omega_complete: bool
    irreducible: bool
    r_soluble: bool
    in_s: bool

    @property
    def passes_filters(self) -> bool:
        return (
            self.disc != 0
            and self.squarefree
            and self.omega is not None
            and self.omega <= 4
            and self.irreducible
            and self.r_soluble
        )

    def csv_record(self) -> list:
        return [
            format_form(self.coeffs),
            *[int(v) for v in self.coeffs],
            self.i,
            self.j,
            self.disc,
            _decimal_str(self.height),
            "" if self.omega is None else self.omega,
            _bool_str(self.squarefree),
            _bool_str(self.irreducible),
            _bool_str(self.r_soluble),
            _bool_str(self.in_s),
        ]


def _bool_str(b: bool) -> str:
    return "true" if b else "false"


def _decimal_str(h) -> str:
    if isinstance(h, int):
        return str(h)
    num, den = h.numerator, h.denominator
    if den == 1:
        return str(num)
    if den == 2:
        return f"{num // 2}.5"
    assert den == 4
    q, rem = divmod(num, 4)
    return f"{q}.{'25' if rem == 1 else '75'}"


def _is_in_s(coeffs) -> bool:
    return all((c - c0) % S_MODULUS == 0 for c, c0 in zip(coeffs, F0.coeffs))


def _is_irreducible(f: QuarticForm) -> bool:
    if f.is_zero:
        return False
    _, factors = factor_over_Q(f)
    return len(factors) == 1 and factors[0][1] == 1 and len(factors[0][0]) == 5


def census_row(f: QuarticForm, trial_bound: int = 10**6) -> CensusRow:
    """Full per-form census record (exact, scalar path)."""
    from .forms import height as form_height

    i, j, disc = invariants(f)
    in_s = _is_in_s(f.coeffs)
    dprime = disc
    if in_s:
        if disc % 2**20:
            raise RuntimeError("S-congruence row without 2^20 | Disc (impossible)")
        dprime = disc // 2**20
    if dprime == 0:
        om, sq, complete = None, False, True
    else:
        o = omega_and_squarefree(dprime, trial_bound=trial_bound)
        om, sq, complete = o.omega, o.squarefree, o.complete
    return CensusRow(
        coeffs=f.coeffs,
        i=i,
        j=j,
        disc=disc,
        height=form_height(f),
        omega=om,
        squarefree=sq,
        omega_complete=complete,
        irreducible=_is_irreducible(f),
        r_soluble=is_R_soluble(f),
        in_s=in_s,
    )


def census_s_rows(coeff_bound: int, trial_bound: int = 10**6) -> list[CensusRow]:
    """Rows of the S-congruence sublattice inside the coefficient box
    (coordinates are +- 110592-translates of the anchor form)."""
    choices = []
    for c0 in F0.coeffs:
        base = c0 % S_MODULUS
        vals = []
        v = base - S_MODULUS * ((base + coeff_bound) // S_MODULUS)
        while v <= coeff_bound:
            if v >= -coeff_bound:
                vals.append(v)
            v += S_MODULUS
        choices.append(vals)
    rows = []

    def rec(k, acc):
        if k == 5:
            rows.append(census_row(QuarticForm.from_coeffs(acc), trial_bound))
            return
        for v in choices[k]:
            rec(k + 1, acc + [v])

    rec(0, [])
    return rows


def census_rows(
    coeff_bound: int,
    height_bound: int | None = None,
    require_s: bool = False,
    trial_bound: int = 10**6,
) -> list[CensusRow]:
    """Every census row of the box, scalar exact path (small boxes only)."""
    if require_s:
        rows = census_s_rows(coeff_bound, trial_bound)
    else:
        if (2 * coeff_bound + 1) ** 5 > 2_000_000:
            raise ValueError("box too large for the exhaustive row dump")
        rng = range(-coeff_bound, coeff_bound + 1)
        rows = [
            census_row(QuarticForm(a0, a1, a2, a3, a4), trial_bound)
            for a0 in rng
            for a1 in rng
            for a2 in rng
            for a3 in rng
            for a4 in rng
        ]
    if height_bound is not None:
        rows = [r for r in rows if r.height < height_bound]
    return rows


def write_census_csv(rows, path) -> None:
    with open(path, "w", newline="") as out:
        w = csv.writer(out)
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow(row.csv_record())


# -- vectorized aggregate engine --------------------------------------------


_CENSUS_GUARD = 25  # (2*25+1)^5 ~ 3.5e8 rows is the ceiling for the engine
_CERT_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31)


def _slab(coeff_bound: int, a0: int) -> np.ndarray:
    side = 2 * coeff_bound + 1
    idx = np.arange(side**4, dtype=np.int64)
    cols = [np.full(side**4, a0, dtype=np.int64)]
    cols += [((idx // side ** (3 - k)) % side) - coeff_bound for k in range(4)]
    return np.stack(cols, axis=1)


def _batch_omega_squarefree(vals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """omega and squarefree flags for an array of positive int64 values, by
    batched trial division (small primes on the full array, the long tail
    only on surviving composite cofactors)."""
    v = vals.astype(np.int64).copy()
    om = np.zeros(len(v), dtype=np.int64)
    sq = np.ones(len(v), dtype=bool)
    small = 300
    for q in primes_below(small + 1):
        m = v % q == 0
        if not m.any():
            continue
        v[m] //= q
        om[m] += 1
        m &= v % q == 0
        if m.any():
            sq[m] = False
            while m.any():
                v[m] //= q
                om[m] += 1
                m &= v % q == 0
    active = np.nonzero(v > 1)[0]
    av = v[active]
    # rough values below small^2 are prime
    done = av < small * small
    om[active[done]] += 1
    active, av = active[~done], av[~done]
    # perfect prime squares and cubes
    s = np.sqrt(av.astype(np.float64)).astype(np.int64)
    for adj in (-1, 0, 1):
        m = (s + adj) ** 2 == av
        if m.any():
            om[active[m]] += 2
            sq[active[m]] = False
            keep = ~m
            active, av, s = active[keep], av[keep], s[keep]
    c = np.cbrt(av.astype(np.float64)).astype(np.int64)
    for adj in (-1, 0, 1):
        m = (c + adj) ** 3 == av
        if m.any():
            om[active[m]] += 3
            sq[active[m]] = False
            keep = ~m
            active, av, c = active[keep], av[keep], c[keep]
    # deterministic primality test peels off the prime cofactors
    if len(av):
        pmask = np.fromiter((is_prime(int(x)) for x in av), bool, count=len(av))
        om[active[pmask]] += 1
        active, av = active[~pmask], av[~pmask]
    # remaining composites: pq, p^2 q, pqr with all factors > small;
    # the sieve bound rounds up to a power of two to stay cache-friendly
    limit = isqrt(int(av.max())) + 1 if len(av) else 0
    limit = 1 << max(limit, small).bit_length()
    for q in primes_below(limit + 1):
        if q <= small:
            continue
        if not len(av):
            break
        m = av % q == 0
        if m.any():
            av[m] //= q
            om[active[m]] += 1
            m2 = m & (av % q == 0)
            while m2.any():
                sq[active[m2]] = False
                av[m2] //= q
                om[active[m2]] += 1
                m2 &= av % q == 0
        finished = (av == 1) | (av < q * q)
        if finished.any():
            om[active[finished & (av > 1)]] += 1
            keep = ~finished
            active, av = active[keep], av[keep]
    # prime cofactors can survive the last gap below the trial limit
    for k in range(len(av)):
        if not is_prime(int(av[k])):
            raise RuntimeError(f"unfactored census cofactor {int(av[k])}")
        om[active[k]] += 1
    return om, sq


def _batch_soluble(cols) -> np.ndarray:
    """Vectorized real solubility; falls back to Sturm on the measure-zero
    Disc = 0 stratum."""
    a0, a1, a2, a3, a4 = cols
    out = (a0 >= 0) | (a4 >= 0)
    rest = np.nonzero(~out)[0]
    if not len(rest):
        return out
    b0, b1, b2, b3, b4 = (c[rest] for c in cols)
    i = 12 * b0 * b4 - 3 * b1 * b3 + b2 * b2
    j = (
        72 * b0 * b2 * b4
        + 9 * b1 * b2 * b3
        - 27 * (b0 * b3 * b3 + b1 * b1 * b4)
        - 2 * b2**3
    )
    disc27 = 4 * i**3 - j * j  # 27 * Disc, same sign
    # negative discriminant: two real roots; positive: four or none,
    # four exactly when P < 0 and D < 0
    P = 8 * b0 * b2 - 3 * b1 * b1
    D = (
        64 * b0**3 * b4
        - 16 * b0 * b0 * b2 * b2
        + 16 * b0 * b1 * b1 * b2
        - 16 * b0 * b0 * b1 * b3
        - 3 * b1**4
    )
    has_root = (disc27 < 0) | ((disc27 > 0) & (P < 0) & (D < 0))
    sing = np.nonzero(disc27 == 0)[0]
    for k in sing:
        row = [int(c[rest[k]]) for c in cols]
        has_root[k] = is_R_soluble(QuarticForm.from_coeffs(row))
    out[rest] = has_root
    return out


def _batch_irreducible(cols, idx) -> np.ndarray:
    """Irreducibility over Q for the rows selected by idx: mod-p
    certificates first (a prime with no projective root rules out linear
    factors, a nonsingular prime with exactly one root rules out quadratic
    splittings), exact factorization for the undecided rest."""
    sub = [c[idx] for c in cols]
    n = len(idx)
    irr = np.zeros(n, dtype=bool)
    red = (sub[0] == 0) | (sub[4] == 0)
    no_lin = np.zeros(n, dtype=bool)
    no_quad = np.zeros(n, dtype=bool)
    open_mask = ~red
    for p in _CERT_PRIMES:
        if not open_mask.any():
            break
        rows = np.nonzero(open_mask)[0]
        cc = [c[rows] % p for c in sub]
        nonzero_modp = (cc[0] | cc[1] | cc[2] | cc[3] | cc[4]) != 0
        roots = (cc[0] == 0).astype(np.int64)  # the point at infinity
        for x in range(p):
            val = (((cc[0] * x + cc[1]) * x + cc[2]) * x + cc[3]) * x + cc[4]
            roots += val % p == 0
        i = (12 * cc[0] * cc[4] - 3 * cc[1] * cc[3] + cc[2] * cc[2]) % p
        j = (
            72 * cc[0] * cc[2] * cc[4]
            + 9 * cc[1] * cc[2] * cc[3]
            - 27 * (cc[0] * cc[3] * cc[3] + cc[1] * cc[1] * cc[4])
            - 2 * cc[2] ** 3
        ) % p
        nonsing = (4 * i**3 - j * j) % p != 0
        no_lin[rows] |= (roots == 0) & nonzero_modp
        no_quad[rows] |= (roots == 1) & nonsing
        decided = no_lin & no_quad
        open_mask &= ~decided
    irr |= no_lin & no_quad
    for k in np.nonzero(open_mask)[0]:
        irr[k] = _is_irreducible(
            QuarticForm.from_coeffs([int(c[k]) for c in sub])
        )
    irr[red] = False
    return irr


def census(
    coeff_bound: int,
    height_bound: int | None = None,
    require_s: bool = False,
    trial_bound: int = 10**6,
    out_csv=None,
) -> dict:
    """Aggregate census over the coefficient box |a_i| <= coeff_bound.

    Reports total/zero-discriminant counts, the histogram of
    Omega(Disc) over nonzero discriminants, squarefree and
    squarefree-with-Omega<=4 counts, real-soluble counts, the number of
    candidates (squarefree, Omega <= 4, soluble, inside the height bound),
    the count additionally irreducible over Q ("passing_all"), distinct
    (I, J) pairs, and the S-congruence slice.  With out_csv set, the rows
    passing every filter are streamed to a CSV file.
    """
    if require_s:
        rows = census_s_rows(coeff_bound, trial_bound)
        if height_bound is not None:
            rows = [r for r in rows if r.height < height_bound]
        if out_csv is not None:
            write_census_csv(rows, out_csv)
        agg = _aggregate_from_rows(rows)
        agg.update(
            coeff_bound=coeff_bound,
            height_bound=height_bound,
            require_s=True,
        )
        return agg
    if coeff_bound > _CENSUS_GUARD:
        raise ValueError(f"coefficient bound {coeff_bound} beyond the engine guard")

    omega_hist: dict[int, int] = {}
    totals = dict(
        total_forms=0,
        zero_disc=0,
        squarefree=0,
        sf_omega_le4=0,
        r_soluble=0,
        candidates=0,
        passing_all=0,
        s_rows=0,
        s_passing=0,
    )
    ij_chunks = []
    writer = None
    out_handle = None
    if out_csv is not None:
        out_handle = open(out_csv, "w", newline="")
        writer = csv.writer(out_handle)
        writer.writerow(CSV_HEADER)
    try:
        for a0 in range(-coeff_bound, coeff_bound + 1):
            slab = _slab(coeff_bound, a0)
            cols = [slab[:, k] for k in range(5)]
            i = 12 * cols[0] * cols[4] - 3 * cols[1] * cols[3] + cols[2] * cols[2]
            j = (
                72 * cols[0] * cols[2] * cols[4]
                + 9 * cols[1] * cols[2] * cols[3]
                - 27 * (cols[0] * cols[3] * cols[3] + cols[1] * cols[1] * cols[4])
                - 2 * cols[2] ** 3
            )
            disc = (4 * i**3 - j * j) // 27
            totals["total_forms"] += len(slab)
            zero = disc == 0
            totals["zero_disc"] += int(zero.sum())

            ij_chunks.append(np.unique((i + (1 << 30)) * (1 << 31) + (j + (1 << 30))))

            nz = np.nonzero(~zero)[0]
            uniq, inverse = np.unique(np.abs(disc[nz]), return_inverse=True)
            om_u, sq_u = _batch_omega_squarefree(uniq)
            om = np.full(len(slab), -1, dtype=np.int64)
            om[nz] = om_u[inverse]
            sq = np.zeros(len(slab), dtype=bool)
            sq[nz] = sq_u[inverse]
            hist = np.bincount(om[nz])
            for k, cnt in enumerate(hist):
                if cnt:
                    omega_hist[k] = omega_hist.get(k, 0) + int(cnt)
            totals["squarefree"] += int(sq.sum())
            sf4 = sq & (om >= 0) & (om <= 4)
            totals["sf_omega_le4"] += int(sf4.sum())

            soluble = _batch_soluble(cols)
            totals["r_soluble"] += int(soluble.sum())

            cand = sf4 & soluble
            if height_bound is not None:
                cand &= (np.abs(i) ** 3 < height_bound) & (j * j < 4 * height_bound)
            totals["candidates"] += int(cand.sum())

            cidx = np.nonzero(cand)[0]
            if len(cidx):
                irr = _batch_irreducible(cols, cidx)
                totals["passing_all"] += int(irr.sum())
                if writer is not None:
                    for k in cidx[irr]:
                        writer.writerow(
                            _record_from_arrays(slab, i, j, disc, om, sq, int(k))
                        )
    finally:
        if out_handle is not None:
            out_handle.close()

    keys = np.unique(np.concatenate(ij_chunks)) if ij_chunks else np.array([])
    agg = dict(
        coeff_bound=coeff_bound,
        height_bound=height_bound,
        require_s=False,
        omega_hist={str(k): v for k, v in sorted(omega_hist.items())},
        distinct_ij=int(len(keys)),
        **totals,
    )
    return agg


def _record_from_arrays(slab, i, j, disc, om, sq, k) -> list:
    coeffs = tuple(int(v) for v in slab[k])
    iv, jv = int(i[k]), int(j[k])
    h = max(Fraction(abs(iv) ** 3), Fraction(jv * jv, 4))
    h = int(h) if h.denominator == 1 else h
    return [
        format_form(coeffs),
        *coeffs,
        iv,
        jv,
        int(disc[k]),
        _decimal_str(h),
        int(om[k]),
        _bool_str(bool(sq[k])),
        _bool_str(True),  # rows reaching the writer passed irreducibility
        _bool_str(True),  # and solubility
        _bool_str(False),  # engine range lies below the S anchor box
    ]


def _aggregate_from_rows(rows) -> dict:
    omega_hist: dict[str, int] = {}
    for r in rows:
        if r.omega is not None:
            omega_hist[str(r.omega)] = omega_hist.get(str(r.omega), 0) + 1
    return dict(
        total_forms=len(rows),
        zero_disc=sum(1 for r in rows if r.disc == 0),
        omega_hist=dict(sorted(omega_hist.items())),
        squarefree=sum(1 for r in rows if r.squarefree),
        sf_omega_le4=sum(
            1 for r in rows if r.squarefree and r.omega is not None and r.omega <= 4
        ),
        r_soluble=sum(1 for r in rows if r.r_soluble),
        candidates=sum(
            1
            for r in rows
            if r.squarefree and r.omega is not None and r.omega <= 4 and r.r_soluble
        ),
        passing_all=sum(1 for r in rows if r.passes_filters),
        distinct_ij=len({(r.i, r.j) for r in rows}),
        s_rows=sum(1 for r in rows if r.in_s),
        s_passing=sum(1 for r in rows if r.in_s and r.passes_filters),
    )
