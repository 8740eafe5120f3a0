"""numpy batch engines behind the exhaustive sweeps.

The scalar implementations in forms/schemes/fourier are the contracts;
everything here is an equivalent vectorized evaluation path for sweeps
over ~p^5-sized spaces.  All arithmetic is exact: int64 modular work plus
BLAS float64 products whose integer operands stay far below 2^53.
The scalar/vectorized agreement is itself part of the test suite.

Memory discipline: all big intermediates are chunked; nothing here
allocates more than a few hundred MB regardless of p or box size.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .ffarith import check_prime, chi12

__all__ = [
    "coeff_block",
    "singular_coeff_array",
    "singular_proj_array",
    "all_forms_array",
    "chi_array",
    "inv_array",
    "trace_table",
    "count_xf_batch",
    "oracle_n_batch",
    "closed_n_batch",
    "scheme_counts_batch",
    "box_coeff_array",
]

_CHUNK = 1 << 18


def _ij_arrays(cols, p):
    a0, a1, a2, a3, a4 = (c.astype(np.int64) % p for c in cols)
    i = (12 * a0 * a4 - 3 * a1 * a3 + a2 * a2) % p
    j = (72 * a0 * a2 * a4 + 9 * a1 * a2 * a3 - 27 * (a0 * a3 * a3 + a1 * a1 * a4) - 2 * a2**3) % p
    return i, j


def coeff_block(p: int, start: int, stop: int) -> np.ndarray:
    """Rows start..stop of the lexicographic enumeration of V(F_p)."""
    idx = np.arange(start, stop, dtype=np.int64)
    cols = [(idx // p ** (4 - k)) % p for k in range(5)]
    return np.stack(cols, axis=1)


def all_forms_array(p: int) -> np.ndarray:
    """All p^5 coefficient rows (only sensible for small p)."""
    return coeff_block(p, 0, p**5)


@lru_cache(maxsize=12)
def singular_coeff_array(p: int) -> np.ndarray:
    """(p^4 + p^3 - p^2, 5) array of all singular forms, zero row included."""
    check_prime(p, min_exclusive=3)
    rows = []
    total = p**5
    for start in range(0, total, max(_CHUNK, p**4)):
        stop = min(start + max(_CHUNK, p**4), total)
        block = coeff_block(p, start, stop)
        i, j = _ij_arrays(block.T, p)
        mask = (4 * i**3 - j * j) % p == 0
        rows.append(block[mask])
    out = np.concatenate(rows)
    if len(out) != p**4 + p**3 - p**2:
        raise RuntimeError(f"singular count mismatch at p={p}: {len(out)}")
    return out


@lru_cache(maxsize=12)
def singular_proj_array(p: int) -> np.ndarray:
    """Canonical representatives (first nonzero coordinate 1) of X(F_p)."""
    sing = singular_coeff_array(p)
    nz = sing != 0
    first = np.argmax(nz, axis=1)
    lead = sing[np.arange(len(sing)), first]
    keep = (lead == 1) & nz.any(axis=1)
    return sing[keep]


@lru_cache(maxsize=32)
def chi_array(p: int) -> np.ndarray:
    """chi_array(p)[a] = Legendre symbol (a/p)."""
    t = np.full(p, -1, dtype=np.int64)
    t[0] = 0
    x = np.arange(1, p, dtype=np.int64)
    t[(x * x) % p] = 1
    return t


@lru_cache(maxsize=32)
def inv_array(p: int) -> np.ndarray:
    """inv_array(p)[a] = a^-1 mod p (index 0 unused)."""
    t = np.zeros(p, dtype=np.int64)
    t[1:] = [pow(int(a), -1, p) for a in range(1, p)]
    return t


@lru_cache(maxsize=24)
def trace_table(p: int) -> np.ndarray:
    """trace_table(p)[i, j] = trace of y^2 = x^3 - 3i x^2 + j^2 over F_p,
    for the (i, j) with j != 0 and 4i^3 != j^2; 0 elsewhere (unused slots).

    Every entry is Hasse-checked: a^2 <= 4p.
    """
    check_prime(p, min_exclusive=3)
    chi = chi_array(p)
    i = np.arange(p, dtype=np.int64)[:, None]
    j = np.arange(p, dtype=np.int64)[None, :]
    acc = np.zeros((p, p), dtype=np.int64)
    jsq = (j * j) % p
    for x in range(p):
        rhs = (x**3 - 3 * i * x * x + jsq) % p
        acc += chi[rhs]
    tr = -acc
    valid = (j != 0) & ((4 * i**3 - j * j) % p != 0)
    if np.any((tr[valid] ** 2) > 4 * p):
        raise RuntimeError(f"Hasse bound violated in trace table at p={p}")
    tr[~valid] = 0
    return tr


# ---------------------------------------------------------------------------
# Oracle: exact n = p^5 * Phi_hat_p(f) from fibers over the singular cone


def count_xf_batch(p: int, forms: np.ndarray) -> np.ndarray:
    """#X^f(F_p) for every row: zero pairings against the canonical
    representatives of the projectivized singular locus."""
    check_prime(p, min_exclusive=3)
    reps = singular_proj_array(p)
    w = np.array([12, 3, 2, 3, 12], dtype=np.int64)
    wr = ((reps * w) % p).astype(np.float64)  # (#X, 5)
    forms = np.asarray(forms, dtype=np.int64) % p
    out = np.empty(len(forms), dtype=np.int64)
    step = max(1, 25_000_000 // max(len(wr), 1))
    for start in range(0, len(forms), step):
        stop = min(start + step, len(forms))
        # dot products are < 5 p^2 << 2^53, so the BLAS product is exact
        vals = (wr @ forms[start:stop].T.astype(np.float64)).astype(np.int32)
        out[start:stop] = np.count_nonzero(vals % np.int32(p) == 0, axis=0)
    return out


def oracle_n_batch(p: int, forms: np.ndarray, check_fibers: bool = True) -> np.ndarray:
    """n = N0 - (N - N0)/(p - 1) where N0 = #{singular w : [w, f] = 0}.

    With check_fibers the full fiber vector of w -> 12[w, f] over the
    entire singular set is computed and all nonzero fibers are required to
    coincide (the cone property that makes the transform rational) -- the
    debug oracle of record.  The fast path evaluates N0 through the cone
    decomposition {0} u F_p^x * X(F_p) as 1 + (p-1) #X^f (the scalar
    partition of the singular set is verified by cardinality), and still
    asserts the implied divisibility (p-1) | (N - N0).
    """
    check_prime(p, min_exclusive=3)
    n_sing = len(singular_coeff_array(p))
    forms = np.asarray(forms, dtype=np.int64) % p
    if not check_fibers:
        reps = singular_proj_array(p)
        if n_sing != 1 + (p - 1) * len(reps):
            raise RuntimeError("singular cone does not partition into scalar lines")
        n0 = 1 + (p - 1) * count_xf_batch(p, forms)
        rest = n_sing - n0
        if np.any(rest % (p - 1)):
            raise RuntimeError("(p-1) does not divide the off-kernel fiber mass")
        return n0 - rest // (p - 1)

    w = np.array([12, 3, 2, 3, 12], dtype=np.int64)
    ws = ((singular_coeff_array(p) * w) % p).astype(np.float64)  # (N, 5)
    out = np.empty(len(forms), dtype=np.int64)
    step = max(1, 25_000_000 // max(n_sing, 1))
    for start in range(0, len(forms), step):
        stop = min(start + step, len(forms))
        vals = (ws @ forms[start:stop].T.astype(np.float64)).astype(np.int64) % p
        k = stop - start
        offsets = np.arange(k, dtype=np.int64) * p
        np.add(vals, offsets[None, :], out=vals)
        hist = np.bincount(vals.ravel(), minlength=k * p).reshape(k, p)
        n0 = hist[:, 0]
        nonzero = hist[:, 1:]
        if np.any(nonzero.max(axis=1) != nonzero.min(axis=1)):
            raise RuntimeError("nonzero fibers differ: cone property violated")
        rest = n_sing - n0
        if np.any(rest % (p - 1)):
            raise RuntimeError("(p-1) does not divide the off-kernel fiber mass")
        out[start:stop] = n0 - rest // (p - 1)
    return out


# ---------------------------------------------------------------------------
# Closed formula, fully vectorized


def _hessian_cols(cols, p):
    a0, a1, a2, a3, a4 = cols
    return (
        (9 * a1 * a1 - 24 * a0 * a2) % p,
        (12 * a1 * a2 - 72 * a0 * a3) % p,
        (12 * a2 * a2 - 18 * a1 * a3 - 144 * a0 * a4) % p,
        (12 * a2 * a3 - 72 * a1 * a4) % p,
        (9 * a3 * a3 - 24 * a2 * a4) % p,
    )


_EVAL_POINTS = ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2))  # pairwise distinct in P1 for p >= 5


def closed_n_batch(p: int, forms: np.ndarray) -> np.ndarray:
    """Vectorized n = p^5 * Phi_hat_p(f) by the closed-form case list.

    Case dispatch per form: zero; I = J = 0 (triple/quadruple root);
    singular with J != 0 split into the square locus c*q^2 (detected by
    He_f parallel to f, then split/non-split via the residue class of
    disc q) and the rest; semidegenerate; generic via the trace table.
    """
    check_prime(p, min_exclusive=3)
    forms = np.asarray(forms, dtype=np.int64) % p
    cols = tuple(forms[:, k] for k in range(5))
    i, j = _ij_arrays(cols, p)
    dz = (4 * i**3 - j * j) % p == 0  # Disc = 0
    jz = j == 0
    zero = ~np.any(forms, axis=1)
    chi = chi_array(p)
    chi3 = chi12(p)

    n = np.empty(len(forms), dtype=np.int64)

    # generic: Disc != 0, J != 0
    m = ~dz & ~jz
    n[m] = p * trace_table(p)[i[m], j[m]]
    # semidegenerate: Disc != 0, J = 0 (then I != 0)
    m = ~dz & jz
    n[m] = p * chi[(-3 * i[m]) % p]
    # triple or quadruple root: I = J = 0, f != 0
    m = dz & jz & ~zero
    n[m] = p * p * (p - 1)
    n[zero] = p**4 + p**3 - p**2

    # singular with J != 0: types (1^2 11), (1^2 2), (1^2 1^2), (2^2)
    m = dz & ~jz
    if np.any(m):
        sub = tuple(c[m] for c in cols)
        he = _hessian_cols(sub, p)
        prop = np.ones(m.sum(), dtype=bool)
        for a in range(5):
            for b in range(a + 1, 5):
                prop &= (sub[a] * he[b] - sub[b] * he[a]) % p == 0
        nm = np.where(m)[0]
        # not proportional: a lone double root, n = chi12(p) * p
        n[nm[~prop]] = chi3 * p
        if np.any(prop):
            sq = tuple(c[prop] for c in sub)
            hesq = tuple(c[prop] for c in he)
            # f = c*q^2: ratio He/f = 12 c disc(q); chi(c) from a nonzero value
            lam = np.zeros(len(sq[0]), dtype=np.int64)
            seen = np.zeros(len(sq[0]), dtype=bool)
            for a in range(5):
                fresh = ~seen & (sq[a] != 0)
                lam[fresh] = hesq[a][fresh] * inv_array(p)[sq[a][fresh]] % p
                seen |= fresh
            if not seen.all():
                raise RuntimeError("zero form slipped into the square locus")
            val = np.zeros(len(sq[0]), dtype=np.int64)
            vseen = np.zeros(len(sq[0]), dtype=bool)
            for x, y in _EVAL_POINTS:
                v = (
                    sq[0] * x**4 + sq[1] * x**3 * y + sq[2] * x * x * y * y
                    + sq[3] * x * y**3 + sq[4] * y**4
                ) % p
                fresh = ~vseen & (v != 0)
                val[fresh] = v[fresh]
                vseen |= fresh
            if not vseen.all():
                raise RuntimeError("quartic vanished at five projective points")
            chi_d = chi[lam] * chi[np.int64(12 % p)] * chi[val]
            if np.any(chi_d == 0):
                raise RuntimeError("vanishing proportionality scalar on the square locus")
            nsq = nm[prop]
            n[nsq[chi_d == 1]] = -chi3 * p * (p - 1)  # split: (1^2 1^2)
            n[nsq[chi_d == -1]] = chi3 * p * (p + 1)  # non-split: (2^2)

    return n


# ---------------------------------------------------------------------------
# Brute scheme counts, vectorized over forms


def _p1_points(p: int):
    return [(1, t) for t in range(p)] + [(0, 1)]


def _p2_array(p: int) -> np.ndarray:
    return np.array(
        [(1, a, b) for a in range(p) for b in range(p)]
        + [(0, 1, b) for b in range(p)]
        + [(0, 0, 1)],
        dtype=np.int64,
    )


def scheme_counts_batch(
    p: int, forms: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Brute (#X_{1^2 2}, #X_{2^2}, #X_{1^2 1^2}) for every row of forms,
    by full enumeration of the source spaces (vectorized per line l)."""
    check_prime(p, min_exclusive=3)
    forms = np.asarray(forms, dtype=np.int64) % p
    total = len(forms)
    p1 = _p1_points(p)
    p2 = _p2_array(p)
    w = np.array([12, 3, 2, 3, 12], dtype=np.int64)

    t0, t1, t2 = p2.T
    q2rows = (
        np.stack(
            [t0 * t0, 2 * t0 * t1, t1 * t1 + 2 * t0 * t2, 2 * t1 * t2, t2 * t2],
            axis=1,
        )
        * w
    ) % p

    pairs = []
    sqs = [(s0 * s0, 2 * s0 * s1, s1 * s1) for s0, s1 in p1]
    for u in sqs:
        for v in sqs:
            pairs.append(
                [
                    u[0] * v[0],
                    u[0] * v[1] + u[1] * v[0],
                    u[0] * v[2] + u[1] * v[1] + u[2] * v[0],
                    u[1] * v[2] + u[2] * v[1],
                    u[2] * v[2],
                ]
            )
    l12rows = (np.array(pairs, dtype=np.int64) * w) % p

    x122 = np.zeros(total, dtype=np.int64)
    x22 = np.zeros(total, dtype=np.int64)
    x1212 = np.zeros(total, dtype=np.int64)
    step = max(1, 2_000_000 // (p * p + p + 1))
    for start in range(0, total, step):
        stop = min(start + step, total)
        ft = forms[start:stop].T
        f0, f1, f2, f3, f4 = ft
        acc = np.zeros(stop - start, dtype=np.int64)
        for s0, s1 in p1:
            c0 = (12 * f0 * s0 * s0 + 6 * f1 * s0 * s1 + 2 * f2 * s1 * s1) % p
            c1 = (3 * f1 * s0 * s0 + 4 * f2 * s0 * s1 + 3 * f3 * s1 * s1) % p
            c2 = (2 * f2 * s0 * s0 + 6 * f3 * s0 * s1 + 12 * f4 * s1 * s1) % p
            vals = (p2 @ np.stack([c0, c1, c2])) % p
            acc += np.count_nonzero(vals == 0, axis=0)
        x122[start:stop] = acc
        x22[start:stop] = np.count_nonzero((q2rows @ ft) % p == 0, axis=0)
        x1212[start:stop] = np.count_nonzero((l12rows @ ft) % p == 0, axis=0)
    return x122, x22, x1212


# ---------------------------------------------------------------------------
# Coefficient boxes over Z


def box_coeff_array(r: int) -> np.ndarray:
    """All (2r+1)^5 integer coefficient rows with |a_i| <= r."""
    side = 2 * r + 1
    idx = np.arange(side**5, dtype=np.int64)
    cols = [((idx // side ** (4 - k)) % side) - r for k in range(5)]
    return np.stack(cols, axis=1)
