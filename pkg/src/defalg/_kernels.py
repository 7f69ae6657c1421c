"""Hot numeric loops: mod-p row reduction and exhaustive oracle scans.

Every kernel exists twice, once compiled with numba and once as plain
numpy.  The active backend is chosen at import time from the environment
variable ``DEFALG_BACKEND`` ("numba" or "numpy"); the default is numba
when it imports cleanly.  Both variants are exported under explicit
names so tests and benchmarks can compare them directly.

Conventions shared by all scan kernels: a candidate is an integer index
whose base-p digits fill the unknown table entries, scanned in ascending
order over a half-open range, so results are deterministic and
partitionable.  All arrays are int64 with entries already reduced mod p;
p is small enough that products fit comfortably in int64.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    _HAS_NUMBA = False

_NJIT = {"parallel": False, "fastmath": False, "cache": True}


# ---------------------------------------------------------------------------
# reduced row echelon form mod p


def _rref_modp_py(a, p):
    r = a.copy() % p
    nrows, ncols = r.shape
    piv = np.empty(min(nrows, ncols), np.int64)
    rank = 0
    for col in range(ncols):
        pr = -1
        for row in range(rank, nrows):
            if r[row, col] % p != 0:
                pr = row
                break
        if pr < 0:
            continue
        if pr != rank:
            tmp = r[pr].copy()
            r[pr] = r[rank]
            r[rank] = tmp
        inv = 1
        x = r[rank, col] % p
        e = p - 2
        b = x
        while e > 0:
            if e & 1:
                inv = (inv * b) % p
            b = (b * b) % p
            e >>= 1
        for c in range(ncols):
            r[rank, c] = (r[rank, c] * inv) % p
        for row in range(nrows):
            if row != rank and r[row, col] % p != 0:
                f = r[row, col] % p
                for c in range(ncols):
                    r[row, c] = (r[row, c] - f * r[rank, c]) % p
        piv[rank] = col
        rank += 1
        if rank == nrows:
            break
    return r, piv, rank


def rref_modp_numpy(a, p):
    """RREF of ``a`` mod p: (reduced matrix, pivot columns, rank)."""
    a = np.asarray(a, np.int64)
    if a.size == 0:
        return a % p if a.size else a.copy(), np.empty(0, np.int64), 0
    r = a.copy() % p
    nrows, ncols = r.shape
    piv = []
    rank = 0
    for col in range(ncols):
        nz = np.nonzero(r[rank:, col])[0]
        if nz.size == 0:
            continue
        pr = rank + int(nz[0])
        if pr != rank:
            r[[rank, pr]] = r[[pr, rank]]
        r[rank] = (r[rank] * pow(int(r[rank, col]), p - 2, p)) % p
        mask = np.nonzero(r[:, col])[0]
        mask = mask[mask != rank]
        if mask.size:
            r[mask] = (r[mask] - np.outer(r[mask, col], r[rank])) % p
        piv.append(col)
        rank += 1
        if rank == nrows:
            break
    return r, np.array(piv, np.int64), rank


# ---------------------------------------------------------------------------
# oracle scan: associativity filter for square-zero multiplication tables
#
# Candidate n encodes a symmetric table c(e_i, e_j) in J for non-unit basis
# pairs, one base-p digit per J-coordinate, pairs in the order given by
# pair_i/pair_j.  A candidate survives when the table satisfies the
# associativity condition of the would-be extension algebra:
#   act[k] @ c[i,j] + sum_m mul[i,j,m] c[m,k]
#     == act[i] @ c[j,k] + sum_m mul[j,k,m] c[i,m]
# for all basis triples.  It is enough to check k >= i: swapping (i,k)
# negates the residual.


def _scan_assoc_py(mul, act, pair_i, pair_j, p, lo, hi):
    s = mul.shape[0]
    t = act.shape[1]
    npairs = pair_i.shape[0]
    out = np.empty(hi - lo, np.int64)
    nout = 0
    c = np.zeros((s, s, t), np.int64)
    for n in range(lo, hi):
        m = n
        for q in range(npairs):
            i = pair_i[q]
            j = pair_j[q]
            for l in range(t):
                d = m % p
                m //= p
                c[i, j, l] = d
                c[j, i, l] = d
        ok = True
        for i in range(1, s):
            if not ok:
                break
            for j in range(1, s):
                if not ok:
                    break
                for k in range(i, s):
                    bad = False
                    for l in range(t):
                        v = 0
                        for w in range(s):
                            v += mul[i, j, w] * c[w, k, l] - mul[j, k, w] * c[i, w, l]
                        for w in range(t):
                            v += act[k, l, w] * c[i, j, w] - act[i, l, w] * c[j, k, w]
                        if v % p != 0:
                            bad = True
                            break
                    if bad:
                        ok = False
                        break
        if ok:
            out[nout] = n
            nout += 1
    return out[:nout]


def scan_assoc_numpy(mul, act, pair_i, pair_j, p, lo, hi, batch=4096):
    s = mul.shape[0]
    t = act.shape[1]
    npairs = pair_i.shape[0]
    ndig = npairs * t
    pows = p ** np.arange(ndig, dtype=np.int64)
    chunks = []
    for start in range(lo, hi, batch):
        stop = min(start + batch, hi)
        ns = np.arange(start, stop, dtype=np.int64)
        dig = (ns[:, None] // pows[None, :]) % p
        dig = dig.reshape(len(ns), npairs, t)
        c = np.zeros((len(ns), s, s, t), np.int64)
        c[:, pair_i, pair_j, :] = dig
        c[:, pair_j, pair_i, :] = dig
        res = (
            np.einsum("ijm,Bmkl->Bijkl", mul, c)
            + np.einsum("klm,Bijm->Bijkl", act, c)
            - np.einsum("jkm,Biml->Bijkl", mul, c)
            - np.einsum("ilm,Bjkm->Bijkl", act, c)
        ) % p
        ok = ~np.any(res.reshape(len(ns), -1), axis=1)
        chunks.append(ns[ok])
    if not chunks:
        return np.empty(0, np.int64)
    return np.concatenate(chunks)


# ---------------------------------------------------------------------------
# oracle scan: Leibniz filter for candidate derivations
#
# Candidate n encodes a k-linear map D on the full algebra basis, digits
# D[i, l] for i over basis elements and l over J-coordinates.  Survivors
# satisfy D(e_i e_j) = e_i D(e_j) + e_j D(e_i) on every basis pair and
# vanish on the listed vectors (images of base-ring generators).


def _scan_linmap_py(mul, act, kill, p, lo, hi):
    s = mul.shape[0]
    t = act.shape[1]
    nkill = kill.shape[0]
    out = np.empty(hi - lo, np.int64)
    nout = 0
    D = np.zeros((s, t), np.int64)
    for n in range(lo, hi):
        m = n
        for i in range(s):
            for l in range(t):
                D[i, l] = m % p
                m //= p
        ok = True
        for b in range(nkill):
            for l in range(t):
                v = 0
                for i in range(s):
                    v += kill[b, i] * D[i, l]
                if v % p != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for i in range(s):
                if not ok:
                    break
                for j in range(i, s):
                    bad = False
                    for l in range(t):
                        v = 0
                        for w in range(s):
                            v += mul[i, j, w] * D[w, l]
                        for w in range(t):
                            v -= act[i, l, w] * D[j, w] + act[j, l, w] * D[i, w]
                        if v % p != 0:
                            bad = True
                            break
                    if bad:
                        ok = False
                        break
        if ok:
            out[nout] = n
            nout += 1
    return out[:nout]


def scan_linmap_numpy(mul, act, kill, p, lo, hi, batch=4096):
    s = mul.shape[0]
    t = act.shape[1]
    ndig = s * t
    pows = p ** np.arange(ndig, dtype=np.int64)
    chunks = []
    for start in range(lo, hi, batch):
        stop = min(start + batch, hi)
        ns = np.arange(start, stop, dtype=np.int64)
        D = ((ns[:, None] // pows[None, :]) % p).reshape(len(ns), s, t)
        res = (
            np.einsum("ijm,Bml->Bijl", mul, D)
            - np.einsum("ilm,Bjm->Bijl", act, D)
            - np.einsum("jlm,Bim->Bijl", act, D)
        ) % p
        ok = ~np.any(res.reshape(len(ns), -1), axis=1)
        if kill.shape[0]:
            kres = np.einsum("bi,Bil->Bbl", kill, D) % p
            ok &= ~np.any(kres.reshape(len(ns), -1), axis=1)
        chunks.append(ns[ok])
    if not chunks:
        return np.empty(0, np.int64)
    return np.concatenate(chunks)


# ---------------------------------------------------------------------------
# oracle scan: polynomial relation filter for candidate generator images
#
# Candidate n encodes, for each of nv generators, a vector
#   img[v] = base[v] + sum_d digit[v,d] * span[d]
# in a structure algebra with multiplication tensor mulc (basis element 0
# is the unit).  Survivors make every encoded relation vanish.  A
# relation is a sum of terms coefv[term] * prod_v img[v]^exps[term, v]
# where coefv[term] is a *vector* coefficient in the target algebra;
# scalar coefficients c are encoded as c * unit, and contributions of
# generators with forced images are folded into coefv by the caller.


def _scan_polyrel_py(mulc, base, span, rel_ptr, coefv, exps, p, lo, hi):
    sc = mulc.shape[0]
    nv = base.shape[0]
    nspan = span.shape[0]
    nrel = rel_ptr.shape[0] - 1
    out = np.empty(hi - lo, np.int64)
    nout = 0
    img = np.zeros((nv, sc), np.int64)
    for n in range(lo, hi):
        m = n
        for v in range(nv):
            for a in range(sc):
                img[v, a] = base[v, a]
            for d in range(nspan):
                dig = m % p
                m //= p
                if dig != 0:
                    for a in range(sc):
                        img[v, a] = (img[v, a] + dig * span[d, a]) % p
        ok = True
        for r in range(nrel):
            acc = np.zeros(sc, np.int64)
            for term in range(rel_ptr[r], rel_ptr[r + 1]):
                w = coefv[term].copy()
                for v in range(nv):
                    for _ in range(exps[term, v]):
                        nw = np.zeros(sc, np.int64)
                        for a in range(sc):
                            if w[a] == 0:
                                continue
                            for b in range(sc):
                                if img[v, b] == 0:
                                    continue
                                f = w[a] * img[v, b]
                                for kk in range(sc):
                                    nw[kk] = (nw[kk] + f * mulc[a, b, kk]) % p
                        w = nw
                for a in range(sc):
                    acc[a] = (acc[a] + w[a]) % p
            for a in range(sc):
                if acc[a] % p != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out[nout] = n
            nout += 1
    return out[:nout]


def scan_polyrel_numpy(mulc, base, span, rel_ptr, coefv, exps, p, lo, hi, batch=2048):
    sc = mulc.shape[0]
    nv = base.shape[0]
    nspan = span.shape[0]
    nrel = rel_ptr.shape[0] - 1
    ndig = nv * nspan
    pows = p ** np.arange(ndig, dtype=np.int64)
    chunks = []
    for start in range(lo, hi, batch):
        stop = min(start + batch, hi)
        ns = np.arange(start, stop, dtype=np.int64)
        nb = len(ns)
        dig = ((ns[:, None] // pows[None, :]) % p).reshape(nb, nv, nspan)
        img = (base[None, :, :] + np.einsum("Bvd,da->Bva", dig, span)) % p
        ok = np.ones(nb, bool)
        for r in range(nrel):
            acc = np.zeros((nb, sc), np.int64)
            for term in range(rel_ptr[r], rel_ptr[r + 1]):
                w = np.tile(coefv[term], (nb, 1))
                for v in range(nv):
                    for _ in range(int(exps[term, v])):
                        w = np.einsum("Ba,Bb,abk->Bk", w, img[:, v, :], mulc) % p
                acc = (acc + w) % p
            ok &= ~np.any(acc, axis=1)
        chunks.append(ns[ok])
    if not chunks:
        return np.empty(0, np.int64)
    return np.concatenate(chunks)


# ---------------------------------------------------------------------------
# backend wiring

if _HAS_NUMBA:
    _rref_modp_numba_impl = numba.njit(**_NJIT)(_rref_modp_py)
    scan_assoc_numba = numba.njit(**_NJIT)(_scan_assoc_py)
    scan_linmap_numba = numba.njit(**_NJIT)(_scan_linmap_py)
    scan_polyrel_numba = numba.njit(**_NJIT)(_scan_polyrel_py)

    def rref_modp_numba(a, p):
        a = np.asarray(a, np.int64)
        if a.size == 0:
            return a.copy(), np.empty(0, np.int64), 0
        r, piv, rank = _rref_modp_numba_impl(a, p)
        return r, piv[:rank], rank

else:  # pragma: no cover
    rref_modp_numba = None
    scan_assoc_numba = None
    scan_linmap_numba = None
    scan_polyrel_numba = None


def _pick_backend() -> str:
    want = os.environ.get("DEFALG_BACKEND", "").strip().lower()
    if want in ("numba", "numpy"):
        if want == "numba" and not _HAS_NUMBA:
            raise ImportError("DEFALG_BACKEND=numba but numba is not importable")
        return want
    return "numba" if _HAS_NUMBA else "numpy"


BACKEND = _pick_backend()

if BACKEND == "numba":
    rref_modp = rref_modp_numba
    scan_assoc = scan_assoc_numba
    scan_linmap = scan_linmap_numba
    scan_polyrel = scan_polyrel_numba
else:
    rref_modp = rref_modp_numpy
    scan_assoc = scan_assoc_numpy
    scan_linmap = scan_linmap_numpy
    scan_polyrel = scan_polyrel_numpy


def available_backends():
    return ("numba", "numpy") if _HAS_NUMBA else ("numpy",)
