"""Hot numeric kernels.

Each kernel has a loop implementation compiled with numba and a vectorized
pure-numpy implementation.  Both are always importable (``*_loops`` and
``*_numpy``); the public names dispatch to one of them.  Set the environment
variable ``LATMEAS_NO_NUMBA=1`` to force the numpy path, e.g. on platforms
without numba or when debugging.  Results are identical on both paths.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("LATMEAS_NO_NUMBA", "").lower() not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


def _njit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# transitive closure


@_njit
def _closure_loops(adj):
    n = adj.shape[0]
    r = adj.copy()
    for i in range(n):
        r[i, i] = True
    for k in range(n):
        for i in range(n):
            if r[i, k]:
                for j in range(n):
                    if r[k, j]:
                        r[i, j] = True
    return r


def _closure_numpy(adj):
    r = adj.copy()
    np.fill_diagonal(r, True)
    for k in range(r.shape[0]):
        r |= np.outer(r[:, k], r[k, :])
    return r


# ---------------------------------------------------------------------------
# meet / join tables from an order relation


@_njit
def _bound_tables_loops(leq):
    """Return (meet, join) with -1 where no unique bound exists."""
    n = leq.shape[0]
    below = np.zeros(n, np.int64)
    for u in range(n):
        for v in range(n):
            if leq[v, u]:
                below[u] += 1
    join = np.full((n, n), -1, np.int64)
    meet = np.full((n, n), -1, np.int64)
    for i in range(n):
        for j in range(i, n):
            # join: the upper bound with fewest elements below it, then verify
            cand = -1
            for u in range(n):
                if leq[i, u] and leq[j, u]:
                    if cand < 0 or below[u] < below[cand]:
                        cand = u
            if cand >= 0:
                ok = True
                for u in range(n):
                    if leq[i, u] and leq[j, u] and not leq[cand, u]:
                        ok = False
                        break
                if ok:
                    join[i, j] = cand
                    join[j, i] = cand
            cand = -1
            for u in range(n):
                if leq[u, i] and leq[u, j]:
                    if cand < 0 or below[u] > below[cand]:
                        cand = u
            if cand >= 0:
                ok = True
                for u in range(n):
                    if leq[u, i] and leq[u, j] and not leq[u, cand]:
                        ok = False
                        break
                if ok:
                    meet[i, j] = cand
                    meet[j, i] = cand
    return meet, join


def _bound_tables_numpy(leq):
    n = leq.shape[0]
    below = leq.sum(axis=0).astype(np.int64)
    big = n + 1
    join = np.full((n, n), -1, np.int64)
    meet = np.full((n, n), -1, np.int64)
    geq = leq.T
    for i in range(n):
        ub = leq[i][None, :] & leq  # row j: common upper bounds of i and j
        cand = np.argmin(np.where(ub, below[None, :], big), axis=1)
        ok = ub.any(axis=1) & np.all(~ub | leq[cand], axis=1)
        join[i] = np.where(ok, cand, -1)
        lb = geq[i][None, :] & geq  # row j: common lower bounds
        cand = np.argmax(np.where(lb, below[None, :], -1), axis=1)
        ok = lb.any(axis=1) & np.all(~lb | geq[cand], axis=1)
        meet[i] = np.where(ok, cand, -1)
    return meet, join


# ---------------------------------------------------------------------------
# inclusion-exclusion relation rows
#
# For a subset S of elements let m(S) = sum over nonempty T in S of
# (-1)^(|T|+1) e_{meet T}.  Then m(S + {j}) = m(S) + e_j - push_j(m(S)) where
# push_j moves the coefficient at y to meet(y, j).  The relation row of S is
# e_{join S} - m(S).  Rows are produced level by level (|S| = 2, 3, ...) and
# lexicographically inside a level.


@_njit
def _ie_rows_loops(meet, join, max_k, total):
    n = meet.shape[0]
    rows = np.zeros((total, n), np.int64)
    masks = np.zeros(total, np.int64)
    # level-1 state
    m = n
    vec = np.zeros((m, n), np.int64)
    last = np.zeros(m, np.int64)
    jacc = np.zeros(m, np.int64)
    macc = np.zeros(m, np.int64)
    for i in range(n):
        vec[i, i] = 1
        last[i] = i
        jacc[i] = i
        macc[i] = 1 << i
    out = 0
    for level in range(2, max_k + 1):
        cnt = 0
        for p in range(m):
            cnt += n - 1 - last[p]
        nvec = np.zeros((cnt, n), np.int64)
        nlast = np.zeros(cnt, np.int64)
        njacc = np.zeros(cnt, np.int64)
        nmacc = np.zeros(cnt, np.int64)
        c = 0
        for p in range(m):
            for j in range(last[p] + 1, n):
                for y in range(n):
                    v = vec[p, y]
                    if v != 0:
                        nvec[c, y] += v
                        nvec[c, meet[y, j]] -= v
                nvec[c, j] += 1
                nlast[c] = j
                njacc[c] = join[jacc[p], j]
                nmacc[c] = macc[p] | (1 << j)
                for y in range(n):
                    rows[out, y] = -nvec[c, y]
                rows[out, njacc[c]] += 1
                masks[out] = nmacc[c]
                out += 1
                c += 1
        vec = nvec
        last = nlast
        jacc = njacc
        macc = nmacc
        m = cnt
    return rows, masks


def _ie_rows_numpy(meet, join, max_k, total):
    n = meet.shape[0]
    vec = np.eye(n, dtype=np.int64)
    last = np.arange(n, dtype=np.int64)
    jacc = np.arange(n, dtype=np.int64)
    macc = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    all_rows = []
    all_masks = []
    for _level in range(2, max_k + 1):
        counts = n - 1 - last
        par = np.repeat(np.arange(len(last)), counts)
        if len(par) == 0:
            break
        # child index j runs from last[p]+1 to n-1 for each parent p
        starts = np.cumsum(counts) - counts
        j = np.arange(len(par)) - np.repeat(starts, counts) + np.repeat(last + 1, counts)
        pv = vec[par]
        nvec = pv.copy()
        targets = meet[:, j].T  # (children, n): meet(y, j_child)
        np.add.at(nvec, (np.arange(len(par))[:, None], targets), -pv)
        nvec[np.arange(len(par)), j] += 1
        njacc = join[jacc[par], j]
        rows = -nvec
        rows[np.arange(len(par)), njacc] += 1
        all_rows.append(rows)
        all_masks.append(macc[par] | np.left_shift(np.int64(1), j))
        vec, last, jacc, macc = nvec, j, njacc, all_masks[-1]
    if not all_rows:
        return np.zeros((0, n), np.int64), np.zeros(0, np.int64)
    return np.vstack(all_rows), np.concatenate(all_masks)


# ---------------------------------------------------------------------------
# brute-force 2-valued points


@_njit
def _valuations_loops(meet, join, bottom, top):
    n = meet.shape[0]
    found = []
    bits = np.zeros(n, np.int64)
    for mask in range(1 << n):
        for i in range(n):
            bits[i] = (mask >> i) & 1
        if bits[bottom] != 0 or bits[top] != 1:
            continue
        ok = True
        for i in range(n):
            if not ok:
                break
            for j in range(i + 1, n):
                if bits[meet[i, j]] != (bits[i] & bits[j]) or bits[join[i, j]] != (bits[i] | bits[j]):
                    ok = False
                    break
        if ok:
            found.append(mask)
    out = np.zeros((len(found), n), np.uint8)
    for r in range(len(found)):
        for i in range(n):
            out[r, i] = (found[r] >> i) & 1
    return out


def _valuations_numpy(meet, join, bottom, top, chunk=1 << 14):
    n = meet.shape[0]
    iu, ju = np.triu_indices(n, 1)
    mij = meet[iu, ju]
    jij = join[iu, ju]
    keep = []
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = ((masks[:, None] >> np.arange(n)) & 1).astype(np.uint8)
        ok = (bits[:, bottom] == 0) & (bits[:, top] == 1)
        bi, bj = bits[:, iu], bits[:, ju]
        ok &= np.all(bits[:, mij] == (bi & bj), axis=1)
        ok &= np.all(bits[:, jij] == (bi | bj), axis=1)
        keep.append(bits[ok])
    return np.vstack(keep) if keep else np.zeros((0, n), np.uint8)


# ---------------------------------------------------------------------------
# unit propagation for partial valuations (-1 = unknown)


@_njit
def _propagate_loops(vals, meet, join, leq):
    n = vals.shape[0]
    v = vals.copy()
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                vi = v[i]
                vj = v[j]
                # order: 1 propagates up, 0 propagates down
                if leq[i, j]:
                    if vi == 1:
                        if vj == 0:
                            return False, v
                        if vj == -1:
                            v[j] = 1
                            changed = True
                    elif vj == 0 and vi == -1:
                        v[i] = 0
                        changed = True
                    continue
                if j < i:
                    continue
                m = meet[i, j]
                u = join[i, j]
                vm = v[m]
                vu = v[u]
                if vi == 1 and vj == 1:
                    if vm == 0:
                        return False, v
                    if vm == -1:
                        v[m] = 1
                        changed = True
                if vi == 0 and vj == 0:
                    if vu == 1:
                        return False, v
                    if vu == -1:
                        v[u] = 0
                        changed = True
                if vm == 0:
                    if vi == 1 and vj == -1:
                        v[j] = 0
                        changed = True
                    elif vj == 1 and vi == -1:
                        v[i] = 0
                        changed = True
                if vu == 1:
                    if vi == 0 and vj == -1:
                        v[j] = 1
                        changed = True
                    elif vj == 0 and vi == -1:
                        v[i] = 1
                        changed = True
    return True, v


def _propagate_numpy(vals, meet, join, leq):
    v = vals.copy()
    while True:
        before = v.copy()
        one = v == 1
        zero = v == 0
        up = leq[one].any(axis=0)  # above some 1
        down = leq[:, zero].any(axis=1)  # below some 0
        if (up & zero).any() or (down & one).any():
            return False, v
        both1 = one[:, None] & one[None, :]
        both0 = zero[:, None] & zero[None, :]
        force1 = np.zeros_like(one)
        force0 = np.zeros_like(one)
        force1[meet[both1]] = True
        force0[join[both0]] = True
        force1 |= up
        force0 |= down
        mz = zero[meet]  # meet(i,j) known 0
        ju = one[join]  # join(i,j) known 1
        # meet 0 and i = 1 forces j = 0; join 1 and i = 0 forces j = 1
        force0 |= (mz & one[:, None]).any(axis=0)
        force1 |= (ju & zero[:, None]).any(axis=0)
        if (force1 & force0).any() or (force1 & zero).any() or (force0 & one).any():
            return False, v
        v[force1] = 1
        v[force0] = 0
        if np.array_equal(v, before):
            return True, v


# ---------------------------------------------------------------------------
# dispatch

if USE_NUMBA:
    closure = _closure_loops
    bound_tables = _bound_tables_loops
    _ie_rows = _ie_rows_loops
    valuations = _valuations_loops
    propagate = _propagate_loops
else:
    closure = _closure_numpy
    bound_tables = _bound_tables_numpy
    _ie_rows = _ie_rows_numpy
    valuations = _valuations_numpy
    propagate = _propagate_numpy


def ie_row_count(n: int, max_k: int) -> int:
    from math import comb

    return sum(comb(n, s) for s in range(2, max_k + 1))


def ie_rows(meet: np.ndarray, join: np.ndarray, max_k: int, *, impl=None):
    """Inclusion-exclusion relation rows for all subsets of size 2..max_k.

    Returns ``(rows, masks)``: ``rows[r]`` is the integer coefficient vector of
    the relation for the subset encoded by the bitmask ``masks[r]``.
    """
    meet = np.ascontiguousarray(meet, dtype=np.int64)
    join = np.ascontiguousarray(join, dtype=np.int64)
    n = meet.shape[0]
    max_k = min(max_k, n)
    total = ie_row_count(n, max_k)
    fn = impl or _ie_rows
    if total == 0:
        return np.zeros((0, n), np.int64), np.zeros(0, np.int64)
    return fn(meet, join, max_k, total)
