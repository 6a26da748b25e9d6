# cython: language_level=3
"""Compiled hot loops. Semantics must match ``_pykernels`` exactly, ties included."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, int8_t

cnp.import_array()

cdef int64_t BIG = 1 << 60


def minplus_merge(const int64_t[::1] a, const int64_t[::1] b, Py_ssize_t cap):
    """c[k] = min_j a[k-j] + b[j]; split[k] = smallest minimizing j."""
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    cdef Py_ssize_t lc = la + lb - 1
    if lc > cap + 1:
        lc = cap + 1
    c_arr = np.empty(lc, dtype=np.int64)
    s_arr = np.empty(lc, dtype=np.int32)
    cdef int64_t[::1] c = c_arr
    cdef int32_t[::1] s = s_arr
    cdef Py_ssize_t k, j, jlo, jhi
    cdef int64_t best, val
    cdef int32_t arg
    for k in range(lc):
        jlo = k - la + 1
        if jlo < 0:
            jlo = 0
        jhi = k if k < lb - 1 else lb - 1
        best = BIG
        arg = <int32_t>jlo
        for j in range(jlo, jhi + 1):
            val = a[k - j] + b[j]
            if val < best:
                best = val
                arg = <int32_t>j
        c[k] = best
        s[k] = arg
    return c_arr, s_arr


def path_dp(const int64_t[:, ::1] cost, const int8_t[::1] agree, Py_ssize_t budget):
    """Suffix DP along a path; see ``_pykernels.path_dp``."""
    cdef Py_ssize_t n = cost.shape[0]
    cdef Py_ssize_t L = budget + 1
    choice_arr = np.zeros((n, 2, L), dtype=np.int8)
    cdef int8_t[:, :, ::1] choice = choice_arr
    cur_arr = np.empty((2, L), dtype=np.int64)
    nxt_arr = np.empty((2, L), dtype=np.int64)
    cdef int64_t[:, ::1] cur = cur_arr
    cdef int64_t[:, ::1] nxt = nxt_arr
    cdef int64_t[:, ::1] tmp
    cdef Py_ssize_t i, k, si, sj
    cdef int s_val, t_val
    cdef int64_t best, val
    cdef int8_t arg
    for si in range(2):
        for k in range(L):
            nxt[si, k] = cost[n - 1, si]
    for i in range(n - 2, -1, -1):
        for si in range(2):
            s_val = 1 if si == 0 else -1
            for k in range(L):
                best = BIG
                arg = 0
                for sj in range(2):
                    t_val = 1 if sj == 0 else -1
                    if t_val != s_val * agree[i]:
                        if k == 0:
                            continue
                        val = nxt[sj, k - 1]
                    else:
                        val = nxt[sj, k]
                    if val < best:
                        best = val
                        arg = <int8_t>sj
                cur[si, k] = cost[i, si] + best
                choice[i, si, k] = arg
        tmp = cur
        cur = nxt
        nxt = tmp
    return np.asarray(nxt).copy(), choice_arr


def enumerate_min(
    Py_ssize_t m,
    const int64_t[::1] indptr,
    const int64_t[::1] nbr,
    const int8_t[::1] neg,
    const int64_t[::1] lin,
    const int8_t[::1] inw,
    bint require_split,
    bint fix_first,
    int64_t weight=1,
):
    """Minimize weight * sum_e [bit_u ^ bit_v ^ neg_e] + sum_i lin_i * bit_i over bit codes.

    Gray-code walk; ties go to the smallest integer code. Returns
    ``(best_value, best_code)`` or ``(-1, -1)`` when no code is feasible.
    """
    cdef Py_ssize_t free = m - 1 if fix_first else m
    cdef Py_ssize_t offset = 1 if fix_first else 0
    cdef int64_t total = (<int64_t>1) << free
    cdef int64_t code = 0
    cdef int64_t obj = 0
    cdef int64_t best = -1
    cdef int64_t best_code = -1
    cdef bint found = False
    cdef Py_ssize_t nw = 0, cntw = 0
    cdef Py_ssize_t i, p, v, bit
    cdef int64_t g, t
    cdef int bi, bv
    for i in range(m):
        if inw[i]:
            nw += 1
    # all-zero code: objective counts edges with neg set (each counted from both ends)
    for i in range(m):
        for p in range(indptr[i], indptr[i + 1]):
            if neg[p]:
                obj += 1
    obj = (obj // 2) * weight
    for g in range(total):
        if g > 0:
            t = g
            bit = 0
            while (t & 1) == 0:
                t >>= 1
                bit += 1
            i = bit + offset
            bi = (code >> i) & 1
            for p in range(indptr[i], indptr[i + 1]):
                v = nbr[p]
                bv = (code >> v) & 1
                if (bi ^ bv ^ neg[p]) != 0:
                    obj -= weight
                else:
                    obj += weight
            if bi:
                obj -= lin[i]
                if inw[i]:
                    cntw -= 1
            else:
                obj += lin[i]
                if inw[i]:
                    cntw += 1
            code ^= (<int64_t>1) << i
        if require_split and (cntw == 0 or cntw == nw):
            continue
        if not found or obj < best or (obj == best and code < best_code):
            best = obj
            best_code = code
            found = True
    return best, best_code
