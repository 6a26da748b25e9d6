"""Pure numpy implementations of the hot loops (fallback for ``_kernels``)."""

from __future__ import annotations

import numpy as np

BIG = 1 << 60


def minplus_merge(a: np.ndarray, b: np.ndarray, cap: int):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    la, lb = a.shape[0], b.shape[0]
    lc = min(la + lb - 1, cap + 1)
    c = np.full(lc, BIG, dtype=np.int64)
    s = np.zeros(lc, dtype=np.int32)
    # sweep j ascending with strict improvement -> smallest minimizing j wins
    for j in range(min(lb, lc)):
        hi = min(lc, j + la)
        cand = a[: hi - j] + b[j]
        better = cand < c[j:hi]
        c[j:hi] = np.where(better, cand, c[j:hi])
        s[j:hi] = np.where(better, j, s[j:hi])
    return c, s


def path_dp(cost: np.ndarray, agree: np.ndarray, budget: int):
    cost = np.asarray(cost, dtype=np.int64)
    agree = np.asarray(agree, dtype=np.int8)
    n = cost.shape[0]
    L = budget + 1
    choice = np.zeros((n, 2, L), dtype=np.int8)
    nxt = np.repeat(cost[n - 1][:, None], L, axis=1)
    for i in range(n - 2, -1, -1):
        cur = np.empty((2, L), dtype=np.int64)
        for si, s_val in ((0, 1), (1, -1)):
            # candidate child labels in preference order +1, -1
            cands = []
            for t_val in (1, -1):
                tj = 0 if t_val == 1 else 1
                row = nxt[tj]
                if t_val != s_val * agree[i]:
                    shifted = np.empty(L, dtype=np.int64)
                    shifted[0] = BIG
                    shifted[1:] = row[:-1]
                    cands.append(shifted)
                else:
                    cands.append(row)
            take_minus = cands[1] < cands[0]
            cur[si] = cost[i, si] + np.where(take_minus, cands[1], cands[0])
            choice[i, si] = take_minus
        nxt = cur
    return nxt, choice


def enumerate_min(m, indptr, nbr, neg, lin, inw, require_split, fix_first, weight=1, chunk_bits=16):
    indptr = np.asarray(indptr, dtype=np.int64)
    nbr = np.asarray(nbr, dtype=np.int64)
    neg = np.asarray(neg, dtype=np.int8)
    lin = np.asarray(lin, dtype=np.int64)
    inw = np.asarray(inw, dtype=bool)
    src = np.repeat(np.arange(m), np.diff(indptr))
    keep = src < nbr
    eu, ev, en = src[keep], nbr[keep], neg[keep].astype(np.int64)
    nw = int(inw.sum())
    total = 1 << m
    step = 2 if fix_first else 1
    best, best_code, found = -1, -1, False
    chunk = 1 << chunk_bits
    shifts = np.arange(m, dtype=np.int64)
    for start in range(0, total, chunk * step):
        codes = np.arange(start, min(total, start + chunk * step), step, dtype=np.int64)
        bits = (codes[:, None] >> shifts[None, :]) & 1
        obj = weight * (bits[:, eu] ^ bits[:, ev] ^ en[None, :]).sum(axis=1) + bits @ lin
        if require_split:
            cw = bits[:, inw].sum(axis=1)
            obj = np.where((cw == 0) | (cw == nw), BIG, obj)
        i = int(np.argmin(obj))
        if obj[i] >= BIG:
            continue
        if not found or obj[i] < best:
            best, best_code, found = int(obj[i]), int(codes[i]), True
    return best, best_code
