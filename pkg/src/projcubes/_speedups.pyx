# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: equitable partition refinement and extension assignment search.

Mirrors _pykernels exactly; outputs must match the pure implementation byte for byte.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memset

import numpy as np
cimport numpy as cnp

cnp.import_array()

IMPLEMENTATION = "compiled"


def refine_partition(object indptr_o, object indices_o, object order_o, object pos_o, object cstart_o, object seeds_o):
    """In-place equitable refinement; see _pykernels.refine_partition."""
    cdef cnp.int32_t[::1] indptr = np.ascontiguousarray(indptr_o, dtype=np.int32)
    cdef cnp.int32_t[::1] indices = np.ascontiguousarray(indices_o, dtype=np.int32)
    cdef cnp.int32_t[::1] order = order_o
    cdef cnp.int32_t[::1] pos = pos_o
    cdef cnp.int32_t[::1] cstart = cstart_o
    cdef cnp.int32_t[::1] seeds = np.ascontiguousarray(seeds_o, dtype=np.int32)

    cdef int n = order.shape[0]
    cdef int qcap = n + 1
    cdef int *queue = <int *> malloc(qcap * sizeof(int))
    cdef unsigned char *in_queue = <unsigned char *> malloc(n)
    cdef int *cnt = <int *> malloc(n * sizeof(int))
    cdef int *touched = <int *> malloc(n * sizeof(int))
    cdef int *starts = <int *> malloc(n * sizeof(int))
    cdef unsigned char *start_flag = <unsigned char *> malloc(n)
    cdef int *bucket = <int *> malloc((n + 2) * sizeof(int))
    cdef int *tmpv = <int *> malloc(n * sizeof(int))
    cdef int *tmpc = <int *> malloc(n * sizeof(int))
    if queue == NULL or in_queue == NULL or cnt == NULL or touched == NULL or \
            starts == NULL or start_flag == NULL or bucket == NULL or tmpv == NULL or tmpc == NULL:
        free(queue); free(in_queue); free(cnt); free(touched)
        free(starts); free(start_flag); free(bucket); free(tmpv); free(tmpc)
        raise MemoryError()
    memset(in_queue, 0, n)
    memset(start_flag, 0, n)
    memset(cnt, 0, n * sizeof(int))

    cdef int qhead = 0, qtail = 0
    cdef int i, j, p, s, e, u, w, cs, ce, size, ntouched, nstarts
    cdef int minc, maxc, c, run_start, prev, rs, re, a, b, t

    for i in range(seeds.shape[0]):
        s = seeds[i]
        if not in_queue[s]:
            in_queue[s] = 1
            queue[qtail] = s
            qtail += 1
            if qtail == qcap:
                qtail = 0

    while qhead != qtail:
        s = queue[qhead]
        qhead += 1
        if qhead == qcap:
            qhead = 0
        in_queue[s] = 0
        e = s + 1
        while e < n and cstart[e] == s:
            e += 1
        ntouched = 0
        for p in range(s, e):
            u = order[p]
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if cnt[w] == 0:
                    touched[ntouched] = w
                    ntouched += 1
                cnt[w] += 1
        nstarts = 0
        for i in range(ntouched):
            w = touched[i]
            cs = cstart[pos[w]]
            if not start_flag[cs]:
                start_flag[cs] = 1
                starts[nstarts] = cs
                nstarts += 1
        # insertion sort of affected cell starts (few per splitter)
        for i in range(1, nstarts):
            a = starts[i]
            j = i - 1
            while j >= 0 and starts[j] > a:
                starts[j + 1] = starts[j]
                j -= 1
            starts[j + 1] = a
        for i in range(nstarts):
            cs = starts[i]
            start_flag[cs] = 0
            ce = cs + 1
            while ce < n and cstart[ce] == cs:
                ce += 1
            size = ce - cs
            if size == 1:
                continue
            minc = cnt[order[cs]]
            maxc = minc
            for p in range(cs + 1, ce):
                c = cnt[order[p]]
                if c < minc:
                    minc = c
                if c > maxc:
                    maxc = c
            if minc == maxc:
                continue
            # stable counting sort of the cell by count, ascending
            memset(bucket, 0, (maxc - minc + 2) * sizeof(int))
            for p in range(cs, ce):
                c = cnt[order[p]] - minc
                tmpv[p - cs] = order[p]
                tmpc[p - cs] = c
                bucket[c + 1] += 1
            for c in range(1, maxc - minc + 2):
                bucket[c] += bucket[c - 1]
            for t in range(size):
                u = tmpv[t]
                c = tmpc[t]
                p = cs + bucket[c]
                bucket[c] += 1
                order[p] = u
                pos[u] = p
            run_start = cs
            prev = cnt[order[cs]]
            cstart[cs] = cs
            for p in range(cs + 1, ce):
                c = cnt[order[p]]
                if c != prev:
                    run_start = p
                    prev = c
                cstart[p] = run_start
            rs = cs
            while rs < ce:
                if not in_queue[rs]:
                    in_queue[rs] = 1
                    queue[qtail] = rs
                    qtail += 1
                    if qtail == qcap:
                        qtail = 0
                re = rs + 1
                while re < ce and cstart[re] == rs:
                    re += 1
                rs = re
        for i in range(ntouched):
            cnt[touched[i]] = 0

    free(queue); free(in_queue); free(cnt); free(touched)
    free(starts); free(start_flag); free(bucket); free(tmpv); free(tmpc)


cdef int _dfs(int t, int k, int n, unsigned long long *masks, unsigned long long *dm,
              unsigned char *used, int *chosen, const int *ss,
              const unsigned long long *cat, int ncat, list out) except -1:
    cdef int j, y, lo, hi, mid
    cdef bint ok
    cdef unsigned long long m
    if t == k:
        for y in range(n):
            m = masks[y]
            lo = 0
            hi = ncat
            while lo < hi:
                mid = (lo + hi) >> 1
                if cat[mid] < m:
                    lo = mid + 1
                else:
                    hi = mid
            if lo >= ncat or cat[lo] != m:
                return 0
        out.append(tuple([ss[chosen[y]] for y in range(k)]))
        return 0
    cdef int tk = t * k
    for j in range(k):
        if used[j]:
            continue
        ok = True
        for y in range(n):
            if masks[y] & dm[y * k * k + tk + j]:
                ok = False
                break
        if not ok:
            continue
        used[j] = 1
        for y in range(n):
            masks[y] |= dm[y * k * k + tk + j]
        chosen[t] = j
        _dfs(t + 1, k, n, masks, dm, used, chosen, ss, cat, ncat, out)
        for y in range(n):
            masks[y] &= ~dm[y * k * k + tk + j]
        used[j] = 0
    return 0


def extend_assignments(object add_o, object neg_o, object d_o, int k, int n,
                       object s_o, object catalog_o, int v):
    """All valid bijective assignments; see _pykernels.extend_assignments."""
    cdef cnp.int32_t[::1] add = np.ascontiguousarray(add_o, dtype=np.int32)
    cdef cnp.int32_t[::1] ng = np.ascontiguousarray(neg_o, dtype=np.int32)
    cdef cnp.int32_t[::1] dd = np.ascontiguousarray(d_o, dtype=np.int32)
    cdef cnp.int32_t[::1] ss = np.ascontiguousarray(s_o, dtype=np.int32)
    cdef cnp.uint64_t[::1] cat = np.ascontiguousarray(catalog_o, dtype=np.uint64)
    cdef int ncat = cat.shape[0]

    cdef unsigned long long *dm = <unsigned long long *> malloc(n * k * k * sizeof(unsigned long long))
    cdef unsigned long long *masks = <unsigned long long *> malloc(n * sizeof(unsigned long long))
    cdef unsigned char *used = <unsigned char *> malloc(k)
    cdef int *chosen = <int *> malloc(k * sizeof(int))
    cdef int *selems = <int *> malloc(k * sizeof(int))
    if dm == NULL or masks == NULL or used == NULL or chosen == NULL or selems == NULL:
        free(dm); free(masks); free(used); free(chosen); free(selems)
        raise MemoryError()

    cdef int t, j, y, ne
    for j in range(k):
        selems[j] = ss[j]
    for t in range(k):
        for j in range(k):
            ne = ng[ss[j]]
            for y in range(n):
                dm[y * k * k + t * k + j] = (<unsigned long long> 1) << add[dd[t * n + y] * v + ne]
    memset(masks, 0, n * sizeof(unsigned long long))
    memset(used, 0, k)

    cdef list out = []
    cdef const unsigned long long *catp = NULL
    if ncat > 0:
        catp = <const unsigned long long *> &cat[0]
    try:
        _dfs(0, k, n, masks, dm, used, chosen, selems, catp, ncat, out)
    finally:
        free(dm); free(masks); free(used); free(chosen); free(selems)
    return out
