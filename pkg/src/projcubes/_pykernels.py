"""Pure-Python kernels: equitable partition refinement and extension assignment search.

The compiled module _speedups implements the same two entry points with identical
semantics; results must match byte for byte.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import deque

IMPLEMENTATION = "pure"


def refine_partition(indptr, indices, order, pos, cstart, seeds) -> None:
    """Refine an ordered partition in place until it is equitable.

    order[p] = vertex at position p; pos = inverse; cstart[p] = first position of
    the cell containing p.  seeds are cell-start positions to enqueue initially.
    Cells split by neighbor counts into the popped splitter cell, subcells ordered
    by ascending count (stable); every subcell is enqueued.
    """
    n = len(order)
    lorder = [int(x) for x in order]
    lpos = [int(x) for x in pos]
    lcstart = [int(x) for x in cstart]
    iptr = indptr if isinstance(indptr, list) else [int(x) for x in indptr]
    idx = indices if isinstance(indices, list) else [int(x) for x in indices]

    in_queue = bytearray(n)
    queue: deque[int] = deque()
    for s in seeds:
        s = int(s)
        if not in_queue[s]:
            in_queue[s] = 1
            queue.append(s)
    cnt = [0] * n
    touched: list[int] = []

    while queue:
        s = queue.popleft()
        in_queue[s] = 0
        e = s + 1
        while e < n and lcstart[e] == s:
            e += 1
        touched.clear()
        for p in range(s, e):
            u = lorder[p]
            for j in range(iptr[u], iptr[u + 1]):
                w = idx[j]
                if cnt[w] == 0:
                    touched.append(w)
                cnt[w] += 1
        starts = sorted({lcstart[lpos[w]] for w in touched})
        for cs in starts:
            ce = cs + 1
            while ce < n and lcstart[ce] == cs:
                ce += 1
            if ce - cs == 1:
                continue
            cell = [lorder[p] for p in range(cs, ce)]
            cell.sort(key=lambda u: cnt[u])
            if cnt[cell[0]] == cnt[cell[-1]]:
                continue
            run_start = cs
            prev = cnt[cell[0]]
            for i, u in enumerate(cell):
                p = cs + i
                lorder[p] = u
                lpos[u] = p
                if cnt[u] != prev:
                    run_start = p
                    prev = cnt[u]
                lcstart[p] = run_start
            rs = cs
            while rs < ce:
                if not in_queue[rs]:
                    in_queue[rs] = 1
                    queue.append(rs)
                re = rs + 1
                while re < ce and lcstart[re] == rs:
                    re += 1
                rs = re
        for w in touched:
            cnt[w] = 0

    order[:] = lorder
    pos[:] = lpos
    cstart[:] = lcstart


def extend_assignments(add_flat, neg, d_flat, k: int, n: int, s_elems, catalog_masks, v: int) -> list[tuple[int, ...]]:
    """All bijective assignments of s_elems to the k tuple slots whose per-coordinate
    difference sets stay repeat-free and land in the catalog.

    d_flat is the k*n tuple matrix; catalog_masks is a sorted list of element
    bitmasks of every valid difference set.  Returns new-column value tuples in
    lexicographic assignment order.
    """
    add = [int(x) for x in add_flat]
    ng = [int(x) for x in neg]
    dd = [int(x) for x in d_flat]
    ss = [int(x) for x in s_elems]
    ncat = len(catalog_masks)

    dm = [[0] * (k * k) for _ in range(n)]
    for t in range(k):
        base = t * n
        for j in range(k):
            ne = ng[ss[j]]
            tj = t * k + j
            for y in range(n):
                dm[y][tj] = 1 << add[dd[base + y] * v + ne]

    masks = [0] * n
    used = [False] * k
    chosen: list[int] = []
    out: list[tuple[int, ...]] = []

    def dfs(t: int) -> None:
        if t == k:
            for y in range(n):
                m = masks[y]
                i = bisect_left(catalog_masks, m)
                if i >= ncat or catalog_masks[i] != m:
                    return
            out.append(tuple(ss[j] for j in chosen))
            return
        tk = t * k
        for j in range(k):
            if used[j]:
                continue
            ok = True
            for y in range(n):
                if masks[y] & dm[y][tk + j]:
                    ok = False
                    break
            if not ok:
                continue
            used[j] = True
            for y in range(n):
                masks[y] |= dm[y][tk + j]
            chosen.append(j)
            dfs(t + 1)
            chosen.pop()
            for y in range(n):
                masks[y] &= ~dm[y][tk + j]
            used[j] = False

    dfs(0)
    return out
