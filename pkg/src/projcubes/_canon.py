"""Canonical labeling of vertex-colored graphs by individualization-refinement.

Cubes are encoded as 3-colored incidence graphs (row, cell, coordinate vertices);
color-preserving automorphisms of the graph correspond exactly to autoparatopies
of the cube, or to autotopies when coordinate vertices get singleton colors.
"""
from __future__ import annotations

import numpy as np

from . import kernels


class ColoredGraph:
    """CSR adjacency plus an ordered initial color partition."""

    __slots__ = ("n_vertices", "indptr", "indices", "cells", "edge_u", "edge_v")

    def __init__(self, n_vertices: int, edge_u: np.ndarray, edge_v: np.ndarray, cells: list[np.ndarray]):
        self.n_vertices = n_vertices
        self.edge_u = edge_u
        self.edge_v = edge_v
        src = np.concatenate([edge_u, edge_v])
        dst = np.concatenate([edge_v, edge_u])
        srt = np.lexsort((dst, src))
        src = src[srt]
        dst = dst[srt]
        deg = np.bincount(src, minlength=n_vertices)
        indptr = np.zeros(n_vertices + 1, dtype=np.int32)
        np.cumsum(deg, out=indptr[1:])
        self.indptr = indptr
        self.indices = dst.astype(np.int32)
        self.cells = cells


def cube_graph(rows, v: int, n: int, isotopy: bool = False) -> ColoredGraph:
    """Incidence graph of a set of rows: row -- (coord, symbol) cell -- coordinate."""
    m = len(rows)
    arr = np.asarray(rows, dtype=np.int32).reshape(m, n)
    nv = n * v
    # row -> cell edges
    cell_ids = m + np.arange(n, dtype=np.int32) * v
    eu1 = np.repeat(np.arange(m, dtype=np.int32), n)
    ev1 = (cell_ids[None, :] + arr).ravel()
    # cell -> coordinate edges
    eu2 = m + np.arange(nv, dtype=np.int32)
    ev2 = m + nv + np.repeat(np.arange(n, dtype=np.int32), v)
    edge_u = np.concatenate([eu1, eu2])
    edge_v = np.concatenate([ev1, ev2])
    cells = [np.arange(m, dtype=np.int32), np.arange(m, m + nv, dtype=np.int32)]
    if isotopy:
        for c in range(n):
            cells.append(np.array([m + nv + c], dtype=np.int32))
    else:
        cells.append(np.arange(m + nv, m + nv + n, dtype=np.int32))
    return ColoredGraph(m + nv + n, edge_u, edge_v, cells)


def _initial_state(g: ColoredGraph):
    n = g.n_vertices
    order = np.empty(n, dtype=np.int32)
    pos = np.empty(n, dtype=np.int32)
    cstart = np.empty(n, dtype=np.int32)
    starts = []
    p = 0
    for cell in g.cells:
        s = p
        starts.append(s)
        for u in cell:
            order[p] = u
            pos[u] = p
            cstart[p] = s
            p += 1
    if p != n:
        raise ValueError("initial cells do not cover the vertex set")
    return order, pos, cstart, np.array(starts, dtype=np.int32)


def invariant_trace(g: ColoredGraph) -> bytes:
    """Isomorphism-invariant fingerprint: the equitable refinement's cell layout."""
    order, pos, cstart, seeds = _initial_state(g)
    kernels.refine_partition(g.indptr, g.indices, order, pos, cstart, seeds)
    return cstart.tobytes()


def canonical_labeling(g: ColoredGraph) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Canonical labeling and automorphism generators of a colored graph.

    Returns (canonical order, generators): canonical order maps position ->
    vertex; generators are color-preserving automorphisms as vertex images.
    """
    n = g.n_vertices
    indptr, indices = g.indptr, g.indices
    edge_u, edge_v = g.edge_u, g.edge_v
    order, pos, cstart, seeds0 = _initial_state(g)

    first_traces: list[bytes] = []
    first_cert: bytes | None = None
    first_order: np.ndarray | None = None
    best_traces: list[bytes] = []
    best_cert: bytes | None = None
    best_order: np.ndarray | None = None
    autos: list[tuple[int, ...]] = []
    auto_set: set[tuple[int, ...]] = set()
    prefix: list[int] = []
    path_traces: list[bytes] = []

    def leaf_cert() -> bytes:
        pu = pos[edge_u].astype(np.int64)
        pv = pos[edge_v].astype(np.int64)
        lo = np.minimum(pu, pv)
        hi = np.maximum(pu, pv)
        keys = lo * n + hi
        keys.sort()
        return keys.tobytes()

    def record_auto(other_order: np.ndarray) -> None:
        img = other_order[pos]
        gperm = tuple(int(x) for x in img)
        ident = tuple(range(n))
        if gperm != ident and gperm not in auto_set:
            auto_set.add(gperm)
            autos.append(gperm)

    arange_n = np.arange(n, dtype=np.int32)

    def target_cell() -> tuple[int, int]:
        """First largest non-singleton cell, or (-1, -1) at a leaf."""
        starts = np.flatnonzero(cstart == arange_n)
        sizes = np.append(starts[1:], n) - starts
        i = int(np.argmax(sizes))
        if sizes[i] < 2:
            return -1, -1
        return int(starts[i]), int(sizes[i])

    def orbit_closure(seed, fix: list[tuple[int, ...]]) -> set[int]:
        out = set(seed)
        stack = list(seed)
        while stack:
            x = stack.pop()
            for gp in fix:
                y = gp[x]
                if y not in out:
                    out.add(y)
                    stack.append(y)
        return out

    # fp_stack holds the depths of current-stack nodes created before the first
    # leaf: the nodes of the first path.  When a leaf reproduces the first
    # leaf's trace and certificate, the discovered automorphism maps the first
    # path's continuation below the deepest such ancestor onto the current
    # one, so the whole sibling subtree is redundant and the search jumps back.
    fp_stack: list[int] = []
    jump_depth = -1

    def node(seeds: np.ndarray, depth: int, state: str) -> None:
        # state "eq": path traces so far equal the best path's prefix;
        # state "gt": already worse than best, alive only to find automorphisms
        # against the first leaf (such paths can never install a new best).
        nonlocal first_cert, first_order, best_cert, best_order, best_traces, jump_depth
        kernels.refine_partition(indptr, indices, order, pos, cstart, seeds)
        tr = cstart.tobytes()
        on_first = first_order is None or (depth < len(first_traces) and tr == first_traces[depth])
        if state == "gt":
            if not on_first:
                return
        elif best_order is not None:
            if depth >= len(best_traces):
                if not on_first:
                    return
                state = "gt"
            else:
                bt = best_traces[depth]
                if tr > bt:
                    if not on_first:
                        return
                    state = "gt"
                elif tr < bt:
                    best_traces = []
                    best_cert = None
                    best_order = None
        fp = first_order is None
        if fp:
            fp_stack.append(depth)
        path_traces.append(tr)
        try:
            ts, tsize = target_cell()
            if ts < 0:
                cert = leaf_cert()
                if first_order is None:
                    first_traces.extend(path_traces)
                    first_cert = cert
                    first_order = order.copy()
                    best_traces = list(path_traces)
                    best_cert = cert
                    best_order = order.copy()
                    return
                if on_first and path_traces == first_traces and cert == first_cert:
                    record_auto(first_order)
                    jump_depth = fp_stack[-1]
                    return
                if state == "gt":
                    return
                if best_order is None or (path_traces, cert) < (best_traces, best_cert):
                    best_traces = list(path_traces)
                    best_cert = cert
                    best_order = order.copy()
                elif path_traces == best_traces and cert == best_cert:
                    record_auto(best_order)
                return
            cands = np.sort(order[ts:ts + tsize]).tolist()
            explored: list[int] = []
            dom: set[int] = set()
            fix: list[tuple[int, ...]] = []
            seen_autos = -1
            for w in cands:
                if len(autos) != seen_autos:
                    seen_autos = len(autos)
                    fix = [gp for gp in autos if all(gp[u] == u for u in prefix)]
                    dom = orbit_closure(explored, fix)
                if w in dom:
                    continue
                save_order = order.copy()
                save_pos = pos.copy()
                save_cstart = cstart.copy()
                pw = int(pos[w])
                u0 = int(order[ts])
                order[ts], order[pw] = order[pw], order[ts]
                pos[w] = ts
                pos[u0] = pw
                cstart[ts] = ts
                for p in range(ts + 1, ts + tsize):
                    cstart[p] = ts + 1
                prefix.append(w)
                node(np.array([ts, ts + 1], dtype=np.int32), depth + 1, state)
                prefix.pop()
                order[:] = save_order
                pos[:] = save_pos
                cstart[:] = save_cstart
                if jump_depth >= 0:
                    if depth > jump_depth:
                        return
                    jump_depth = -1
                explored.append(w)
                if fix:
                    dom |= orbit_closure([w], fix)
                else:
                    dom.add(w)
        finally:
            path_traces.pop()
            if fp:
                fp_stack.pop()

    node(seeds0, 0, "eq")
    assert best_order is not None
    return tuple(int(x) for x in best_order), autos
