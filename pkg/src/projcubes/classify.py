"""Extension-based classification of n-dimensional difference sets, exhaustive
small-cube search, difference-set extraction, and Kramer-Mesner search."""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import kernels, refdata
from ._canon import cube_graph, invariant_trace
from .algebra import GroupTable, builtin_group, _generating_sequence
from .cube import Cube, dimension_bounds, verify_cube
from .diffset import (ENUMERATION_BUDGET, BudgetExceeded, NdDifferenceSet,
                      OrdinaryDifferenceSet, develop, enumerate_difference_sets,
                      lift_to_2d, normalize)
from .equivalence import (Isotopy, apply_isotopy, canonical_form, canonical_rows,
                          compose_isotopies, cube_invariant, diffset_classes,
                          identity_isotopy)

ProgressFn = Callable[[int, int], None]


def _check_deadline(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("classification budget exceeded")


class _ExtContext:
    """Group tables and catalog masks shared across extension calls."""

    def __init__(self, G: GroupTable, catalog: Sequence[Sequence[int]]):
        self.v = G.order
        self.add_flat = np.ascontiguousarray(G.np_table, dtype=np.int32).reshape(-1)
        self.neg = np.array(G.neg_table(), dtype=np.int32)
        masks = sorted(sum(1 << int(e) for e in s) for s in catalog)
        self.masks_list = masks
        self.masks_np = (np.array(masks, dtype=np.uint64) if self.v <= 64
                         else np.zeros(0, dtype=np.uint64))


def _dev_rows_np(D: NdDifferenceSet) -> np.ndarray:
    T = np.asarray(D.tuples, dtype=np.int64)
    dev = D.group.np_table[T]
    return np.swapaxes(dev, 1, 2).reshape(-1, T.shape[1])


def _dev_digest(D: NdDifferenceSet) -> bytes:
    g = cube_graph(_dev_rows_np(D), D.v, D.n)
    return hashlib.blake2b(invariant_trace(g), digest_size=16).digest()


def _dedup_by_development(cands: Iterable[NdDifferenceSet],
                          deadline: Optional[float]) -> list[NdDifferenceSet]:
    """Keep one representative per paratopy class of developments, first seen wins.

    Candidates are bucketed by a cheap paratopy invariant of the development;
    only buckets with several members pay for full canonical forms.  A digest
    collision can only merge buckets, never split one, and merged buckets still
    get separated by their canonical forms, so the result is exact.
    """
    entries: list[NdDifferenceSet] = []
    seen: set[tuple] = set()
    buckets: dict[bytes, list[int]] = {}
    for D in cands:
        if D.tuples in seen:
            continue
        seen.add(D.tuples)
        _check_deadline(deadline)
        buckets.setdefault(_dev_digest(D), []).append(len(entries))
        entries.append(D)
    keep: list[int] = []
    for idxs in buckets.values():
        if len(idxs) == 1:
            keep.append(idxs[0])
            continue
        reps: dict[tuple, int] = {}
        for i in idxs:
            _check_deadline(deadline)
            reps.setdefault(canonical_rows(develop(entries[i], check=False)), i)
        keep.extend(reps.values())
    keep.sort()
    return [entries[i] for i in keep]


def _rename_key(col: Sequence[int], v: int) -> bytes:
    ren = [-1] * v
    out = bytearray(len(col))
    nxt = 0
    for i, x in enumerate(col):
        r = ren[x]
        if r < 0:
            ren[x] = r = nxt
            nxt += 1
        out[i] = r
    return bytes(out)


def _extend_one(D: NdDifferenceSet, cat: Sequence[tuple[int, ...]], ctx: _ExtContext,
                deadline: Optional[float]) -> list[NdDifferenceSet]:
    """Extensions of one representative, orbit-reduced under its development's
    autoparatopies composed with symbol renamings of the new coordinate."""
    G = D.group
    v, k, lam, n = D.v, D.k, D.lam, D.n
    dev = develop(D, check=False)
    rows = dev.rows
    m = len(rows)
    ridx = {r: i for i, r in enumerate(rows)}
    tab = G.table
    pos = [[ridx[tuple(tab[x][g] for x in t)] for g in range(v)] for t in D.tuples]
    rowperms = []
    for P in canonical_form(dev).generators:
        ginv = [0] * n
        for c, gc in enumerate(P.conj):
            ginv[gc] = c
        al = P.iso.perms
        rowperms.append([ridx[tuple(al[d][r[ginv[d]]] for d in range(n))] for r in rows])
    d_flat = np.array(D.tuples, dtype=np.int32).reshape(-1)
    dominated: set[bytes] = set()
    out: list[NdDifferenceSet] = []
    for S in cat:
        _check_deadline(deadline)
        cols = kernels.extend_assignments(ctx.add_flat, ctx.neg, d_flat, k, n,
                                          np.array(S, dtype=np.int32),
                                          ctx.masks_list, ctx.masks_np, ctx.v)
        for colk in cols:
            col = [0] * m
            for t in range(k):
                pt = pos[t]
                tct = tab[colk[t]]
                for g in range(v):
                    col[pt[g]] = tct[g]
            key = _rename_key(col, v)
            if key in dominated:
                continue
            dominated.add(key)
            frontier_cols = [col]
            while frontier_cols:
                nxt = []
                for c0 in frontier_cols:
                    for perm in rowperms:
                        c2 = [0] * m
                        for i in range(m):
                            c2[perm[i]] = c0[i]
                        k2 = _rename_key(c2, v)
                        if k2 not in dominated:
                            dominated.add(k2)
                            nxt.append(c2)
                frontier_cols = nxt
            ts = [D.tuples[t] + (int(colk[t]),) for t in range(k)]
            out.append(NdDifferenceSet(G, k, lam, ts, check=False))
    return out


def extend_diffsets(frontier: Sequence[NdDifferenceSet], catalog: Sequence[Sequence[int]],
                    deadline: Optional[float] = None,
                    ctx: Optional[_ExtContext] = None) -> list[NdDifferenceSet]:
    """All one-dimension extensions of the frontier, deduped by development class.

    Every catalog set is assigned to the k tuple slots in all valid ways; a new
    column is kept when every coordinate pair against it satisfies the
    difference-set condition.  Per representative, candidate columns that lie in
    a common orbit of its development's autoparatopy group are collapsed before
    the cross-representative canonical deduplication.
    """
    frontier = list(frontier)
    if not frontier:
        return []
    cat = sorted(tuple(sorted(int(x) for x in s)) for s in catalog)
    if ctx is None:
        ctx = _ExtContext(frontier[0].group, cat)
    survivors: list[NdDifferenceSet] = []
    for D in frontier:
        survivors.extend(_extend_one(D, cat, ctx, deadline))
    return _dedup_by_development(survivors, deadline)


@dataclass
class ClassificationResult:
    """Per-dimension class representatives and the maximal dimension mu.

    When mu_exact is false the reported mu is a lower bound (budget or max_dim
    stopped the run first).
    """

    v: int
    k: int
    lam: int
    group: GroupTable
    per_dimension: dict[int, list[NdDifferenceSet]]
    mu: Optional[int]
    mu_exact: bool

    def counts(self) -> dict[int, int]:
        return {n: len(reps) for n, reps in sorted(self.per_dimension.items())}

    def developments(self, n: int) -> list[Cube]:
        return [develop(D, check=False) for D in self.per_dimension[n]]

    def canonical_cubes(self, n: int) -> list[Cube]:
        return [Cube(self.v, self.k, self.lam, n, canonical_rows(dev))
                for dev in self.developments(n)]


def classify_nd_diffsets(G: GroupTable, k: int, lam: int,
                         max_dim: Optional[int] = None,
                         budget_seconds: Optional[float] = None,
                         enum_budget: int = ENUMERATION_BUDGET,
                         progress: Optional[ProgressFn] = None) -> ClassificationResult:
    """Classify n-dimensional (v,k,lam) difference sets in G for every n up to mu_G."""
    v = G.order
    if k < 2:
        raise ValueError("k must be at least 2")
    deadline = time.monotonic() + budget_seconds if budget_seconds is not None else None
    catalog = enumerate_difference_sets(G, k, lam, enum_budget)
    if not catalog:
        return ClassificationResult(v, k, lam, G, {}, None, True)
    ctx = _ExtContext(G, catalog)
    lifts = [lift_to_2d(OrdinaryDifferenceSet(G, k, lam, S, check=False)) for S in catalog]
    try:
        frontier = _dedup_by_development(lifts, deadline)
    except BudgetExceeded:
        return ClassificationResult(v, k, lam, G, {}, 2, False)
    per: dict[int, list[NdDifferenceSet]] = {2: frontier}
    if progress:
        progress(2, len(frontier))
    n = 2
    exact = True
    bound = dimension_bounds(v, k)[1]
    while True:
        if max_dim is not None and n >= max_dim:
            exact = False
            break
        try:
            nxt = extend_diffsets(frontier, catalog, deadline=deadline, ctx=ctx)
        except BudgetExceeded:
            exact = False
            break
        if not nxt:
            break
        n += 1
        per[n] = nxt
        frontier = nxt
        if progress:
            progress(n, len(nxt))
    if bound is not None and n >= bound:
        exact = True
    return ClassificationResult(v, k, lam, G, per, n, exact)


def _decode(x: int, v: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for c in range(n - 1, -1, -1):
        out[c] = x % v
        x //= v
    return tuple(out)


def _encode(t: Sequence[int], v: int) -> int:
    x = 0
    for s in t:
        x = x * v + s
    return x


def classify_cubes_exhaustive(v: int, k: int, lam: int, n: int) -> list[Cube]:
    """All (v,k,lam) projection n-cubes up to paratopy by row backtracking.

    Without loss of generality the sorted row set starts with the all-zero row,
    followed by (0,1,...,1) when k >= 2 (renaming symbols per coordinate) or
    (1,...,1) when k = 1 (no second agreement is allowed when lam = 0).
    """
    if v > 4:
        raise ValueError("exhaustive cube search is limited to v <= 4")
    if v < 2 or k < 1 or n < 2:
        raise ValueError("bad parameters")
    if lam * (v - 1) != k * (k - 1):
        return []
    m = v * k
    top = v ** n
    rows: list[tuple[int, ...]] = [(0,) * n]
    if k >= 2:
        rows.append((0,) + (1,) * (n - 1))
    elif m < 2:
        raise ValueError("bad parameters")
    else:
        rows.append((1,) * n)
    counts = [[0] * v for _ in range(n)]
    for r in rows:
        for c in range(n):
            counts[c][r[c]] += 1

    def row_ok(r: tuple[int, ...]) -> bool:
        for c in range(n):
            if counts[c][r[c]] >= k:
                return False
        for prev in rows:
            agree = 0
            for c in range(n):
                if prev[c] == r[c]:
                    agree += 1
                    if agree > 1:
                        return False
        return True

    found: list[tuple[tuple[int, ...], ...]] = []

    def dfs() -> None:
        if len(rows) == m:
            if verify_cube(list(rows), v, k, lam).ok:
                found.append(tuple(rows))
            return
        start = _encode(rows[-1], v) + 1
        remaining = m - len(rows)
        for x in range(start, top - remaining + 1):
            r = _decode(x, v, n)
            if not row_ok(r):
                continue
            rows.append(r)
            for c in range(n):
                counts[c][r[c]] += 1
            dfs()
            rows.pop()
            for c in range(n):
                counts[c][r[c]] -= 1

    dfs()
    reps: dict[tuple, Cube] = {}
    for rs in found:
        C = Cube(v, k, lam, n, rs)
        reps.setdefault(canonical_rows(C), C)
    return list(reps.values())


def extract_diffset(C: Cube, isotopies: Iterable[Isotopy]) -> NdDifferenceSet:
    """Recover an n-dimensional difference set from a sharply transitive autotopy group.

    The subgroup generated by the given autotopies must have order v and act
    transitively on the symbols of every coordinate; orbit representatives are
    lexicographic minima, and the result is normalized.
    """
    v, k, lam, n = C.v, C.k, C.lam, C.n
    gens = list(isotopies)
    for t in gens:
        if apply_isotopy(C, t).rows != C.rows:
            raise ValueError("given maps are not autotopies of the cube")
    ident = identity_isotopy(v, n)
    elems: dict[tuple, Isotopy] = {ident.perms: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose_isotopies(g, a)
                if b.perms not in elems:
                    if len(elems) >= v:
                        raise ValueError("autotopy subgroup is larger than v; "
                                         "the action is not sharply transitive")
                    elems[b.perms] = b
                    nxt.append(b)
        frontier = nxt
    group_elems = list(elems.values())
    if len(group_elems) != v:
        raise ValueError("autotopy subgroup order differs from v; "
                         "the action is not sharply transitive")
    by_index: list[Optional[Isotopy]] = [None] * v
    for t in group_elems:
        i = t.perms[0][0]
        if by_index[i] is not None:
            raise ValueError("the action is not sharply transitive on coordinate 1")
        by_index[i] = t
    beta = []
    for c in range(n):
        col = [by_index[i].perms[c][0] for i in range(v)]
        if sorted(col) != list(range(v)):
            raise ValueError(f"the action is not sharply transitive on coordinate {c + 1}")
        beta.append(col)
    table = [[by_index[b].perms[0][a] for b in range(v)] for a in range(v)]
    T = GroupTable(table, name=f"aut{v}")
    binv = []
    for c in range(n):
        inv = [0] * v
        for i, x in enumerate(beta[c]):
            inv[x] = i
        binv.append(inv)
    rowset = {tuple(binv[c][r[c]] for c in range(n)) for r in C.rows}
    reps = []
    while rowset:
        r = min(rowset)
        orbit = {tuple(T.table[x][g] for x in r) for g in range(v)}
        if not orbit <= rowset:
            raise AssertionError("translation orbit leaves the row set")
        rowset -= orbit
        reps.append(r)
    if len(reps) != k:
        raise AssertionError("unexpected translation orbit count")
    return normalize(NdDifferenceSet(T, k, lam, reps, check=True))


def diagonal_translations(G: GroupTable, n: int) -> list[Isotopy]:
    """Diagonal right-translation isotopies by a generating set of G."""
    out = []
    for g in _generating_sequence(G)[0]:
        perm = tuple(G.table[x][g] for x in range(G.order))
        out.append(Isotopy([perm] * n))
    if not out:
        out.append(identity_isotopy(G.order, n))
    return out


def kramer_mesner_search(v: int, k: int, lam: int, n: int,
                         generators: Sequence[Isotopy],
                         cell_budget: int = 10 ** 6,
                         node_budget: int = 10 ** 7) -> list[Cube]:
    """All (v,k,lam) n-cubes invariant under the given isotopy group, up to paratopy.

    Cells are collapsed into orbits under the group; backtracking selects whole
    orbits while tracking per-projection symbol counts, pair usage, and inner
    products incrementally.
    """
    if v ** n > cell_budget:
        raise BudgetExceeded("orbit count beyond configured budget")
    for t in generators:
        if t.n != n or t.v != v:
            raise ValueError("generator arity does not match the search")
    m = v * k
    top = v ** n
    gperms = [t.perms for t in generators]
    orbit_id = [-1] * top
    orbits: list[list[int]] = []
    for x in range(top):
        if orbit_id[x] != -1:
            continue
        oid = len(orbits)
        orbit_id[x] = oid
        comp = [x]
        queue = [x]
        while queue:
            y = queue.pop()
            ty = _decode(y, v, n)
            for perms in gperms:
                z = _encode(tuple(perms[c][ty[c]] for c in range(n)), v)
                if orbit_id[z] == -1:
                    orbit_id[z] = oid
                    comp.append(z)
                    queue.append(z)
        orbits.append(sorted(comp))
    orbs = sorted(orbits, key=lambda o: (-len(o), o[0]))
    cells_of = [[_decode(x, v, n) for x in o] for o in orbs]
    sizes = [len(o) for o in orbs]
    suffix = [0] * (len(orbs) + 1)
    for i in range(len(orbs) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]

    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    M = [bytearray(v * v) for _ in pairs]
    P = [[0] * (v * v) for _ in pairs]
    colcount = [[0] * v for _ in range(n)]

    def add_cell(cell: tuple[int, ...]) -> bool:
        for c in range(n):
            if colcount[c][cell[c]] >= k:
                return False
        for pi, (x, y) in enumerate(pairs):
            i, j = cell[x], cell[y]
            mp = M[pi]
            if mp[i * v + j]:
                return False
            pp = P[pi]
            for i2 in range(v):
                if i2 != i and mp[i2 * v + j]:
                    a, b = (i, i2) if i < i2 else (i2, i)
                    if pp[a * v + b] >= lam:
                        return False
        for c in range(n):
            colcount[c][cell[c]] += 1
        for pi, (x, y) in enumerate(pairs):
            i, j = cell[x], cell[y]
            mp = M[pi]
            pp = P[pi]
            for i2 in range(v):
                if i2 != i and mp[i2 * v + j]:
                    a, b = (i, i2) if i < i2 else (i2, i)
                    pp[a * v + b] += 1
            mp[i * v + j] = 1
        return True

    def remove_cell(cell: tuple[int, ...]) -> None:
        for c in range(n):
            colcount[c][cell[c]] -= 1
        for pi, (x, y) in enumerate(pairs):
            i, j = cell[x], cell[y]
            mp = M[pi]
            pp = P[pi]
            mp[i * v + j] = 0
            for i2 in range(v):
                if i2 != i and mp[i2 * v + j]:
                    a, b = (i, i2) if i < i2 else (i2, i)
                    pp[a * v + b] -= 1
        return None

    chosen: list[tuple[int, ...]] = []
    solutions: list[tuple[tuple[int, ...], ...]] = []
    nodes = 0

    def dfs(oi: int, count: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded("node budget exceeded")
        if count == m:
            rows = sorted(chosen)
            if verify_cube(rows, v, k, lam).ok:
                solutions.append(tuple(rows))
            return
        if oi == len(orbs) or count + suffix[oi] < m:
            return
        if count + sizes[oi] <= m:
            applied = []
            ok = True
            for cell in cells_of[oi]:
                if add_cell(cell):
                    applied.append(cell)
                else:
                    ok = False
                    break
            if ok:
                chosen.extend(cells_of[oi])
                dfs(oi + 1, count + sizes[oi])
                del chosen[-sizes[oi]:]
            for cell in reversed(applied):
                remove_cell(cell)
        dfs(oi + 1, count)

    dfs(0, 0)
    reps: dict[tuple, Cube] = {}
    for rs in solutions:
        C = Cube(v, k, lam, n, rs)
        reps.setdefault(canonical_rows(C), C)
    return list(reps.values())


def table1_counts(max_n: int = 6) -> dict[int, int]:
    """Class counts of (3,2,1) n-cubes for n = 2..max_n."""
    return {n: len(classify_cubes_exhaustive(3, 2, 1, n)) for n in range(2, max_n + 1)}


def groups_for_parameters(v: int, k: int, lam: int) -> tuple[str, ...]:
    if (v, k, lam) == (16, 6, 2):
        return tuple(f"G16_{gid}" for gid in range(1, 15))
    return refdata.TABLE2_GROUPS.get((v, k, lam), (f"Z{v}",))


def table2_row(v: int, k: int, lam: int,
               budget_seconds: Optional[float] = None,
               progress: Optional[ProgressFn] = None) -> dict[str, ClassificationResult]:
    """Classification results per catalogued group for one parameter triple."""
    out = {}
    for name in groups_for_parameters(v, k, lam):
        out[name] = classify_nd_diffsets(builtin_group(name), k, lam,
                                         budget_seconds=budget_seconds, progress=progress)
    return out


def table4_counts(v: int, k: int, lam: int,
                  budget_seconds: Optional[float] = None,
                  results: Optional[dict[str, ClassificationResult]] = None) -> dict[int, int]:
    """Inequivalent development counts per dimension n >= 3, merged across groups."""
    if results is None:
        results = table2_row(v, k, lam, budget_seconds=budget_seconds)
    if len(results) == 1:
        res = next(iter(results.values()))
        return {n: len(reps) for n, reps in sorted(res.per_dimension.items()) if n >= 3}
    merged: dict[int, set] = {}
    for res in results.values():
        for n, reps in res.per_dimension.items():
            if n < 3:
                continue
            bucket = merged.setdefault(n, set())
            for D in reps:
                bucket.add(canonical_rows(develop(D, check=False)))
    return {n: len(s) for n, s in sorted(merged.items())}


def table3_row(gid: int, with_mu: bool = False,
               budget_seconds: Optional[float] = None,
               max_dim: Optional[int] = None,
               progress: Optional[ProgressFn] = None) -> dict:
    """Computed Tds/Nds (and optionally mu) for one order-16 group id."""
    name = {row[0]: row[1] for row in refdata.TABLE3_ROWS}[gid]
    G = builtin_group(name)
    catalog = enumerate_difference_sets(G, 6, 2)
    tds = len(catalog)
    nds = len(diffset_classes(G, catalog)) if catalog else 0
    out: dict = {"id": gid, "name": name, "tds": tds, "nds": nds,
                 "mu": None, "mu_exact": True}
    if with_mu and catalog:
        res = classify_nd_diffsets(G, 6, 2, max_dim=max_dim,
                                   budget_seconds=budget_seconds, progress=progress)
        out["mu"] = res.mu
        out["mu_exact"] = res.mu_exact
    return out
