"""Pure and compiled kernels must agree exactly on identical inputs."""
from __future__ import annotations

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from projcubes import _pykernels
from projcubes.algebra import cyclic_group
from projcubes.diffset import enumerate_difference_sets

try:
    from projcubes import _speedups
except ImportError:
    _speedups = None

needs_speedups = pytest.mark.skipif(_speedups is None, reason="compiled extension not built")


def random_partition_state(rng: random.Random, n: int):
    order = np.array(rng.sample(range(n), n), dtype=np.int32)
    pos = np.empty(n, dtype=np.int32)
    pos[order] = np.arange(n, dtype=np.int32)
    cuts = sorted(rng.sample(range(1, n), rng.randrange(0, n - 1)))
    bounds = [0] + cuts + [n]
    cstart = np.empty(n, dtype=np.int32)
    for lo, hi in zip(bounds, bounds[1:]):
        cstart[lo:hi] = lo
    seeds = np.array(bounds[:-1], dtype=np.int32)
    return order, pos, cstart, seeds


def random_graph_csr(rng: random.Random, n: int):
    edges = {(u, w) for u in range(n) for w in range(n) if u != w and rng.random() < 0.4}
    edges |= {(w, u) for u, w in edges}
    indptr = np.zeros(n + 1, dtype=np.int32)
    src = sorted(edges)
    for u, _ in src:
        indptr[u + 1] += 1
    indptr = np.cumsum(indptr, dtype=np.int32)
    indices = np.array([w for _, w in src], dtype=np.int32)
    return indptr, indices


def assert_equitable(indptr, indices, order, pos, cstart):
    n = len(order)
    cell_of = [int(cstart[pos[u]]) for u in range(n)]
    starts = sorted(set(int(c) for c in cstart))
    for s in starts:
        members = [u for u in range(n) if cell_of[u] == s]
        profiles = set()
        for u in members:
            prof = {}
            for j in range(indptr[u], indptr[u + 1]):
                c = cell_of[int(indices[j])]
                prof[c] = prof.get(c, 0) + 1
            profiles.add(tuple(sorted(prof.items())))
        assert len(profiles) == 1, f"cell at {s} is not equitable"


def test_pure_refinement_is_equitable_and_consistent():
    rng = random.Random(99)
    for trial in range(25):
        n = rng.randrange(3, 14)
        indptr, indices = random_graph_csr(rng, n)
        order, pos, cstart, seeds = random_partition_state(rng, n)
        _pykernels.refine_partition(indptr, indices, order, pos, cstart, seeds)
        assert sorted(order.tolist()) == list(range(n))
        assert all(order[pos[u]] == u for u in range(n))
        # cstart encodes contiguous cells
        for p in range(n):
            s = int(cstart[p])
            assert s <= p and cstart[s] == s
        assert_equitable(indptr, indices, order, pos, cstart)


@needs_speedups
def test_refinement_implementations_agree():
    rng = random.Random(4242)
    for trial in range(60):
        n = rng.randrange(3, 16)
        indptr, indices = random_graph_csr(rng, n)
        order, pos, cstart, seeds = random_partition_state(rng, n)
        o1, p1, c1 = order.copy(), pos.copy(), cstart.copy()
        o2, p2, c2 = order.copy(), pos.copy(), cstart.copy()
        _pykernels.refine_partition(indptr, indices, o1, p1, c1, seeds.copy())
        _speedups.refine_partition(indptr, indices, o2, p2, c2, seeds.copy())
        assert o1.tolist() == o2.tolist(), trial
        assert p1.tolist() == p2.tolist(), trial
        assert c1.tolist() == c2.tolist(), trial


def extension_inputs():
    G = cyclic_group(7)
    add_flat = np.ascontiguousarray(np.asarray(G.table, dtype=np.int32).reshape(-1))
    neg = np.asarray([G.neg(x) for x in range(7)], dtype=np.int32)
    catalog = enumerate_difference_sets(G, 3, 1)
    masks = sorted(sum(1 << e for e in S) for S in catalog)
    masks_np = np.asarray(masks, dtype=np.uint64)
    d_flat = np.ascontiguousarray(
        np.asarray(((0, 1, 3), (0, 2, 6), (0, 4, 5)), dtype=np.int32).reshape(-1)
    )
    return add_flat, neg, d_flat, catalog, masks, masks_np


def test_pure_extension_columns_are_valid():
    add_flat, neg, d_flat, catalog, masks, _ = extension_inputs()
    G = cyclic_group(7)
    total = 0
    for S in catalog:
        cols = _pykernels.extend_assignments(
            add_flat, neg, d_flat, 3, 3, np.asarray(S, dtype=np.int32), masks, 7
        )
        total += len(cols)
        for col in cols:
            assert sorted(col) == sorted(S)
            # every pairing of the new column against an old coordinate is a
            # difference set from the catalog
            base = ((0, 1, 3), (0, 2, 6), (0, 4, 5))
            for y in range(3):
                diffs = {G.sub(col[t], base[t][y]) for t in range(3)}
                assert tuple(sorted(diffs)) in catalog
    assert total > 0


@needs_speedups
def test_extension_implementations_agree():
    add_flat, neg, d_flat, catalog, masks, masks_np = extension_inputs()
    for S in catalog:
        s_elems = np.asarray(S, dtype=np.int32)
        pure = _pykernels.extend_assignments(add_flat, neg, d_flat, 3, 3, s_elems, masks, 7)
        fast = _speedups.extend_assignments(add_flat, neg, d_flat, 3, 3, s_elems, masks_np, 7)
        assert list(pure) == list(fast), S


def test_env_var_forces_pure_implementation():
    code = "import projcubes.kernels as k; print(k.IMPLEMENTATION)"
    env = dict(os.environ, PROJCUBES_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    assert out.stdout.strip() == "pure"


def test_implementation_name_is_known():
    from projcubes import kernels

    assert kernels.IMPLEMENTATION in {"pure", "compiled"}
