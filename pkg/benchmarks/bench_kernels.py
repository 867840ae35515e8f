"""Compare the pure-Python and compiled kernels on representative workloads.

Run from the repository root:
    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from projcubes import _pykernels
from projcubes._canon import _initial_state, cube_graph
from projcubes.algebra import cyclic_group
from projcubes.diffset import NdDifferenceSet, develop, enumerate_difference_sets

try:
    from projcubes import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeat: int) -> tuple[float, float]:
    """(best, median) wall seconds over repeat runs."""
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return min(samples), statistics.median(samples)


def refinement_workload():
    """Equitable refinement of the (11,5,2) development graph from scratch."""
    G = cyclic_group(11)
    D = NdDifferenceSet(G, 5, 2, (
        (0, 1, 2), (0, 2, 4), (0, 3, 6), (0, 4, 8), (0, 8, 5),
    ), check=False)
    C = develop(D, check=False)
    g = cube_graph(C.rows, C.v, C.n)
    order0, pos0, cstart0, seeds = _initial_state(g)

    def run(impl):
        def fn():
            order = order0.copy()
            pos = pos0.copy()
            cstart = cstart0.copy()
            impl.refine_partition(g.indptr, g.indices, order, pos, cstart, seeds.copy())
        return fn

    return "refine_partition (11,5,2) dev graph", run


def extension_workload():
    """All column assignments extending a (11,5,2) 3-dimensional set."""
    G = cyclic_group(11)
    v = G.order
    add_flat = np.ascontiguousarray(np.asarray(G.table, dtype=np.int32).reshape(-1))
    neg = np.asarray([G.neg(x) for x in range(v)], dtype=np.int32)
    catalog = enumerate_difference_sets(G, 5, 2)
    masks = sorted(sum(1 << e for e in S) for S in catalog)
    masks_np = np.asarray(masks, dtype=np.uint64)
    base = ((0, 1, 2), (0, 2, 4), (0, 3, 6), (0, 4, 8), (0, 8, 5))
    d_flat = np.ascontiguousarray(np.asarray(base, dtype=np.int32).reshape(-1))
    sets = [np.asarray(S, dtype=np.int32) for S in catalog]

    def run(impl):
        cat = masks if impl is _pykernels else masks_np

        def fn():
            for s_elems in sets:
                impl.extend_assignments(add_flat, neg, d_flat, 5, 3, s_elems, cat, v)
        return fn

    return f"extend_assignments over {len(sets)} catalog sets", run


def end_to_end_aparorder(repeat: int) -> None:
    """Autoparatopy order of the Paley (7,3,1) 7-cube, one fresh process per run."""
    code = (
        "from projcubes.constructions import paley_nd\n"
        "from projcubes.diffset import develop\n"
        "from projcubes.equivalence import autoparatopy_order\n"
        "print(autoparatopy_order(develop(paley_nd(7))))\n"
    )
    for label, env_extra in (("compiled", {}), ("pure", {"PROJCUBES_PURE": "1"})):
        env = dict(os.environ, **env_extra)
        samples = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = subprocess.run(
                [sys.executable, "-c", code], capture_output=True, text=True, env=env
            )
            samples.append(time.perf_counter() - t0)
            assert out.stdout.strip() == "882", out.stdout
        print(f"  {label:>8}: best {min(samples):.3f}s  median {statistics.median(samples):.3f}s"
              "  (includes interpreter startup)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="runs per measurement")
    parser.add_argument("--skip-subprocess", action="store_true",
                        help="skip the end-to-end fresh-process comparison")
    args = parser.parse_args()

    impls = [("pure", _pykernels)]
    if _speedups is not None:
        impls.append(("compiled", _speedups))
    else:
        print("compiled extension not built; benchmarking the pure kernels only")

    for name, workload in (refinement_workload(), extension_workload()):
        print(name)
        baseline = None
        for label, impl in impls:
            best, median = timeit(workload(impl), args.repeat)
            note = ""
            if baseline is None:
                baseline = best
            elif best > 0:
                note = f"  ({baseline / best:.1f}x vs pure)"
            print(f"  {label:>8}: best {best * 1000:.2f}ms  median {median * 1000:.2f}ms{note}")

    if not args.skip_subprocess:
        print("autoparatopy order of the Paley (7,3,1) 7-cube, fresh process")
        end_to_end_aparorder(max(2, args.repeat // 2))


if __name__ == "__main__":
    main()
