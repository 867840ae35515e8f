"""Kernel dispatch: the compiled extension when available, pure Python otherwise.

Set PROJCUBES_PURE=1 to force the pure implementation.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("PROJCUBES_PURE"):
    _impl = _pykernels
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

IMPLEMENTATION: str = _impl.IMPLEMENTATION


def refine_partition(indptr, indices, order, pos, cstart, seeds) -> None:
    """Equitable refinement of an ordered partition, in place."""
    _impl.refine_partition(indptr, indices, order, pos, cstart, seeds)


def extend_assignments(add_flat, neg, d_flat, k, n, s_elems, catalog_masks, catalog_masks_np, v):
    """Valid assignments of a candidate set's elements to k tuple slots.

    catalog_masks is a sorted list of Python int bitmasks, catalog_masks_np the
    same data as a uint64 array; the compiled path needs v <= 64 and uses the
    array form, the pure path handles any v from the list form.
    """
    if _impl is not _pykernels and v <= 64:
        return _impl.extend_assignments(add_flat, neg, d_flat, k, n, s_elems, catalog_masks_np, v)
    return _pykernels.extend_assignments(add_flat, neg, d_flat, k, n, s_elems, catalog_masks, v)
