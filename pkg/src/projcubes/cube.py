"""Projection n-cubes stored as sorted row sets, their verification and bounds."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class Cube:
    """A candidate (v,k,lambda) projection n-cube: vk distinct sorted rows over 0..v-1.

    Symbols are 0-based internally; file formats and printed output are 1-based.
    """

    v: int
    k: int
    lam: int
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, v: int, k: int, lam: int, n: int, rows: Iterable[Sequence[int]]):
        rs = sorted(tuple(int(x) for x in row) for row in rows)
        if n < 2:
            raise ValueError("dimension must be at least 2")
        if len(rs) != v * k:
            raise ValueError(f"expected {v * k} rows, got {len(rs)}")
        if len(set(rs)) != len(rs):
            raise ValueError("duplicate rows")
        for row in rs:
            if len(row) != n:
                raise ValueError("row length differs from n")
            if any(x < 0 or x >= v for x in row):
                raise ValueError("symbol out of range")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(rs))

    def np_rows(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int32)


@dataclass(frozen=True)
class DesignMatrix:
    """Projection counts: entries[i][j] = number of rows with the (i,j) pair."""

    v: int
    entries: np.ndarray

    def __eq__(self, other) -> bool:  # type: ignore[override]
        return isinstance(other, DesignMatrix) and self.v == other.v and np.array_equal(self.entries, other.entries)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    condition: Optional[str] = None
    pair: Optional[tuple[int, int]] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _fail(condition: str, pair: Optional[tuple[int, int]], message: str) -> VerificationReport:
    return VerificationReport(False, condition, pair, message)


def projection(C: Cube, x: int, y: int) -> DesignMatrix:
    """Counts of (row_x, row_y) pairs; x, y are 1-based with x < y."""
    if not (1 <= x < y <= C.n):
        raise ValueError(f"bad coordinate pair ({x},{y}) for n={C.n}")
    R = C.np_rows()
    idx = R[:, x - 1] * C.v + R[:, y - 1]
    M = np.bincount(idx, minlength=C.v * C.v).reshape(C.v, C.v)
    return DesignMatrix(C.v, M)


def is_symmetric_design(M: DesignMatrix | np.ndarray, v: int, k: int, lam: int) -> bool:
    """True iff M is a 0/1 matrix with row/column sums k and off-diagonal inner products lam."""
    A = M.entries if isinstance(M, DesignMatrix) else np.asarray(M)
    if A.shape != (v, v) or A.min() < 0 or A.max() > 1:
        return False
    if not (A.sum(axis=1) == k).all() or not (A.sum(axis=0) == k).all():
        return False
    expected = np.full((v, v), lam, dtype=A.dtype)
    np.fill_diagonal(expected, k)
    return bool(np.array_equal(A @ A.T, expected))


def verify_cube(rows, v: Optional[int] = None, k: Optional[int] = None, lam: Optional[int] = None) -> VerificationReport:
    """Check the projection-cube conditions for every coordinate pair; never raises on bad data."""
    if isinstance(rows, Cube):
        v, k, lam = rows.v, rows.k, rows.lam
        rows = rows.rows
    if v is None or k is None or lam is None:
        raise TypeError("v, k and lam are required when rows is not a Cube")
    try:
        rs = [tuple(int(x) for x in row) for row in rows]
    except (TypeError, ValueError):
        return _fail("malformed", None, "rows are not tuples of integers")
    if not rs:
        return _fail("cardinality", None, "empty row set")
    n = len(rs[0])
    if n < 2:
        return _fail("malformed", None, "rows shorter than 2")
    if any(len(r) != n for r in rs):
        return _fail("malformed", None, "ragged rows")
    if any(x < 0 or x >= v for r in rs for x in r):
        return _fail("malformed", None, "symbol out of range")
    if len(set(rs)) != len(rs):
        return _fail("cardinality", None, "duplicate rows")
    if len(rs) != v * k:
        return _fail("cardinality", None, f"cardinality {len(rs)} != vk = {v * k}")
    R = np.array(rs, dtype=np.int32)
    expected = np.full((v, v), lam, dtype=np.int64)
    np.fill_diagonal(expected, k)
    for x in range(n - 1):
        for y in range(x + 1, n):
            M = np.bincount(R[:, x] * v + R[:, y], minlength=v * v).reshape(v, v)
            pair = (x + 1, y + 1)
            if M.max() > 1:
                return _fail("0/1", pair, f"projection {pair} has a repeated pair")
            if not (M.sum(axis=1) == k).all():
                return _fail("1", pair, f"projection {pair} has a row count != k")
            if not (M.sum(axis=0) == k).all():
                return _fail("2", pair, f"projection {pair} has a column count != k")
            if not np.array_equal(M @ M.T, expected):
                return _fail("3", pair, f"projection {pair} has a pair count != lambda")
    return VerificationReport(True, message="ok")


def is_orthogonal_array(C: Cube) -> bool:
    """True iff every symbol appears exactly k times in every coordinate (OA(vk,n,v,1))."""
    R = C.np_rows()
    for x in range(C.n):
        if not (np.bincount(R[:, x], minlength=C.v) == C.k).all():
            return False
    return True


def distance_distribution(C: Cube) -> tuple[int, ...]:
    """(A_0,...,A_n) with A_i = (pairs at Hamming distance i) / |rows|; exact for valid cubes."""
    R = C.np_rows()
    m = len(R)
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for i in range(m):
        d = (R != R[i]).sum(axis=1)
        counts += np.bincount(d, minlength=C.n + 1)
    if (counts % m).any():
        raise ValueError("distance distribution is not integral; cube does not verify")
    return tuple(int(x) for x in counts // m)


def dimension_bounds(v: int, k: int) -> tuple[Optional[int], Optional[int]]:
    """(v(v+1)/2, (vk-1)/(k-1)); (None, None) signals unbounded for k < 2."""
    if k < 2:
        return (None, None)
    return (v * (v + 1) // 2, (v * k - 1) // (k - 1))


def restrict(C: Cube, coords: Sequence[int]) -> Cube:
    """Project rows to the given 1-based coordinates (at least 2); caller re-verifies."""
    cs = list(coords)
    if len(cs) < 2:
        raise ValueError("need at least 2 coordinates")
    if len(set(cs)) != len(cs) or any(c < 1 or c > C.n for c in cs):
        raise ValueError("coordinates out of range")
    rows = {tuple(row[c - 1] for c in cs) for row in C.rows}
    return Cube(C.v, C.k, C.lam, len(cs), rows)


def format_cube_file(C: Cube) -> str:
    lines = [f"pcube v={C.v} k={C.k} lambda={C.lam} n={C.n}"]
    lines.extend(" ".join(str(x + 1) for x in row) for row in C.rows)
    return "\n".join(lines) + "\n"


def parse_cube_file(text: str) -> Cube:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("pcube "):
        raise ValueError("missing pcube header")
    fields = dict(part.split("=", 1) for part in lines[0].split()[1:])
    try:
        v, k, lam, n = (int(fields[key]) for key in ("v", "k", "lambda", "n"))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad pcube header: {exc}") from None
    rows = []
    for ln in lines[1:]:
        row = tuple(int(x) - 1 for x in ln.split())
        if len(row) != n:
            raise ValueError(f"row {ln!r} does not have {n} entries")
        if any(x < 0 or x >= v for x in row):
            raise ValueError(f"row {ln!r} has a symbol outside 1..{v}")
        rows.append(row)
    return Cube(v, k, lam, n, rows)
