"""Difference sets over a GroupTable, their n-dimensional version, and developments."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

from .algebra import GroupTable, resolve_group
from .cube import Cube, VerificationReport

ENUMERATION_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """Raised when a search would exceed its configured budget."""


def difference_counts(G: GroupTable, elements: Sequence[int]) -> list[int]:
    """counts[g] = number of ordered pairs (d1, d2), d1 != d2, with d1 - d2 = g."""
    counts = [0] * G.order
    table = G.table
    neg = [G.neg(x) for x in range(G.order)]
    for d1 in elements:
        row = table[d1]
        for d2 in elements:
            if d1 != d2:
                counts[row[neg[d2]]] += 1
    return counts


def is_difference_set(G: GroupTable, S: Iterable[int], k: int, lam: int) -> bool:
    """True iff S has k elements and every g != 0 is a right difference exactly lam times."""
    elements = set(S)
    if len(elements) != k:
        return False
    counts = difference_counts(G, sorted(elements))
    return counts[0] == 0 and all(c == lam for c in counts[1:])


def enumerate_difference_sets(G: GroupTable, k: int, lam: int, budget: int = ENUMERATION_BUDGET) -> list[tuple[int, ...]]:
    """All (v,k,lam) difference sets in G, as sorted tuples, in lexicographic order."""
    v = G.order
    if comb(v, k) > budget:
        raise BudgetExceeded(f"C({v},{k}) exceeds the enumeration budget {budget}")
    table = G.table
    neg = [G.neg(x) for x in range(v)]
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []
    counts = [0] * v

    def add(e: int) -> bool:
        ok = True
        for d in chosen:
            for g in (table[d][neg[e]], table[e][neg[d]]):
                counts[g] += 1
                if counts[g] > lam:
                    ok = False
        chosen.append(e)
        return ok

    def remove() -> None:
        e = chosen.pop()
        for d in chosen:
            counts[table[d][neg[e]]] -= 1
            counts[table[e][neg[d]]] -= 1

    def dfs(lo: int) -> None:
        if len(chosen) == k:
            if all(c == lam for c in counts[1:]):
                out.append(tuple(chosen))
            return
        for e in range(lo, v - (k - len(chosen)) + 1):
            ok = add(e)
            if ok:
                dfs(e + 1)
            remove()

    dfs(0)
    return out


@dataclass(frozen=True)
class OrdinaryDifferenceSet:
    """A (v,k,lambda) difference set: k elements of G whose right differences cover G-minus-0 lam times each."""

    group: GroupTable
    k: int
    lam: int
    elements: tuple[int, ...]

    def __init__(self, group: GroupTable, k: int, lam: int, elements: Iterable[int], check: bool = True):
        elems = tuple(sorted(int(x) for x in elements))
        if check and not is_difference_set(group, elems, k, lam):
            raise ValueError(f"not a ({group.order},{k},{lam}) difference set in {group.name}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "elements", elems)

    @property
    def v(self) -> int:
        return self.group.order


@dataclass(frozen=True)
class NdDifferenceSet:
    """k n-tuples over G whose coordinatewise right differences form difference sets for every pair."""

    group: GroupTable
    k: int
    lam: int
    n: int
    tuples: tuple[tuple[int, ...], ...]

    def __init__(self, group: GroupTable, k: int, lam: int, tuples: Iterable[Sequence[int]], check: bool = True):
        ts = sorted(tuple(int(x) for x in t) for t in tuples)
        if len(ts) != k or len(set(ts)) != k:
            raise ValueError(f"expected {k} distinct tuples, got {len(ts)}")
        n = len(ts[0])
        if n < 2:
            raise ValueError("dimension must be at least 2")
        if any(len(t) != n for t in ts):
            raise ValueError("ragged tuples")
        if any(x < 0 or x >= group.order for t in ts for x in t):
            raise ValueError("element index out of range")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "tuples", tuple(ts))
        if check:
            report = is_nd_difference_set(group, ts, k, lam)
            if not report:
                raise ValueError(report.message)

    @property
    def v(self) -> int:
        return self.group.order

    def restrict(self, coords: Sequence[int]) -> "NdDifferenceSet":
        """Keep the given 1-based coordinates (at least 2, distinct, in range)."""
        cs = list(coords)
        if len(cs) < 2 or len(set(cs)) != len(cs) or any(c < 1 or c > self.n for c in cs):
            raise ValueError("bad coordinate selection")
        return NdDifferenceSet(self.group, self.k, self.lam,
                               [tuple(t[c - 1] for c in cs) for t in self.tuples])


def coordinate_differences(D: NdDifferenceSet | Sequence[Sequence[int]], x: int, y: int,
                           group: Optional[GroupTable] = None) -> tuple[int, ...]:
    """Sorted set {d_x - d_y} for 1-based x < y; fewer than k values means D is invalid."""
    if isinstance(D, NdDifferenceSet):
        group, tuples = D.group, D.tuples
    else:
        tuples = tuple(tuple(t) for t in D)
    if group is None:
        raise TypeError("group required when D is a plain tuple list")
    n = len(tuples[0])
    if not (1 <= x < y <= n):
        raise ValueError(f"bad coordinate pair ({x},{y})")
    return tuple(sorted({group.sub(t[x - 1], t[y - 1]) for t in tuples}))


def is_nd_difference_set(G: GroupTable, tuples: Sequence[Sequence[int]], k: int, lam: int) -> VerificationReport:
    """Check Definition-style validity: every coordinate pair yields a (v,k,lam) difference set."""
    ts = [tuple(t) for t in tuples]
    if len(ts) != k or len(set(ts)) != k:
        return VerificationReport(False, "cardinality", None, f"expected {k} distinct tuples")
    n = len(ts[0])
    if n < 2 or any(len(t) != n for t in ts):
        return VerificationReport(False, "malformed", None, "ragged tuples or dimension < 2")
    for x in range(1, n):
        for y in range(x + 1, n + 1):
            diffs = [G.sub(t[x - 1], t[y - 1]) for t in ts]
            if len(set(diffs)) != k:
                return VerificationReport(False, "distinct", (x, y),
                                          f"coordinate pair ({x},{y}) has repeated differences")
            if not is_difference_set(G, diffs, k, lam):
                return VerificationReport(False, "counts", (x, y),
                                          f"coordinate pair ({x},{y}) differences are not a "
                                          f"({G.order},{k},{lam}) difference set")
    return VerificationReport(True, message="ok")


def develop_rows(G: GroupTable, tuples: Sequence[Sequence[int]], side: str = "right") -> tuple[tuple[int, ...], ...]:
    """Distinct translated rows {(d_1+g,...,d_n+g)}; 'left' uses g+d_j (diagnostic, may collapse rows)."""
    table = G.table
    rows = set()
    for t in tuples:
        for g in range(G.order):
            if side == "right":
                rows.add(tuple(table[d][g] for d in t))
            elif side == "left":
                rows.add(tuple(table[g][d] for d in t))
            else:
                raise ValueError(f"unknown side {side!r}")
    return tuple(sorted(rows))


def develop(D: NdDifferenceSet, check: bool = True) -> Cube:
    """The development of D: one row per (tuple, group element) under right translation."""
    if check:
        report = is_nd_difference_set(D.group, D.tuples, D.k, D.lam)
        if not report:
            raise ValueError(report.message)
    rows = develop_rows(D.group, D.tuples, "right")
    return Cube(D.v, D.k, D.lam, D.n, rows)


def normalize(D: NdDifferenceSet) -> NdDifferenceSet:
    """Right-translate each tuple by the inverse of its first entry; development is unchanged."""
    G = D.group
    table = G.table
    out = []
    for t in D.tuples:
        g = G.neg(t[0])
        out.append(tuple(table[d][g] for d in t))
    return NdDifferenceSet(G, D.k, D.lam, out, check=False)


def lift_to_2d(S: OrdinaryDifferenceSet) -> NdDifferenceSet:
    """The 2-dimensional difference set {(0, s) : s in S}."""
    return NdDifferenceSet(S.group, S.k, S.lam, [(0, s) for s in S.elements], check=False)


def format_ndiffset_file(D: NdDifferenceSet) -> str:
    lines = [f"ndiffset v={D.v} k={D.k} lambda={D.lam} n={D.n} group={D.group.name}"]
    lines.extend(" ".join(str(x) for x in t) for t in D.tuples)
    return "\n".join(lines) + "\n"


def parse_ndiffset_file(text: str, search: Sequence[str] = (), check: bool = True) -> NdDifferenceSet:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("ndiffset "):
        raise ValueError("missing ndiffset header")
    fields = dict(part.split("=", 1) for part in lines[0].split()[1:])
    try:
        v, k, lam, n = (int(fields[key]) for key in ("v", "k", "lambda", "n"))
        name = fields["group"]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad ndiffset header: {exc}") from None
    G = resolve_group(name, search)
    if G.order != v:
        raise ValueError(f"group {name} has order {G.order}, header says v={v}")
    tuples = []
    for ln in lines[1:]:
        t = tuple(int(x) for x in ln.split())
        if len(t) != n:
            raise ValueError(f"tuple {ln!r} does not have {n} entries")
        tuples.append(t)
    return NdDifferenceSet(G, k, lam, tuples, check=check)
