"""Permutation groups from generators: order and membership via a stabilizer chain."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence


def pmul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Composition applying q first, then p."""
    return tuple(p[x] for x in q)


def pinv(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


class PermGroup:
    """Stabilizer chain (Schreier-Sims).  Levels are completed by a fixpoint pass:
    a level is done when all its Schreier generators sift to the identity below it."""

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = ()):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.strong: list[tuple[int, ...]] = []
        self._trans: list[dict[int, tuple[int, ...]]] = []
        changed = False
        for g in gens:
            changed |= self._insert(tuple(g))
        if changed:
            self._complete()

    # -- chain maintenance ------------------------------------------------

    def _level_gens(self, i: int) -> list[tuple[int, ...]]:
        base = self.base[:i]
        return [g for g in self.strong if all(g[b] == b for b in base)]

    def _rebuild_orbit(self, i: int) -> None:
        b = self.base[i]
        gens = self._level_gens(i)
        trans = {b: self.identity}
        queue = [b]
        while queue:
            x = queue.pop()
            tx = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = pmul(g, tx)
                    queue.append(y)
        self._trans[i] = trans

    def _sift(self, p: tuple[int, ...], start: int = 0) -> Optional[tuple[int, ...]]:
        """Reduce p through levels >= start; None if it reduces to the identity."""
        for i in range(start, len(self.base)):
            rep = self._trans[i].get(p[self.base[i]])
            if rep is None:
                return p
            p = pmul(pinv(rep), p)
        return None if p == self.identity else p

    def _insert(self, p: tuple[int, ...]) -> bool:
        """Add p as a strong generator (plus a base point if p fixes the whole base)."""
        if len(p) != self.degree:
            raise ValueError("degree mismatch")
        if p == self.identity or p in self.strong:
            return False
        if all(p[b] == b for b in self.base):
            moved = min(x for x in range(self.degree) if p[x] != x)
            self.base.append(moved)
            self._trans.append({})
        self.strong.append(p)
        return True

    def _complete(self) -> None:
        """Fixpoint: rebuild orbits, sift all Schreier generators, insert residues."""
        pending = True
        while pending:
            pending = False
            for i in range(len(self.base)):
                self._rebuild_orbit(i)
            for i in range(len(self.base)):
                gens = self._level_gens(i)
                trans = self._trans[i]
                for x, tx in list(trans.items()):
                    for g in gens:
                        rep = trans.get(g[x])
                        if rep is None:
                            pending = True
                            continue
                        schreier = pmul(pinv(rep), pmul(g, tx))
                        residue = self._sift(schreier, i + 1)
                        if residue is not None:
                            self._insert(residue)
                            pending = True
                if pending:
                    break

    # -- public api --------------------------------------------------------

    def add(self, p: Sequence[int]) -> bool:
        """Insert a permutation; returns True if it enlarged the group."""
        p = tuple(p)
        if len(p) != self.degree:
            raise ValueError("degree mismatch")
        if self._sift(p) is None:
            return False
        self._insert(p)
        self._complete()
        return True

    def order(self) -> int:
        n = 1
        for trans in self._trans:
            n *= len(trans)
        return n

    def __contains__(self, p: Sequence[int]) -> bool:
        return self._sift(tuple(p)) is None


def group_order(degree: int, gens: Iterable[Sequence[int]]) -> int:
    return PermGroup(degree, gens).order()


def closure(degree: int, gens: Iterable[Sequence[int]], limit: int = 10**6) -> list[tuple[int, ...]]:
    """All elements generated by gens (BFS); raises if more than limit."""
    identity = tuple(range(degree))
    gen_list = [tuple(g) for g in gens if tuple(g) != identity]
    seen = {identity}
    queue = [identity]
    while queue:
        x = queue.pop()
        for g in gen_list:
            y = pmul(g, x)
            if y not in seen:
                if len(seen) >= limit:
                    raise RuntimeError(f"closure exceeds {limit} elements")
                seen.add(y)
                queue.append(y)
    return sorted(seen)
