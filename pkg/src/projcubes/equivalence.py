"""Isotopies, conjugations, paratopies, canonical forms and equivalence tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ._canon import ColoredGraph, canonical_labeling, cube_graph, invariant_trace
from ._permgroup import PermGroup, group_order
from .algebra import GroupTable, group_automorphisms, _generating_sequence
from .cube import Cube


def _check_perm(p: Sequence[int], v: int, what: str) -> tuple[int, ...]:
    t = tuple(int(x) for x in p)
    if len(t) != v or sorted(t) != list(range(v)):
        raise ValueError(f"{what} is not a permutation of 0..{v - 1}")
    return t


@dataclass(frozen=True)
class Isotopy:
    """One symbol permutation per coordinate, applied coordinatewise."""

    perms: tuple[tuple[int, ...], ...]

    def __init__(self, perms: Iterable[Sequence[int]]):
        ps = tuple(tuple(int(x) for x in p) for p in perms)
        if not ps:
            raise ValueError("empty isotopy")
        v = len(ps[0])
        ps = tuple(_check_perm(p, v, "isotopy component") for p in ps)
        object.__setattr__(self, "perms", ps)

    @property
    def n(self) -> int:
        return len(self.perms)

    @property
    def v(self) -> int:
        return len(self.perms[0])


@dataclass(frozen=True)
class Paratopy:
    """A conjugation (coordinate permutation) followed by an isotopy."""

    conj: tuple[int, ...]
    iso: Isotopy

    def __init__(self, conj: Sequence[int], iso: Isotopy):
        c = _check_perm(conj, len(iso.perms), "conjugation")
        object.__setattr__(self, "conj", c)
        object.__setattr__(self, "iso", iso)

    @property
    def n(self) -> int:
        return len(self.conj)

    @property
    def v(self) -> int:
        return self.iso.v


def identity_isotopy(v: int, n: int) -> Isotopy:
    return Isotopy([tuple(range(v))] * n)


def identity_paratopy(v: int, n: int) -> Paratopy:
    return Paratopy(tuple(range(n)), identity_isotopy(v, n))


def apply_isotopy(C: Cube, t: Isotopy) -> Cube:
    if t.n != C.n or t.v != C.v:
        raise ValueError("isotopy arity does not match the cube")
    rows = [tuple(t.perms[c][r[c]] for c in range(C.n)) for r in C.rows]
    return Cube(C.v, C.k, C.lam, C.n, rows)


def apply_conjugation(C: Cube, gamma: Sequence[int]) -> Cube:
    g = _check_perm(gamma, C.n, "conjugation")
    rows = []
    for r in C.rows:
        nr = [0] * C.n
        for c in range(C.n):
            nr[g[c]] = r[c]
        rows.append(tuple(nr))
    return Cube(C.v, C.k, C.lam, C.n, rows)


def apply_paratopy(C: Cube, P: Paratopy) -> Cube:
    return apply_isotopy(apply_conjugation(C, P.conj), P.iso)


def compose_paratopies(Q: Paratopy, P: Paratopy) -> Paratopy:
    """The paratopy acting as P first, then Q."""
    if Q.n != P.n or Q.v != P.v:
        raise ValueError("arity mismatch")
    n = Q.n
    gq, gp = Q.conj, P.conj
    gq_inv = [0] * n
    for c in range(n):
        gq_inv[gq[c]] = c
    conj = tuple(gq[gp[c]] for c in range(n))
    perms = []
    for c in range(n):
        ap = P.iso.perms[gq_inv[c]]
        aq = Q.iso.perms[c]
        perms.append(tuple(aq[ap[s]] for s in range(Q.v)))
    return Paratopy(conj, Isotopy(perms))


def inverse_paratopy(P: Paratopy) -> Paratopy:
    n, v = P.n, P.v
    conj = [0] * n
    for c in range(n):
        conj[P.conj[c]] = c
    perms: list[tuple[int, ...]] = [()] * n
    for e in range(n):
        a = P.iso.perms[P.conj[e]]
        inv = [0] * v
        for s in range(v):
            inv[a[s]] = s
        perms[e] = tuple(inv)
    return Paratopy(tuple(conj), Isotopy(perms))


def inverse_isotopy(t: Isotopy) -> Isotopy:
    perms = []
    for p in t.perms:
        inv = [0] * len(p)
        for s, x in enumerate(p):
            inv[x] = s
        perms.append(tuple(inv))
    return Isotopy(perms)


def compose_isotopies(q: Isotopy, p: Isotopy) -> Isotopy:
    if q.n != p.n or q.v != p.v:
        raise ValueError("arity mismatch")
    return Isotopy([tuple(qq[pp[s]] for s in range(q.v)) for qq, pp in zip(q.perms, p.perms)])


def _paratopy_from_labeling(order: Sequence[int], m: int, v: int, n: int) -> Paratopy:
    """Read the coordinate and symbol relabeling off a canonical graph labeling."""
    N = m + n * v + n
    pos = [0] * N
    for p, u in enumerate(order):
        pos[u] = p
    cpos = [pos[m + n * v + c] for c in range(n)]
    rank = {p: i for i, p in enumerate(sorted(cpos))}
    conj = tuple(rank[cpos[c]] for c in range(n))
    perms: list[tuple[int, ...]] = [()] * n
    for c in range(n):
        cellpos = [pos[m + c * v + s] for s in range(v)]
        crank = {p: i for i, p in enumerate(sorted(cellpos))}
        perms[conj[c]] = tuple(crank[cellpos[s]] for s in range(v))
    return Paratopy(conj, Isotopy(perms))


def _paratopy_from_graph_auto(gp: Sequence[int], m: int, v: int, n: int) -> Paratopy:
    base = m + n * v
    conj = tuple(gp[base + c] - base for c in range(n))
    perms: list[tuple[int, ...]] = [()] * n
    for c in range(n):
        tgt = conj[c]
        perms[tgt] = tuple(gp[m + c * v + s] - m - tgt * v for s in range(v))
    return Paratopy(conj, Isotopy(perms))


@dataclass
class CanonicalCertificate:
    """Canonical representative of a paratopy class, with the mapping into it.

    apar_order and atop_order are computed on first access from the stored
    generators; the canonical rows alone decide equivalence.
    """

    canonical_rows: tuple[tuple[int, ...], ...]
    to_canonical: Paratopy
    generators: tuple[Paratopy, ...]
    _graph_gens: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _degree: int = 0
    _apar: Optional[int] = field(repr=False, default=None)

    @property
    def apar_order(self) -> int:
        if self._apar is None:
            self._apar = PermGroup(self._degree, self._graph_gens).order()
        return self._apar

    @property
    def atop_order(self) -> int:
        n = self.to_canonical.n
        conj_parts = [g.conj for g in self.generators]
        return self.apar_order // group_order(n, conj_parts)


def _canonical_data(C: Cube, isotopy: bool):
    g = cube_graph(C.rows, C.v, C.n, isotopy=isotopy)
    order, graph_autos = canonical_labeling(g)
    P = _paratopy_from_labeling(order, len(C.rows), C.v, C.n)
    canon = apply_paratopy(C, P)
    return canon.rows, P, graph_autos, g.n_vertices


def canonical_form(C: Cube) -> CanonicalCertificate:
    """Canonical rows under paratopy, the paratopy reaching them, and autoparatopy generators."""
    rows, P, graph_autos, degree = _canonical_data(C, isotopy=False)
    gens = []
    for gp in graph_autos:
        par = _paratopy_from_graph_auto(gp, len(C.rows), C.v, C.n)
        if apply_paratopy(C, par).rows != C.rows:
            raise AssertionError("derived generator does not preserve the cube")
        gens.append(par)
    return CanonicalCertificate(rows, P, tuple(gens), tuple(graph_autos), degree)


def canonical_rows(C: Cube) -> tuple[tuple[int, ...], ...]:
    """Canonical representative rows only (no certificate bookkeeping)."""
    rows, _, _, _ = _canonical_data(C, isotopy=False)
    return rows


def cube_invariant(C: Cube) -> bytes:
    """Cheap paratopy-invariant fingerprint used to pre-bucket candidates."""
    return invariant_trace(cube_graph(C.rows, C.v, C.n, isotopy=False))


def are_paratopic(C1: Cube, C2: Cube) -> Optional[Paratopy]:
    """A paratopy taking C1 to C2, or None; parameters must agree."""
    if (C1.v, C1.k, C1.lam, C1.n) != (C2.v, C2.k, C2.lam, C2.n):
        raise ValueError("cubes have different parameters")
    r1, p1, _, _ = _canonical_data(C1, isotopy=False)
    r2, p2, _, _ = _canonical_data(C2, isotopy=False)
    if r1 != r2:
        return None
    w = compose_paratopies(inverse_paratopy(p2), p1)
    if apply_paratopy(C1, w).rows != C2.rows:
        raise AssertionError("paratopy witness failed validation")
    return w


def are_isotopic(C1: Cube, C2: Cube) -> Optional[Isotopy]:
    """An isotopy taking C1 to C2, or None; parameters must agree."""
    if (C1.v, C1.k, C1.lam, C1.n) != (C2.v, C2.k, C2.lam, C2.n):
        raise ValueError("cubes have different parameters")
    r1, p1, _, _ = _canonical_data(C1, isotopy=True)
    r2, p2, _, _ = _canonical_data(C2, isotopy=True)
    if r1 != r2:
        return None
    w = compose_paratopies(inverse_paratopy(p2), p1)
    if w.conj != tuple(range(C1.n)):
        raise AssertionError("isotopy witness moved coordinates")
    iso = w.iso
    if apply_isotopy(C1, iso).rows != C2.rows:
        raise AssertionError("isotopy witness failed validation")
    return iso


@dataclass(frozen=True)
class AutotopyGroup:
    order: int
    generators: tuple[Isotopy, ...]


def autotopy_group(C: Cube) -> AutotopyGroup:
    """Order and generators of the autotopy group (coordinates fixed)."""
    g = cube_graph(C.rows, C.v, C.n, isotopy=True)
    _, graph_autos = canonical_labeling(g)
    gens = []
    for gp in graph_autos:
        par = _paratopy_from_graph_auto(gp, len(C.rows), C.v, C.n)
        if par.conj != tuple(range(C.n)):
            raise AssertionError("autotopy moved a coordinate")
        if apply_isotopy(C, par.iso).rows != C.rows:
            raise AssertionError("derived autotopy does not preserve the cube")
        gens.append(par.iso)
    order = PermGroup(g.n_vertices, graph_autos).order()
    return AutotopyGroup(order, tuple(gens))


def autoparatopy_order(C: Cube) -> int:
    return canonical_form(C).apar_order


def _aut_generators(G: GroupTable) -> list[tuple[int, ...]]:
    """A small generating subset of the automorphism group of G."""
    if G._autgens is not None:
        return G._autgens
    auts = group_automorphisms(G)
    pg = PermGroup(G.order)
    gens: list[tuple[int, ...]] = []
    for a in auts:
        if pg.add(a):
            gens.append(a)
            if pg.order() == len(auts):
                break
    G._autgens = gens
    return gens


def _diffset_orbit(G: GroupTable, start: frozenset[int]) -> set[frozenset[int]]:
    """BFS orbit of a subset under group automorphisms and right translations."""
    autgens = _aut_generators(G)
    transgens = _generating_sequence(G)[0]
    table = G.table
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            images = [frozenset(a[x] for x in s) for a in autgens]
            images.extend(frozenset(table[x][g] for x in s) for g in transgens)
            for img in images:
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def diffset_equivalent(G: GroupTable, S1: Iterable[int], S2: Iterable[int]) -> bool:
    """True when S2 = phi(S1) + g for some automorphism phi and translation g."""
    a, b = frozenset(int(x) for x in S1), frozenset(int(x) for x in S2)
    if len(a) != len(b):
        return False
    if a == b:
        return True
    return b in _diffset_orbit(G, a)


def diffset_classes(G: GroupTable, sets: Sequence[Sequence[int]]) -> list[list[tuple[int, ...]]]:
    """Partition difference sets into equivalence classes; classes ordered by least member."""
    pool = {tuple(sorted(int(x) for x in s)) for s in sets}
    classes = []
    while pool:
        rep = min(pool)
        orbit = _diffset_orbit(G, frozenset(rep))
        members = sorted(t for t in pool if frozenset(t) in orbit)
        for t in members:
            pool.discard(t)
        classes.append(members)
    classes.sort(key=lambda ms: ms[0])
    return classes
