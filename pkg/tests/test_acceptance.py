"""Acceptance suite: one test per reproduction criterion, with pinned time budgets.

Every expected value is written out literally here so the gate is self-contained;
nothing is read back from package reference data.
"""
from __future__ import annotations

import itertools
import random
import time
from contextlib import contextmanager

from projcubes.algebra import builtin_group, cyclic_group, small_groups_16
from projcubes.classify import (
    classify_cubes_exhaustive,
    classify_nd_diffsets,
    diagonal_translations,
    kramer_mesner_search,
    table2_row,
    table4_counts,
)
from projcubes.constructions import cyclotomic_nd, paley_nd, twin_prime_power_nd
from projcubes.cube import (
    Cube,
    dimension_bounds,
    distance_distribution,
    is_orthogonal_array,
    parse_cube_file,
    verify_cube,
)
from projcubes.diffset import (
    NdDifferenceSet,
    develop,
    develop_rows,
    is_difference_set,
    is_nd_difference_set,
    enumerate_difference_sets,
    normalize,
)
from projcubes.equivalence import (
    Isotopy,
    Paratopy,
    apply_conjugation,
    apply_isotopy,
    apply_paratopy,
    are_isotopic,
    are_paratopic,
    autoparatopy_order,
    canonical_rows,
    diffset_classes,
)


@contextmanager
def criterion(num: int, seconds: float, label: str):
    t0 = time.monotonic()
    yield
    dt = time.monotonic() - t0
    assert dt < seconds, f"criterion {num} blew its {seconds:g}s budget: {dt:.2f}s"
    print(f"criterion {num:02d} PASS {dt:.2f}s/{seconds:g}s {label}")


def cube_from_rows(v: int, k: int, lam: int, rows) -> Cube:
    body = "\n".join(" ".join(str(x) for x in row) for row in rows)
    text = f"pcube v={v} k={k} lambda={lam} n={len(rows[0])}\n{body}\n"
    return parse_cube_file(text)


C1_ROWS = (
    (1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 3, 1), (2, 4, 6), (2, 7, 5), (3, 1, 2),
    (3, 6, 5), (3, 7, 4), (4, 3, 7), (4, 5, 1), (4, 6, 2), (5, 1, 4), (5, 2, 7),
    (5, 3, 6), (6, 2, 4), (6, 5, 3), (6, 7, 1), (7, 1, 6), (7, 4, 3), (7, 5, 2),
)
C2_ROWS = (
    (1, 2, 7), (1, 4, 3), (1, 6, 5), (2, 3, 6), (2, 4, 5), (2, 7, 1), (3, 1, 4),
    (3, 6, 2), (3, 7, 5), (4, 3, 1), (4, 5, 2), (4, 6, 7), (5, 1, 6), (5, 2, 4),
    (5, 3, 7), (6, 2, 3), (6, 5, 1), (6, 7, 4), (7, 1, 2), (7, 4, 6), (7, 5, 3),
)
C3_ROWS = (
    (1, 2, 4), (1, 4, 6), (1, 6, 2), (2, 3, 7), (2, 4, 3), (2, 7, 4), (3, 1, 6),
    (3, 6, 7), (3, 7, 1), (4, 3, 6), (4, 5, 3), (4, 6, 5), (5, 1, 2), (5, 2, 3),
    (5, 3, 1), (6, 2, 7), (6, 5, 2), (6, 7, 5), (7, 1, 4), (7, 4, 5), (7, 5, 1),
)
C4_ROWS = ((1, 1, 1), (1, 2, 2), (2, 1, 3), (2, 3, 2), (3, 2, 3), (3, 3, 1))
C5_ROWS = (
    (1, 1, 1, 1, 1), (1, 2, 2, 2, 2), (2, 1, 2, 3, 3),
    (2, 3, 3, 1, 2), (3, 2, 3, 3, 1), (3, 3, 1, 2, 3),
)

D1_TUPLES = ((0, 1, 3), (0, 2, 6), (0, 4, 5))
D2_TUPLES = ((0, 1, 2), (0, 2, 4), (0, 4, 1))
D4_TUPLES = ((0, 0, 4), (0, 1, 8), (0, 4, 0), (0, 6, 3), (0, 8, 1), (0, 11, 14))
D5_TUPLES = ((0, 1, 3, 2, 6, 4, 5), (0, 2, 6, 4, 5, 1, 3), (0, 4, 5, 1, 3, 2, 6))

MU_EXPECTED = {
    (7, 3, 1): 7,
    (7, 4, 2): 7,
    (11, 5, 2): 11,
    (11, 6, 3): 11,
    (15, 7, 3): 3,
    (15, 8, 4): 4,
    (13, 4, 1): 13,
    (21, 5, 1): 3,
}
CLASS_COUNTS_EXPECTED = {
    (7, 3, 1): {3: 2, 4: 2, 5: 1, 6: 1, 7: 1},
    (7, 4, 2): {3: 2, 4: 2, 5: 1, 6: 1, 7: 1},
    (11, 5, 2): {3: 2, 4: 4, 5: 6, 6: 6, 7: 4, 8: 2, 9: 1, 10: 1, 11: 1},
    (11, 6, 3): {3: 2, 4: 4, 5: 6, 6: 6, 7: 4, 8: 2, 9: 1, 10: 1, 11: 1},
    (13, 4, 1): {3: 3, 4: 7, 5: 10, 6: 14, 7: 14, 8: 10, 9: 7, 10: 3, 11: 1, 12: 1, 13: 1},
    (15, 7, 3): {3: 3},
    (15, 8, 4): {3: 6, 4: 1},
    (21, 5, 1): {3: 6},
}
TDS_EXPECTED = (0, 192, 192, 192, 192, 64, 0, 128, 256, 448, 192, 704, 320, 448)
NDS_EXPECTED = (0, 3, 4, 3, 2, 2, 0, 2, 2, 2, 2, 2, 2, 1)


def reference_cubes():
    return (
        cube_from_rows(7, 3, 1, C1_ROWS),
        cube_from_rows(7, 3, 1, C2_ROWS),
        cube_from_rows(7, 3, 1, C3_ROWS),
        cube_from_rows(3, 2, 1, C4_ROWS),
        cube_from_rows(3, 2, 1, C5_ROWS),
    )


def test_criterion_01_worked_examples_verify():
    with criterion(1, 1.0, "worked example cubes verify"):
        c1, c2, c3, c4, c5 = reference_cubes()
        for C, v, k, lam, n in (
            (c1, 7, 3, 1, 3), (c2, 7, 3, 1, 3), (c3, 7, 3, 1, 3),
            (c4, 3, 2, 1, 3), (c5, 3, 2, 1, 5),
        ):
            assert C.n == n
            report = verify_cube(C.rows, v, k, lam)
            assert report.ok, report.message


def test_criterion_02_equivalence_and_orders():
    with criterion(2, 10.0, "isotopy/paratopy split and group orders"):
        c1, c2, c3, _, _ = reference_cubes()
        assert are_isotopic(c1, c2) is None
        P = are_paratopic(c1, c2)
        assert P is not None
        assert set(apply_paratopy(c1, P).rows) == set(c2.rows)
        assert autoparatopy_order(c1) == 63
        assert autoparatopy_order(c2) == 63
        assert autoparatopy_order(c3) == 42
        G = builtin_group("Z4xZ4")
        D4 = NdDifferenceSet(G, 6, 2, D4_TUPLES)
        assert autoparatopy_order(develop(D4)) == 16


def test_criterion_03_brute_force_autoparatopy_oracle():
    with criterion(3, 60.0, "graph canonicalizer vs exhaustive paratopy count"):
        for n in (2, 3):
            for C in classify_cubes_exhaustive(3, 2, 1, n):
                rows = set(C.rows)
                count = 0
                for gamma in itertools.permutations(range(n)):
                    conj = apply_conjugation(C, gamma)
                    for perms in itertools.product(
                        itertools.permutations(range(3)), repeat=n
                    ):
                        mapped = {
                            tuple(perms[d][x] for d, x in enumerate(row))
                            for row in conj.rows
                        }
                        if mapped == rows:
                            count += 1
                assert autoparatopy_order(C) == count


def test_criterion_04_table_1_exhaustive():
    with criterion(4, 300.0, "all (3,2,1) cubes by dimension"):
        counts = {n: len(classify_cubes_exhaustive(3, 2, 1, n)) for n in range(2, 7)}
        assert counts == {2: 1, 3: 2, 4: 1, 5: 1, 6: 0}
        assert dimension_bounds(3, 2)[1] == 5


def test_criterion_05_paley_7_emits_reference_set():
    with criterion(5, 1.0, "Paley q=7 alpha=3 and its restrictions"):
        D5 = paley_nd(7, alpha=3)
        assert D5.tuples == D5_TUPLES
        assert tuple(tuple(t[i] for i in (0, 1, 2)) for t in D5.tuples) == D1_TUPLES
        assert tuple(tuple(t[i] for i in (0, 1, 3)) for t in D5.tuples) == D2_TUPLES
        C = develop(D5)
        assert C.n == 7
        assert verify_cube(C.rows, 7, 3, 1).ok


def test_criterion_06_construction_family_sweep():
    with criterion(6, 120.0, "Paley, cyclotomic, and twin prime power families"):
        family = [paley_nd(q) for q in (7, 11, 19, 23, 31)]
        family.append(cyclotomic_nd(37, 4))
        family.append(cyclotomic_nd(73, 8))
        family.extend(twin_prime_power_nd(q) for q in (3, 5, 9, 11))
        for D in family:
            assert is_nd_difference_set(D.group, D.tuples, D.k, D.lam).ok
            C = develop(D)
            assert verify_cube(C.rows, D.group.order, D.k, D.lam).ok


def test_criterion_07_table_2_maximal_dimensions():
    budgets = {7: 300.0, 11: 300.0, 13: 3600.0, 15: 3600.0, 21: 3600.0}
    with criterion(7, sum(budgets[v] for v, _, _ in MU_EXPECTED), "Table 2 sweep"):
        for (v, k, lam), mu in MU_EXPECTED.items():
            t0 = time.monotonic()
            rows = table2_row(v, k, lam)
            for res in rows.values():
                assert res.mu == mu, (v, k, lam, res.group, res.mu)
                assert res.mu_exact
            merged = table4_counts(v, k, lam, results=rows)
            assert merged == CLASS_COUNTS_EXPECTED[(v, k, lam)], (v, k, lam, merged)
            dt = time.monotonic() - t0
            assert dt < budgets[v], f"({v},{k},{lam}) took {dt:.1f}s"
        assert set(table2_row(21, 5, 1)) == {"Z21", "Z7sZ3"}


def test_criterion_08_order_16_difference_sets():
    with criterion(8, 300.0, "(16,6,2) sets in all 14 groups of order 16"):
        groups = small_groups_16()
        for gid in range(1, 15):
            G = groups[gid]
            catalog = enumerate_difference_sets(G, 6, 2)
            assert len(catalog) == TDS_EXPECTED[gid - 1], (gid, len(catalog))
            classes = diffset_classes(G, catalog)
            assert len(classes) == NDS_EXPECTED[gid - 1], (gid, len(classes))
    with criterion(8, 3600.0, "maximal dimension over Z4xZ4"):
        res = classify_nd_diffsets(builtin_group("Z4xZ4"), 6, 2)
        assert res.mu == 4
        assert res.mu_exact


def test_criterion_09_left_development_regression():
    with criterion(9, 1.0, "non-abelian one-sided development failure"):
        G = builtin_group("SD16_4")
        tuples = ((0, 0), (0, 3), (0, 6), (0, 8), (0, 9), (9, 13))
        diffs = {G.sub(t[0], t[1]) for t in tuples}
        assert diffs == {0, 1, 8, 11, 12, 14}
        assert is_difference_set(G, diffs, 6, 2)
        D = NdDifferenceSet(G, 6, 2, tuples)
        C = develop(D)
        assert verify_cube(C.rows, 16, 6, 2).ok
        left = develop_rows(G, tuples, side="left")
        assert len(set(left)) < 16 * 6


def test_criterion_10_property_suites():
    with criterion(10, 300.0, "structure, invariance, and witness properties"):
        corpus = reference_cubes()
        for C in corpus:
            assert is_orthogonal_array(C)
            for r1, r2 in itertools.combinations(C.rows, 2):
                assert sum(a == b for a, b in zip(r1, r2)) <= 1
            dist = list(distance_distribution(C))
            n, k, v = C.n, C.k, C.v
            expected = [0] * (n + 1)
            expected[0] = 1
            expected[n - 1] = n * (k - 1)
            expected[n] = v * k - 1 - n * (k - 1)
            assert dist == expected

        rng = random.Random(20240816)
        for C in corpus:
            base = canonical_rows(C)
            for _ in range(100):
                P = Paratopy(
                    tuple(rng.sample(range(C.n), C.n)),
                    Isotopy(tuple(tuple(rng.sample(range(C.v), C.v)) for _ in range(C.n))),
                )
                assert canonical_rows(apply_paratopy(C, P)) == base

        G7 = cyclic_group(7)
        Gz = builtin_group("Z4xZ4")
        for D in (
            NdDifferenceSet(G7, 3, 1, D1_TUPLES),
            NdDifferenceSet(Gz, 6, 2, D4_TUPLES),
            paley_nd(7, alpha=3),
        ):
            assert set(develop(normalize(D)).rows) == set(develop(D).rows)

        c1, c2, _, c4, _ = corpus
        P = are_paratopic(c1, c2)
        assert P is not None and set(apply_paratopy(c1, P).rows) == set(c2.rows)
        t = Isotopy(tuple(tuple(rng.sample(range(3), 3)) for _ in range(3)))
        moved = apply_isotopy(c4, t)
        w = are_isotopic(c4, moved)
        assert w is not None and set(apply_isotopy(c4, w).rows) == set(moved.rows)


def test_criterion_11_kramer_mesner_oracle():
    with criterion(11, 300.0, "orbit search agrees with the classifications"):
        G7 = cyclic_group(7)
        km = kramer_mesner_search(7, 3, 1, 3, diagonal_translations(G7, 3))
        classified = classify_nd_diffsets(G7, 3, 1, max_dim=3).developments(3)
        assert len(km) == len(classified) == 2
        assert {canonical_rows(C) for C in km} == {
            canonical_rows(C) for C in classified
        }

        km_trivial = kramer_mesner_search(3, 2, 1, 3, [])
        table1 = classify_cubes_exhaustive(3, 2, 1, 3)
        assert len(km_trivial) == len(table1) == 2
        assert {canonical_rows(C) for C in km_trivial} == {
            canonical_rows(C) for C in table1
        }
