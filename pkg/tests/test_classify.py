"""Classification pipelines: exhaustive search, extension, Kramer-Mesner, tables."""
from __future__ import annotations

import random

import pytest

from projcubes.algebra import builtin_group, cyclic_group
from projcubes.classify import (
    classify_cubes_exhaustive,
    classify_nd_diffsets,
    diagonal_translations,
    extend_diffsets,
    extract_diffset,
    kramer_mesner_search,
    table1_counts,
    table2_row,
    table3_row,
    table4_counts,
)
from projcubes.cube import verify_cube
from projcubes.diffset import (
    BudgetExceeded,
    NdDifferenceSet,
    develop,
    enumerate_difference_sets,
    lift_to_2d,
    normalize,
)
from projcubes.constructions import paley_ordinary
from projcubes.equivalence import (
    Isotopy,
    are_paratopic,
    canonical_rows,
    identity_isotopy,
)
from projcubes.refdata import (
    DIFFSET_731_3D_A,
    TABLE1_COUNTS,
    TABLE2_MU,
    TABLE4_COUNTS,
)


def test_table1_counts():
    assert table1_counts(6) == TABLE1_COUNTS


def test_exhaustive_321_by_dimension():
    for n, expected in TABLE1_COUNTS.items():
        cubes = classify_cubes_exhaustive(3, 2, 1, n)
        assert len(cubes) == expected, n
        for C in cubes:
            assert verify_cube(C.rows, 3, 2, 1).ok
        for i in range(len(cubes)):
            for j in range(i + 1, len(cubes)):
                assert are_paratopic(cubes[i], cubes[j]) is None


def test_exhaustive_rejects_large_v():
    with pytest.raises(ValueError):
        classify_cubes_exhaustive(5, 4, 3, 3)


def test_exhaustive_inadmissible_parameters_give_nothing():
    assert classify_cubes_exhaustive(3, 2, 2, 3) == []


def test_z3_walkthrough_lift_dedup_extend():
    G = cyclic_group(3)
    catalog = enumerate_difference_sets(G, 2, 1)
    assert catalog == [(0, 1), (0, 2), (1, 2)]
    lifts = [
        normalize(NdDifferenceSet(G, 2, 1, tuple(zip((0, 0), S))))
        for S in catalog
    ]
    # all three lifts develop to one paratopy class
    assert len({canonical_rows(develop(D)) for D in lifts}) == 1
    # one extension step reaches dimension 3, the next is empty
    reps3 = extend_diffsets(lifts[:1], catalog)
    assert len(reps3) == 1 and reps3[0].n == 3
    assert extend_diffsets(reps3, catalog) == []

    result = classify_nd_diffsets(G, 2, 1)
    assert result.mu == 3
    assert result.mu_exact
    assert result.counts() == {2: 1, 3: 1}
    devs = result.developments(3)
    assert len(devs) == 1
    assert verify_cube(devs[0].rows, 3, 2, 1).ok


def test_extension_from_permuted_frontier_is_order_independent():
    G = cyclic_group(7)
    catalog = enumerate_difference_sets(G, 3, 1)
    lifts = [
        normalize(NdDifferenceSet(G, 3, 1, tuple(zip((0, 0, 0), S))))
        for S in catalog
    ]
    rng = random.Random(5)
    baseline = None
    for _ in range(3):
        shuffled = lifts[:]
        rng.shuffle(shuffled)
        reps = extend_diffsets(shuffled, catalog)
        keys = {canonical_rows(develop(D)) for D in reps}
        if baseline is None:
            baseline = keys
        assert keys == baseline


def test_classify_z7_matches_reference_counts():
    result = classify_nd_diffsets(cyclic_group(7), 3, 1)
    assert result.mu == TABLE2_MU[(7, 3, 1)] == 7
    assert result.mu_exact
    assert {n: c for n, c in result.counts().items() if n >= 3} == TABLE4_COUNTS[(7, 3, 1)]


def test_classify_rejects_k_below_two():
    with pytest.raises(ValueError):
        classify_nd_diffsets(cyclic_group(7), 1, 0)


def test_classify_budget_gives_partial_result():
    result = classify_nd_diffsets(cyclic_group(11), 5, 2, budget_seconds=1e-9)
    assert not result.mu_exact
    assert result.mu is not None and result.mu >= 2


def test_classify_empty_catalog():
    # no (13,3,1) difference sets exist: lambda (v-1) != k (k-1)
    result = classify_nd_diffsets(cyclic_group(13), 3, 1)
    assert result.mu is None
    assert result.mu_exact
    assert result.counts() == {}


def test_table2_row_21_5_1_both_groups():
    rows = table2_row(21, 5, 1)
    assert set(rows) == {"Z21", "Z7sZ3"}
    assert all(res.mu == 3 and res.mu_exact for res in rows.values())
    assert table4_counts(21, 5, 1, results=rows) == {3: 6}


def test_table3_row_z4xz4():
    row = table3_row(2, with_mu=True)
    assert row["name"] == "Z4xZ4"
    assert row["tds"] == 192
    assert row["nds"] == 3
    assert row["mu"] == 4
    assert row["mu_exact"]


def test_diagonal_translations_are_sharply_transitive():
    G = cyclic_group(7)
    ts = diagonal_translations(G, 3)
    assert 1 <= len(ts) < 7  # generators, not the whole group
    C = develop(NdDifferenceSet(G, 3, 1, DIFFSET_731_3D_A))
    for t in ts:
        mapped = {tuple(p[x] for p, x in zip(t.perms, row)) for row in C.rows}
        assert mapped == set(C.rows)


def test_extract_diffset_round_trip():
    G = cyclic_group(7)
    D = normalize(NdDifferenceSet(G, 3, 1, DIFFSET_731_3D_A))
    C = develop(D)
    E = extract_diffset(C, diagonal_translations(G, 3))
    assert E.k == 3 and E.lam == 1 and E.n == 3
    assert are_paratopic(develop(E), C) is not None


def test_extract_diffset_requires_sharply_transitive_action():
    G = cyclic_group(7)
    C = develop(NdDifferenceSet(G, 3, 1, DIFFSET_731_3D_A))
    with pytest.raises(ValueError, match="sharply transitive"):
        extract_diffset(C, [identity_isotopy(7, 3)])


def test_km_search_diagonal_z7():
    G = cyclic_group(7)
    cubes = kramer_mesner_search(7, 3, 1, 3, diagonal_translations(G, 3))
    assert len(cubes) == 2
    for C in cubes:
        assert verify_cube(C.rows, 7, 3, 1).ok
    assert are_paratopic(cubes[0], cubes[1]) is None


def test_km_search_trivial_group_matches_exhaustive():
    got = kramer_mesner_search(3, 2, 1, 3, [])
    expect = classify_cubes_exhaustive(3, 2, 1, 3)
    assert len(got) == len(expect) == 2
    assert {canonical_rows(C) for C in got} == {canonical_rows(C) for C in expect}


def test_km_search_cell_budget():
    with pytest.raises(BudgetExceeded, match="orbit count"):
        kramer_mesner_search(7, 3, 1, 3, [], cell_budget=10)
