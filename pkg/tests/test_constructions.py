"""Difference set families: Paley, cyclotomic, and twin prime power."""
from __future__ import annotations

import pytest

from projcubes.constructions import (
    cyclotomic_nd,
    paley_nd,
    paley_ordinary,
    twin_prime_power_nd,
    twin_prime_power_ordinary,
)
from projcubes.cube import verify_cube
from projcubes.diffset import develop, is_difference_set, is_nd_difference_set
from projcubes.refdata import DIFFSET_731_3D_A, DIFFSET_731_3D_B, DIFFSET_731_7D


def test_paley_ordinary_7():
    S = paley_ordinary(7)
    assert (S.k, S.lam) == (3, 1)
    assert set(S.elements) == {1, 2, 4}
    assert is_difference_set(S.group, S.elements, 3, 1)


def test_paley_nd_7_alpha_3_exact_tuples():
    D = paley_nd(7, alpha=3)
    assert (D.group.order, D.k, D.lam, D.n) == (7, 3, 1, 7)
    assert D.tuples == DIFFSET_731_7D


def test_paley_nd_restrictions_give_3d_sets():
    D = paley_nd(7, alpha=3)
    first = tuple(tuple(t[i] for i in (0, 1, 2)) for t in D.tuples)
    second = tuple(tuple(t[i] for i in (0, 1, 3)) for t in D.tuples)
    assert first == DIFFSET_731_3D_A
    assert second == DIFFSET_731_3D_B


def test_paley_nd_develops_to_valid_cube():
    D = paley_nd(7, alpha=3)
    C = develop(D)
    assert C.n == 7
    assert verify_cube(C.rows, 7, 3, 1).ok


def test_paley_nd_rejects_bad_q():
    for q in (5, 9, 13, 6, 2):
        with pytest.raises(ValueError):
            paley_nd(q)


def test_paley_nd_small_family():
    for q in (7, 11, 19, 23):
        D = paley_nd(q)
        k = (q - 1) // 2
        lam = (q - 3) // 4
        assert (D.k, D.lam, D.n) == (k, lam, q)
        assert is_nd_difference_set(D.group, D.tuples, k, lam).ok


def test_cyclotomic_nd_37_4():
    D = cyclotomic_nd(37, 4)
    assert (D.group.order, D.k, D.lam, D.n) == (37, 9, 2, 37)
    assert is_nd_difference_set(D.group, D.tuples, 9, 2).ok
    C = develop(D)
    assert verify_cube(C.rows, 37, 9, 2).ok


def test_cyclotomic_nd_rejects_bad_parameters():
    with pytest.raises(ValueError):
        cyclotomic_nd(7, 4)  # 4 does not divide q - 1
    with pytest.raises(ValueError):
        cyclotomic_nd(13, 4)  # quartic residues of 13 are not a difference set
    with pytest.raises(ValueError):
        cyclotomic_nd(37, 2)  # 37 = 1 mod 4, so squares fail


def test_twin_prime_power_ordinary_3():
    S = twin_prime_power_ordinary(3)
    assert (S.group.order, S.k, S.lam) == (15, 7, 3)
    assert is_difference_set(S.group, S.elements, 7, 3)


def test_twin_prime_power_nd_3():
    D = twin_prime_power_nd(3)
    assert (D.group.order, D.k, D.lam) == (15, 7, 3)
    assert D.n >= 3
    assert is_nd_difference_set(D.group, D.tuples, 7, 3).ok
    C = develop(D)
    assert verify_cube(C.rows, 15, 7, 3).ok


def test_twin_prime_power_nd_rejects_bad_q():
    for q in (13, 7 * 2, 4):
        with pytest.raises(ValueError):
            twin_prime_power_nd(q)
