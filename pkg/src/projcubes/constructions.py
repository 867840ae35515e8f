"""Difference-set families built from finite fields: quadratic-residue, cyclotomic, twin prime power."""
from __future__ import annotations

from math import isqrt
from typing import Optional

from .algebra import FieldTable, direct_product, field_of_order, prime_power
from .diffset import NdDifferenceSet, OrdinaryDifferenceSet, is_nd_difference_set


def _field(q: int, primitive: Optional[int]) -> FieldTable:
    if prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    return field_of_order(q, primitive=primitive)


def paley_ordinary(q: int, which: str = "squares", alpha: Optional[int] = None) -> OrdinaryDifferenceSet:
    """The nonzero squares (or non-squares) of F_q, a (q,(q-1)/2,(q-3)/4) difference set."""
    if q % 4 != 3:
        raise ValueError(f"q = {q} is not congruent to 3 mod 4")
    F = _field(q, alpha)
    squares = F.squares()
    if which == "squares":
        elements = squares
    elif which == "nonsquares":
        elements = [x for x in range(1, q) if x not in set(squares)]
    else:
        raise ValueError(f"unknown variant {which!r}")
    return OrdinaryDifferenceSet(F.additive_group(), (q - 1) // 2, (q - 3) // 4, elements)


def paley_nd(q: int, alpha: Optional[int] = None) -> NdDifferenceSet:
    """The q-dimensional (q,(q-1)/2,(q-3)/4) difference set {(0, a^2i, a^2i+1, ..., a^2i+q-2)}."""
    return cyclotomic_nd(q, 2, alpha)


def cyclotomic_nd(q: int, m: int, alpha: Optional[int] = None) -> NdDifferenceSet:
    """The q-dimensional difference set {(0, a^mi, a^mi+1, ..., a^mi+q-2) | i < (q-1)/m}."""
    if m not in (2, 4, 8):
        raise ValueError(f"m must be 2, 4, or 8, got {m}")
    if m == 2 and q % 4 != 3:
        raise ValueError(f"q = {q} is not congruent to 3 mod 4")
    if m == 4:
        t2, rem = divmod(q - 1, 4)
        t = isqrt(t2)
        if rem != 0 or t * t != t2 or t % 2 == 0:
            raise ValueError(f"q = {q} is not of the form 4t^2+1 with t odd")
    F = _field(q, alpha)
    if (q - 1) % m != 0:
        raise ValueError(f"{m} does not divide q-1 = {q - 1}")
    k = (q - 1) // m
    lam, rem = divmod(k * (k - 1), q - 1)
    if rem != 0:
        raise ValueError(f"no integral lambda for q={q}, m={m}")
    tuples = []
    for i in range(k):
        tuples.append((0,) + tuple(F.alpha_power(m * i + j) for j in range(q - 1)))
    G = F.additive_group()
    report = is_nd_difference_set(G, tuples, k, lam)
    if not report:
        raise ValueError(f"inadmissible parameters q={q}, m={m}: {report.message}")
    return NdDifferenceSet(G, k, lam, tuples, check=False)


def _twin_fields(q: int, alpha: Optional[int], beta: Optional[int]) -> tuple[FieldTable, FieldTable]:
    for r in (q, q + 2):
        pp = prime_power(r)
        if pp is None or pp[0] == 2:
            raise ValueError(f"{r} is not an odd prime power")
    return _field(q, alpha), _field(q + 2, beta)


def twin_prime_power_ordinary(q: int, variant: str = "standard",
                              alpha: Optional[int] = None, beta: Optional[int] = None) -> OrdinaryDifferenceSet:
    """The (4m-1, 2m-1, m-1) twin-prime-power difference set in F_q x F_{q+2}, m = (q+1)^2/4."""
    if variant not in ("standard", "primed"):
        raise ValueError(f"unknown variant {variant!r}")
    Fq, Fr = _twin_fields(q, alpha, beta)
    r = q + 2
    G = direct_product(Fq.additive_group(), Fr.additive_group())

    def pair(a: int, b: int) -> int:
        return a * r + b

    even_a = [Fq.alpha_power(2 * i) for i in range((q - 1) // 2)]
    odd_a = [Fq.alpha_power(2 * i + 1) for i in range((q - 1) // 2)]
    even_b = [Fr.alpha_power(2 * j) for j in range((q + 1) // 2)]
    odd_b = [Fr.alpha_power(2 * j + 1) for j in range((q + 1) // 2)]
    if variant == "standard":
        e1 = [pair(a, b) for a in even_a for b in even_b]
        e2 = [pair(a, b) for a in odd_a for b in odd_b]
    else:
        e1 = [pair(a, b) for a in even_a for b in odd_b]
        e2 = [pair(a, b) for a in odd_a for b in even_b]
    e3 = [pair(0, 0)] + [pair(Fq.alpha_power(i), 0) for i in range(q - 1)]
    m = (q + 1) ** 2 // 4
    return OrdinaryDifferenceSet(G, 2 * m - 1, m - 1, e1 + e2 + e3)


def twin_prime_power_nd(q: int, alpha: Optional[int] = None, beta: Optional[int] = None) -> NdDifferenceSet:
    """The q-dimensional (4m-1, 2m-1, m-1) twin-prime-power difference set in F_q x F_{q+2}."""
    Fq, Fr = _twin_fields(q, alpha, beta)
    r = q + 2
    G = direct_product(Fq.additive_group(), Fr.additive_group())

    def a_elem(i: int, j: int, x: int) -> int:
        return Fq.alpha_power(2 * i + x) * r + Fr.alpha_power(2 * j + x)

    def b_elem(i: int, x: int) -> int:
        return Fq.alpha_power(i + x) * r

    tuples = []
    for i in range((q - 1) // 2):
        for j in range((q + 1) // 2):
            tuples.append((0,) + tuple(a_elem(i, j, x) for x in range(q - 1)))
            tuples.append((0,) + tuple(a_elem(i, j, x) for x in range(1, q)))
    tuples.append((0,) * q)
    for i in range(q - 1):
        tuples.append((0,) + tuple(b_elem(i, x) for x in range(q - 1)))
    m = (q + 1) ** 2 // 4
    k, lam = 2 * m - 1, m - 1
    report = is_nd_difference_set(G, tuples, k, lam)
    if not report:
        raise ValueError(f"twin prime power construction failed for q={q}: {report.message}")
    return NdDifferenceSet(G, k, lam, tuples, check=False)
