"""Finite groups as explicit Cayley tables and finite fields with primitive-element tables."""
from __future__ import annotations

import itertools
from functools import reduce
from typing import Iterable, Optional, Sequence

import numpy as np

AUTOMORPHISM_ORDER_LIMIT = 64
FIELD_ORDER_LIMIT = 2**13
ASSOCIATIVITY_CHECK_LIMIT = 512


class GroupTable:
    """Group on elements {0..v-1} with table[g][h] = g+h; element 0 is the identity.

    All invariants (Latin square, identity, two-sided inverses, associativity)
    are checked on construction.
    """

    __slots__ = ("order", "name", "table", "_np", "_neg", "_abelian", "_orders", "_aut", "_autgens")

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G"):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        v = len(rows)
        if v < 1:
            raise ValueError("empty table")
        arr = np.array(rows, dtype=np.int32)
        if arr.shape != (v, v):
            raise ValueError("table is not square")
        if arr.min() < 0 or arr.max() >= v:
            raise ValueError("table entries out of range")
        if not np.array_equal(arr[0], np.arange(v)) or not np.array_equal(arr[:, 0], np.arange(v)):
            raise ValueError("element 0 is not a two-sided identity")
        ident = np.arange(v)
        for g in range(v):
            if not np.array_equal(np.sort(arr[g]), ident) or not np.array_equal(np.sort(arr[:, g]), ident):
                raise ValueError("table is not a Latin square")
        neg = [-1] * v
        for g in range(v):
            h = int(np.where(arr[g] == 0)[0][0])
            if rows[h][g] != 0:
                raise ValueError(f"element {g} has no two-sided inverse")
            neg[g] = h
        if v > ASSOCIATIVITY_CHECK_LIMIT:
            raise ValueError(f"group order {v} exceeds the construction limit {ASSOCIATIVITY_CHECK_LIMIT}")
        for a in range(v):
            # (a+b)+c == a+(b+c), vectorized over all (b, c) at once
            if not np.array_equal(arr[arr[a]], arr[a][arr]):
                raise ValueError("table is not associative")
        self.order = v
        self.name = name
        self.table = rows
        self._np = arr
        self._neg = tuple(neg)
        self._abelian = bool(np.array_equal(arr, arr.T))
        self._orders: Optional[tuple[int, ...]] = None
        self._aut: Optional[list[tuple[int, ...]]] = None
        self._autgens: Optional[list[tuple[int, ...]]] = None

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"

    @property
    def np_table(self) -> np.ndarray:
        return self._np

    @property
    def is_abelian(self) -> bool:
        return self._abelian

    def add(self, a: int, b: int) -> int:
        return self.table[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        """Right difference a - b = a + (-b)."""
        return self.table[a][self._neg[b]]

    def left_sub(self, a: int, b: int) -> int:
        """Left difference -a + b (diagnostic variant; see the non-abelian regression)."""
        return self.table[self._neg[a]][b]

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != 0:
            x = self.table[x][g]
            n += 1
        return n

    def element_orders(self) -> tuple[int, ...]:
        if self._orders is None:
            self._orders = tuple(self.element_order(g) for g in range(self.order))
        return self._orders

    def neg_table(self) -> tuple[int, ...]:
        return self._neg


def cyclic_group(v: int) -> GroupTable:
    """Z_v with table[g][h] = (g+h) mod v."""
    if v < 1:
        raise ValueError("order must be positive")
    base = np.arange(v)
    table = (base[:, None] + base[None, :]) % v
    return GroupTable(table.tolist(), name=f"Z{v}")


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    """Componentwise product; element index = g*|H| + h."""
    m = H.order
    table = [
        [G.table[g1][g2] * m + H.table[h1][h2] for g2 in range(G.order) for h2 in range(m)]
        for g1 in range(G.order)
        for h1 in range(m)
    ]
    return GroupTable(table, name=f"{G.name}x{H.name}")


def semidirect_product(n: int, m: int, action: int, name: Optional[str] = None) -> GroupTable:
    """Z_n semidirect Z_m where the Z_m generator conjugates x to action*x mod n.

    Element (x, y) has index x*m + y; (x,y)+(x',y') = (x + action^y x', y + y').
    """
    t = action % n
    if pow(t, m, n) != 1 % n or np.gcd(t, n) != 1:
        raise ValueError(f"exponent {action} does not define an order-dividing-{m} automorphism of Z_{n}")
    tp = [pow(t, y, n) for y in range(m)]
    table = [
        [((x1 + tp[y1] * x2) % n) * m + (y1 + y2) % m for x2 in range(n) for y2 in range(m)]
        for x1 in range(n)
        for y1 in range(m)
    ]
    if name is None:
        name = f"Z{n}xZ{m}" if t == 1 else f"Z{n}sZ{m}t{t}"
    return GroupTable(table, name=name)


def semidirect_by_automorphism(N: GroupTable, m: int, phi: Sequence[int], name: str) -> GroupTable:
    """N semidirect Z_m via the automorphism phi of N with phi^m = id; index = x*m + j."""
    v = N.order
    phi = tuple(int(x) for x in phi)
    if sorted(phi) != list(range(v)) or phi[0] != 0:
        raise ValueError("phi is not a permutation fixing 0")
    for a in range(v):
        for b in range(v):
            if phi[N.table[a][b]] != N.table[phi[a]][phi[b]]:
                raise ValueError("phi is not an automorphism")
    powers = [tuple(range(v))]
    for _ in range(m - 1):
        powers.append(tuple(phi[x] for x in powers[-1]))
    if tuple(phi[x] for x in powers[-1]) != powers[0]:
        raise ValueError("phi^m is not the identity")
    table = [
        [N.table[x1][powers[j1][x2]] * m + (j1 + j2) % m for x2 in range(v) for j2 in range(m)]
        for x1 in range(v)
        for j1 in range(m)
    ]
    return GroupTable(table, name=name)


def dicyclic_group(n: int) -> GroupTable:
    """Dicyclic group of order 4n: <a,b | a^(2n)=1, b^2=a^n, bab^-1=a^-1>; index a^i b^j -> 2i+j."""
    if n < 1:
        raise ValueError("n must be positive")
    order2n = 2 * n

    def mul(i, j, k, l):
        if j == 0:
            return (i + k) % order2n, l
        # b a^k = a^(-k) b, and b^2 = a^n
        if l == 0:
            return (i - k) % order2n, 1
        return (i - k + n) % order2n, 0

    table = [
        [(lambda ik: ik[0] * 2 + ik[1])(mul(i1, j1, i2, j2)) for i2 in range(order2n) for j2 in range(2)]
        for i1 in range(order2n)
        for j1 in range(2)
    ]
    name = {2: "Q8", 4: "Q16"}.get(n, f"Dic{4 * n}")
    return GroupTable(table, name=name)


def presented_group_16_4() -> GroupTable:
    """The order-16 group <a,b | a^4=b^4=1, ba=ab^3> with element a^i b^j at index 4i+j."""
    def mul(i, j, k, l):
        # b^j a^k = a^k b^(3^k j) since ba = ab^3
        tw = j if k % 2 == 0 else (3 * j) % 4
        return (i + k) % 4, (tw + l) % 4

    table = [
        [(lambda t: 4 * t[0] + t[1])(mul(i1, j1, i2, j2)) for i2 in range(4) for j2 in range(4)]
        for i1 in range(4)
        for j1 in range(4)
    ]
    return GroupTable(table, name="SD16_4")


def _g16_3() -> GroupTable:
    # (Z4 x Z2) : Z2 with the outer involution fixing b and sending a to a*b
    N = direct_product(cyclic_group(4), cyclic_group(2))
    phi = [((x // 2) * 2 + ((x // 2) + x) % 2) for x in range(8)]  # (a,b) -> (a, a+b)
    return semidirect_by_automorphism(N, 2, phi, name="G16_3")


def _g16_13() -> GroupTable:
    # (Z4 x Z2) : Z2 with the outer involution fixing u and sending x to u^2 x (central product D8.Z4)
    N = direct_product(cyclic_group(4), cyclic_group(2))
    phi = [(((x // 2) + 2 * (x % 2)) % 4) * 2 + x % 2 for x in range(8)]  # (u,x) -> (u+2x, x)
    return semidirect_by_automorphism(N, 2, phi, name="G16_13")


def small_groups_16() -> dict[int, GroupTable]:
    """The 14 groups of order 16, numbered per the conventional small-group catalog."""
    z2 = cyclic_group(2)
    z4 = cyclic_group(4)
    return {
        1: cyclic_group(16),
        2: direct_product(z4, z4),
        3: _g16_3(),
        4: semidirect_product(4, 4, 3, name="Z4sZ4"),
        5: direct_product(cyclic_group(8), z2),
        6: semidirect_product(8, 2, 5, name="Z8sZ2"),
        7: semidirect_product(8, 2, 7, name="D16"),
        8: semidirect_product(8, 2, 3, name="QD16"),
        9: dicyclic_group(4),
        10: direct_product(direct_product(z4, z2), z2),
        11: direct_product(z2, semidirect_product(4, 2, 3, name="D8")),
        12: direct_product(z2, dicyclic_group(2)),
        13: _g16_13(),
        14: reduce(direct_product, [z2, z2, z2, z2]),
    }


def group_fingerprint(G: GroupTable) -> tuple:
    """Isomorphism invariants: order, abelian flag, order profile, center profile, square count."""
    orders = G.element_orders()
    profile = tuple(sorted(orders))
    center = [g for g in range(G.order) if all(G.table[g][h] == G.table[h][g] for h in range(G.order))]
    center_profile = tuple(sorted(orders[g] for g in center))
    squares = len({G.table[g][g] for g in range(G.order)})
    return (G.order, G.is_abelian, profile, center_profile, squares)


def _generating_sequence(G: GroupTable) -> tuple[list[int], list[tuple[int, ...]]]:
    """Greedy generators (least element outside the span) plus a word for every element."""
    gens: list[int] = []
    words: dict[int, tuple[int, ...]] = {0: ()}
    while len(words) < G.order:
        g = min(set(range(G.order)) - set(words))
        gens.append(g)
        gi = len(gens) - 1
        frontier = list(words.items())
        while frontier:
            new_frontier = []
            for elem, word in frontier:
                for idx, gen in enumerate(gens):
                    nxt = G.table[elem][gen]
                    if nxt not in words:
                        words[nxt] = word + (idx,)
                        new_frontier.append((nxt, words[nxt]))
            frontier = new_frontier
        assert gi < len(gens)
    word_list = [words[e] for e in range(G.order)]
    return gens, word_list


def group_automorphisms(G: GroupTable) -> list[tuple[int, ...]]:
    """All automorphisms of G as permutations of {0..v-1}, by backtracking over generator images."""
    if G.order > AUTOMORPHISM_ORDER_LIMIT:
        raise ValueError(f"group order {G.order} exceeds the automorphism limit {AUTOMORPHISM_ORDER_LIMIT}")
    if G._aut is not None:
        return G._aut
    gens, words = _generating_sequence(G)
    orders = G.element_orders()
    cands = [[h for h in range(G.order) if orders[h] == orders[g]] for g in gens]
    arr = G.np_table
    auts: list[tuple[int, ...]] = []
    for images in itertools.product(*cands):
        perm = np.empty(G.order, dtype=np.int32)
        for elem in range(G.order):
            img = 0
            for letter in words[elem]:
                img = G.table[img][images[letter]]
            perm[elem] = img
        if len(set(perm.tolist())) != G.order:
            continue
        if np.array_equal(perm[arr], arr[perm][:, perm]):
            auts.append(tuple(int(x) for x in perm))
    G._aut = auts
    return auts


# ---------------------------------------------------------------------------
# finite fields


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """Return (p, s) with q = p^s, p prime, or None."""
    if q < 2:
        return None
    for p in range(2, int(q**0.5) + 1):
        if q % p == 0:
            s = 0
            while q % p == 0:
                q //= p
                s += 1
            return (p, s) if q == 1 and is_prime(p) else None
    return (q, 1)


def _poly_divmod_p(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    num = num[:]
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(len(num) - len(den) + 1, 0)
    for i in range(len(num) - len(den), -1, -1):
        c = (num[i + len(den) - 1] * inv_lead) % p
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] = (num[i + j] - c * d) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(n % p)
        n //= p
    return out


def _least_irreducible(p: int, s: int) -> list[int]:
    """Coefficients (low degree first, degree s monic) of the least irreducible polynomial.

    Least means the smallest integer encoding sum(c_i * p^i) of the non-leading
    coefficients, i.e. lexicographic from the most significant coefficient down.
    """
    for enc in range(p**s):
        poly = _digits(enc, p, s) + [1]
        if poly[0] == 0:
            continue
        ok = True
        for d in range(1, s // 2 + 1):
            for denc in range(p**d):
                den = _digits(denc, p, d) + [1]
                _, rem = _poly_divmod_p(poly, den, p)
                if rem == [0]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return poly
    raise ValueError(f"no irreducible polynomial of degree {s} over GF({p})")


class FieldTable:
    """GF(p^s) with elements indexed 0..q-1 by base-p digit encoding of coefficients.

    Multiplication is evaluated through exp/log tables of the primitive element.
    """

    __slots__ = ("p", "s", "q", "modulus", "primitive", "exp", "log")

    def __init__(self, p: int, s: int = 1, primitive: Optional[int] = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if s < 1:
            raise ValueError("exponent must be positive")
        q = p**s
        if q > FIELD_ORDER_LIMIT:
            raise ValueError(f"field order {q} exceeds the limit {FIELD_ORDER_LIMIT}")
        self.p, self.s, self.q = p, s, q
        self.modulus = tuple(_least_irreducible(p, s)) if s > 1 else (0, 1)
        if primitive is None:
            cand = 1 if q == 2 else 2
            while cand < q:
                if self._mult_order(cand) == q - 1:
                    break
                cand += 1
            primitive = cand
        elif not (0 < primitive < q) or self._mult_order(primitive) != q - 1:
            raise ValueError(f"{primitive} is not a primitive element of GF({q})")
        self.primitive = primitive
        exp = [1]
        for _ in range(q - 2):
            exp.append(self._raw_mul(exp[-1], primitive))
        self.exp = tuple(exp)
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self.log = tuple(log)
        if q <= 128:
            self._spot_check_distributivity()

    def __repr__(self) -> str:
        return f"FieldTable(GF({self.q}), alpha={self.primitive})"

    def _raw_mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a * b) % self.p
        p, s = self.p, self.s
        da, db = _digits(a, p, s), _digits(b, p, s)
        prod = [0] * (2 * s - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        for deg in range(2 * s - 2, s - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for j in range(s):
                    prod[deg - s + j] = (prod[deg - s + j] - c * self.modulus[j]) % p
        return sum(c * p**i for i, c in enumerate(prod[:s]))

    def _mult_order(self, a: int) -> int:
        n, x = 1, a
        while x != 1:
            x = self._raw_mul(x, a)
            n += 1
            if n > self.q:
                raise ValueError("not invertible")
        return n

    def _spot_check_distributivity(self) -> None:
        q = self.q
        add = np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
        mul = np.array([[self.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
        left = mul[np.arange(q)[:, None, None], add[None, :, :]]
        right = add[mul[:, :, None], mul[:, None, :]]
        if not np.array_equal(left, right):
            raise AssertionError("distributivity failed")

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        p = self.p
        out, mult = 0, 1
        for _ in range(self.s):
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        p = self.p
        out, mult = 0, 1
        for _ in range(self.s):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def alpha_power(self, e: int) -> int:
        return self.exp[e % (self.q - 1)]

    def is_square(self, a: int) -> bool:
        if a == 0:
            return False
        if self.p == 2:
            return True
        return self.log[a] % 2 == 0

    def squares(self) -> set[int]:
        return {self.exp[i] for i in range(0, self.q - 1, 2)}

    def additive_group(self) -> GroupTable:
        if self.s == 1:
            return cyclic_group(self.p)
        q = self.q
        table = [[self.add(a, b) for b in range(q)] for a in range(q)]
        return GroupTable(table, name=f"F{q}+")


def finite_field(p: int, s: int = 1, primitive: Optional[int] = None) -> FieldTable:
    """GF(p^s); the default primitive element is the least one in index order."""
    return FieldTable(p, s, primitive)


def field_of_order(q: int, primitive: Optional[int] = None) -> FieldTable:
    ps = prime_power(q)
    if ps is None:
        raise ValueError(f"{q} is not a prime power")
    return FieldTable(ps[0], ps[1], primitive)


def cyclotomic_class(F: FieldTable, m: int, offset: int) -> set[int]:
    """The coset {alpha^(m*i + offset)} of the m-th powers in F*."""
    if m < 1 or (F.q - 1) % m != 0:
        raise ValueError(f"{m} does not divide {F.q - 1}")
    return {F.exp[(m * i + offset) % (F.q - 1)] for i in range((F.q - 1) // m)}


# ---------------------------------------------------------------------------
# builtin group names and file format

_SEMIDIRECT_NAMES = {
    "Z7sZ3": (7, 3, 2),
    "Z4sZ4": (4, 4, 3),
    "Z8sZ2": (8, 2, 5),
    "D8": (4, 2, 3),
    "D16": (8, 2, 7),
    "QD16": (8, 2, 3),
}


def builtin_group(name: str) -> GroupTable:
    """Resolve a builtin constructor string like Z7, Z4xZ4, SD16_4, Z7sZ3, G16_9, Q8."""
    if name in _SEMIDIRECT_NAMES:
        n, m, t = _SEMIDIRECT_NAMES[name]
        return semidirect_product(n, m, t, name=name)
    if name == "SD16_4":
        return presented_group_16_4()
    if name == "Q8":
        return dicyclic_group(2)
    if name == "Q16":
        return dicyclic_group(4)
    if name.startswith("G16_"):
        try:
            gid = int(name[4:])
        except ValueError:
            gid = -1
        if 1 <= gid <= 14:
            G = small_groups_16()[gid]
            G.name = name
            return G
        raise ValueError(f"unknown order-16 group id in {name!r}")
    if name.startswith("F") and name.endswith("+"):
        try:
            q = int(name[1:-1])
        except ValueError:
            raise ValueError(f"unknown group name {name!r}") from None
        return field_of_order(q).additive_group()
    if "x" in name:
        parts = name.split("x")
        return reduce(direct_product, [builtin_group(part) for part in parts])
    if name.startswith("Z"):
        body = name[1:]
        if "sZ" in body:
            left, _, rest = body.partition("sZ")
            m_str, _, t_str = rest.partition("t")
            if left.isdigit() and m_str.isdigit() and t_str.isdigit():
                return semidirect_product(int(left), int(m_str), int(t_str), name=name)
        elif body.isdigit():
            return cyclic_group(int(body))
    raise ValueError(f"unknown group name {name!r}")


def format_group_file(G: GroupTable) -> str:
    lines = [f"group v={G.order} name={G.name}"]
    lines.extend(" ".join(str(x) for x in row) for row in G.table)
    return "\n".join(lines) + "\n"


def parse_group_file(text: str) -> GroupTable:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("group "):
        raise ValueError("missing group header")
    fields = dict(part.split("=", 1) for part in lines[0].split()[1:])
    try:
        v = int(fields["v"])
        name = fields.get("name", "G")
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad group header: {exc}") from None
    if len(lines) != v + 1:
        raise ValueError(f"expected {v} table rows, found {len(lines) - 1}")
    table = [[int(x) for x in ln.split()] for ln in lines[1:]]
    return GroupTable(table, name=name)


def resolve_group(name: str, search: Iterable[str] = ()) -> GroupTable:
    """A group name resolves to a builtin constructor string or a group file path."""
    import os

    for candidate in [name, *(os.path.join(d, name) for d in search)]:
        if os.path.isfile(candidate):
            with open(candidate, encoding="utf-8") as fh:
                return parse_group_file(fh.read())
    return builtin_group(name)
