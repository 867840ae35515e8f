"""Reference cubes, difference sets, and expected classification values used by tests and reports."""
from __future__ import annotations

from .cube import Cube


def _cube(v: int, k: int, lam: int, rows) -> Cube:
    return Cube(v, k, lam, len(rows[0]), [tuple(x - 1 for x in row) for row in rows])


# Three (7,3,1) projection 3-cubes over symbols 1..7.  The first two are
# paratopic but not isotopic; the third belongs to a different class.
CUBE_731_A_ROWS = (
    (1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 3, 1), (2, 4, 6), (2, 7, 5), (3, 1, 2),
    (3, 6, 5), (3, 7, 4), (4, 3, 7), (4, 5, 1), (4, 6, 2), (5, 1, 4), (5, 2, 7),
    (5, 3, 6), (6, 2, 4), (6, 5, 3), (6, 7, 1), (7, 1, 6), (7, 4, 3), (7, 5, 2),
)
CUBE_731_B_ROWS = (
    (1, 2, 7), (1, 4, 3), (1, 6, 5), (2, 3, 6), (2, 4, 5), (2, 7, 1), (3, 1, 4),
    (3, 6, 2), (3, 7, 5), (4, 3, 1), (4, 5, 2), (4, 6, 7), (5, 1, 6), (5, 2, 4),
    (5, 3, 7), (6, 2, 3), (6, 5, 1), (6, 7, 4), (7, 1, 2), (7, 4, 6), (7, 5, 3),
)
CUBE_731_C_ROWS = (
    (1, 2, 4), (1, 4, 6), (1, 6, 2), (2, 3, 7), (2, 4, 3), (2, 7, 4), (3, 1, 6),
    (3, 6, 7), (3, 7, 1), (4, 3, 6), (4, 5, 3), (4, 6, 5), (5, 1, 2), (5, 2, 3),
    (5, 3, 1), (6, 2, 7), (6, 5, 2), (6, 7, 5), (7, 1, 4), (7, 4, 5), (7, 5, 1),
)
CUBE_731_A = _cube(7, 3, 1, CUBE_731_A_ROWS)
CUBE_731_B = _cube(7, 3, 1, CUBE_731_B_ROWS)
CUBE_731_C = _cube(7, 3, 1, CUBE_731_C_ROWS)

# An isotopy transforming the (1,2)-conjugate of cube A into cube B: every
# coordinate applies the 6-cycle (2,3,4,5,6,7) on symbols.
CONJ_A_TO_B_CYCLE = (2, 3, 4, 5, 6, 7)

# A (3,2,1) 3-cube and a (3,2,1) 5-cube; restrictions of the 5-cube to three
# coordinates are never equivalent to the 3-cube.
CUBE_321_3D = _cube(3, 2, 1, ((1, 1, 1), (1, 2, 2), (2, 1, 3), (2, 3, 2), (3, 2, 3), (3, 3, 1)))
CUBE_321_5D = _cube(3, 2, 1, (
    (1, 1, 1, 1, 1), (1, 2, 2, 2, 2), (2, 1, 2, 3, 3),
    (2, 3, 3, 1, 2), (3, 2, 3, 3, 1), (3, 3, 1, 2, 3),
))

# Higher-dimensional difference sets (0-based group element indices).
DIFFSET_731_3D_A = ((0, 1, 3), (0, 2, 6), (0, 4, 5))          # over Z7; development is paratopic to cubes A/B
DIFFSET_731_3D_B = ((0, 1, 2), (0, 2, 4), (0, 4, 1))          # over Z7; development is paratopic to cube C
DIFFSET_731_7D = (                                            # over Z7; the q=7, alpha=3 Paley construction
    (0, 1, 3, 2, 6, 4, 5), (0, 2, 6, 4, 5, 1, 3), (0, 4, 5, 1, 3, 2, 6),
)

# A 2-dimensional (16,6,2) difference set over SD16_4 (element a^i b^j has
# index 4i+j).  Its right differences form a difference set, but two of its
# left differences coincide, so the left development falls short of vk rows.
DIFFSET_1662_2D_SD16 = ((0, 0), (0, 3), (0, 6), (0, 8), (0, 9), (9, 13))
RIGHT_DIFFS_1662_SD16 = frozenset({0, 1, 8, 11, 12, 14})
LEFT_COLLISION_PAIR_SD16 = ((0, 6), (9, 13))

# A 3-dimensional (16,6,2) difference set over Z4xZ4 (element (a,b) has index
# 4a+b).  Its three coordinate-difference sets are pairwise inequivalent.
DIFFSET_1662_3D_Z4Z4 = ((0, 0, 4), (0, 1, 8), (0, 4, 0), (0, 6, 3), (0, 8, 1), (0, 11, 14))

# Known autoparatopy group orders.
APAR_731_A = 63
APAR_731_B = 63
APAR_731_C = 42
APAR_1662_DEV_Z4Z4 = 16

# Expected classification values checked by `report-tables --expected`.

# Numbers of (3,2,1) projection n-cubes up to paratopy.
TABLE1_COUNTS = {2: 1, 3: 2, 4: 1, 5: 1, 6: 0}

# Maximal dimensions mu(v,k,lambda) of difference sets for small parameters.
# (21,5,1) holds for both groups of order 21.
TABLE2_MU = {
    (7, 3, 1): 7,
    (7, 4, 2): 7,
    (11, 5, 2): 11,
    (11, 6, 3): 11,
    (15, 7, 3): 3,
    (15, 8, 4): 4,
    (13, 4, 1): 13,
    (21, 5, 1): 3,
}
TABLE2_GROUPS = {
    (7, 3, 1): ("Z7",),
    (7, 4, 2): ("Z7",),
    (11, 5, 2): ("Z11",),
    (11, 6, 3): ("Z11",),
    (15, 7, 3): ("Z15",),
    (15, 8, 4): ("Z15",),
    (13, 4, 1): ("Z13",),
    (21, 5, 1): ("Z21", "Z7sZ3"),
}

# (16,6,2) difference sets in the 14 groups of order 16: group model name,
# count of sets up to equivalence (Nds), total count (Tds), and the maximal
# dimension mu (an int, a ("ge", n) lower bound, or None where no sets exist).
TABLE3_ROWS = (
    (1, "Z16", 0, 0, None),
    (2, "Z4xZ4", 3, 192, 4),
    (3, "G16_3", 4, 192, 4),
    (4, "Z4sZ4", 3, 192, 4),
    (5, "Z8xZ2", 2, 192, 4),
    (6, "Z8sZ2", 2, 64, 4),
    (7, "D16", 0, 0, None),
    (8, "QD16", 2, 128, 4),
    (9, "Q16", 2, 256, 4),
    (10, "Z4xZ2xZ2", 2, 448, ("ge", 4)),
    (11, "Z2xD8", 2, 192, 4),
    (12, "Z2xQ8", 2, 704, ("ge", 8)),
    (13, "G16_13", 2, 320, ("ge", 6)),
    (14, "Z2xZ2xZ2xZ2", 1, 448, ("ge", 14)),
)

# Inequivalent projection n-cube counts obtained from difference sets, by
# dimension.  The (16,6,2) row is reference data only; regenerating it is a
# long-running job and is not part of the test suite.
TABLE4_COUNTS = {
    (7, 3, 1): {3: 2, 4: 2, 5: 1, 6: 1, 7: 1},
    (7, 4, 2): {3: 2, 4: 2, 5: 1, 6: 1, 7: 1},
    (11, 5, 2): {3: 2, 4: 4, 5: 6, 6: 6, 7: 4, 8: 2, 9: 1, 10: 1, 11: 1},
    (11, 6, 3): {3: 2, 4: 4, 5: 6, 6: 6, 7: 4, 8: 2, 9: 1, 10: 1, 11: 1},
    (13, 4, 1): {3: 3, 4: 7, 5: 10, 6: 14, 7: 14, 8: 10, 9: 7, 10: 3, 11: 1, 12: 1, 13: 1},
    (15, 7, 3): {3: 3},
    (15, 8, 4): {3: 6, 4: 1},
    (16, 6, 2): {3: 724, 4: 8464, 5: 1601, 6: 1754, 7: 986, 8: 505, 9: 178,
                 10: 70, 11: 16, 12: 7, 13: 2, 14: 1},
    (21, 5, 1): {3: 6},
}
