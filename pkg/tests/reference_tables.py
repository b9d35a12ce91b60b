"""Reference per-component descent tables for the 17-element fixture.

Each ideal is written by its generators; an entry is
(M_r, Des(M_r), barred Des(M_r)).
"""

FIG5_TABLES = {
    "C1": [
        ([(4,), (4, 5)], set(), []),
        ([(4,), (4, 6)], {6}, [(4, 6)]),
        ([(5,), (4, 5)], {5}, [(5,)]),
        ([(5,), (5, 6)], {6}, [(5, 6)]),
        ([(6,), (4, 6)], {6}, [(6,)]),
        ([(6,), (5, 6)], {5, 6}, [(6,), (5, 6)]),
    ],
    "C2": [
        ([(10,), (15,), (13, 15)], {15}, [(15,)]),
        ([(10,), (10, 13), (14,)], set(), []),
        ([(10,), (10, 13), (13, 15)], {15}, [(13, 15)]),
        ([(13,), (10, 13), (14,)], {13}, [(13,)]),
        ([(13,), (10, 13), (13, 15)], {13, 15}, [(13,), (13, 15)]),
    ],
    "C3": [
        ([(11,), (9, 11)], {11}, [(11,)]),
        ([(9,), (9, 11)], set(), []),
        ([(9,), (12,)], {12}, [(12,)]),
    ],
    "C4": [
        ([(16,)], set(), []),
        ([(17,)], {17}, [(17,)]),
    ],
}

# a vertex that pins down each named component
FIG5_ANCHORS = {"C1": (4,), "C2": (10,), "C3": (9,), "C4": (16,)}
