"""Marching-squares case table shared by both kernel backends.

Corner bits: 1 bottom-left, 2 bottom-right, 4 top-right, 8 top-left (set when
the sample is above the level). Local edges: 0 bottom, 1 right, 2 top, 3 left.
"""

import numpy as np

# SEGMENTS[center_above, case, slot] = (edge_a, edge_b), -1 when the slot is empty.
SEGMENTS = np.full((2, 16, 2, 2), -1, dtype=np.int64)

_COMMON = {
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(0, 2)],
    11: [(1, 2)],
    12: [(3, 1)],
    13: [(0, 1)],
    14: [(3, 0)],
}
# Saddles: the center sample decides which pair of opposite corners is joined.
_SADDLE = {
    0: {5: [(3, 0), (1, 2)], 10: [(0, 1), (2, 3)]},
    1: {5: [(0, 1), (2, 3)], 10: [(3, 0), (1, 2)]},
}

for _center in (0, 1):
    for _case, _segs in {**_COMMON, **_SADDLE[_center]}.items():
        for _slot, _seg in enumerate(_segs):
            SEGMENTS[_center, _case, _slot] = _seg
SEGMENTS.setflags(write=False)

NOISE_FACTOR = 4.0
