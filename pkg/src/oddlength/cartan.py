"""Crystallographic root systems built by closure from Cartan data.

Positive roots are stored as integer coordinate tuples over the simple basis,
so a root is nonnegative in every coordinate and its height is the coordinate
sum.  The classical families use the simple systems

    A, rank n-1 of S_n : e_{i+1} - e_i
    B_n               : e_1 and e_{i+1} - e_i
    C_n               : 2e_1 and e_{i+1} - e_i
    D_n               : e_1 + e_2 and e_{i+1} - e_i

with the special node first, which makes the heights come out as j - i for
e_j - e_i, i for e_i, i + j for e_i + e_j in B, i + j - 1 for e_i + e_j in C
(so 2e_i has height 2i - 1) and i + j - 2 in D.  Exceptional families use the
Bourbaki node order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .errors import IndexOutOfRange, InvalidRank, NonTerminating

__all__ = [
    "CartanType",
    "RootSystem",
    "build_root_system",
    "root_system",
    "cartan_matrix",
    "odd_roots",
    "group_order",
    "positive_root_count",
]

Coords = tuple[int, ...]

_EXCEPTIONAL_RANK = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

# Edges of the simply laced E diagrams, Bourbaki numbering shifted to 0-based.
_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


@dataclass(frozen=True, order=True)
class CartanType:
    """A family letter together with a rank, e.g. CartanType('B', 5)."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in "ABCDEFG":
            raise InvalidRank(f"unknown family {self.family!r}")
        r = self.rank
        ok = (
            r >= 1
            if self.family in "ABC"
            else r >= 2
            if self.family == "D"
            else r in _EXCEPTIONAL_RANK[self.family]
        )
        if not ok:
            raise InvalidRank(f"rank {r} not allowed for family {self.family}")

    @classmethod
    def parse(cls, text: str) -> CartanType:
        """Parse 'B5', 'b5' or 'E8' into a CartanType."""
        t = text.strip().upper()
        if len(t) < 2 or t[0] not in "ABCDEFG" or not t[1:].isdigit():
            raise InvalidRank(f"cannot parse Cartan type from {text!r}")
        return cls(t[0], int(t[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def is_classical(self) -> bool:
        return self.family in "ABCD"

    @property
    def window_size(self) -> int:
        """Size of the window a group element acts on (classical only)."""
        if not self.is_classical:
            raise InvalidRank(f"{self} has no window representation")
        return self.rank + 1 if self.family == "A" else self.rank


def group_order(ctype: CartanType) -> int:
    """Order of the Weyl group."""
    n = ctype.rank
    if ctype.family == "A":
        return factorial(n + 1)
    if ctype.family in "BC":
        return 2**n * factorial(n)
    if ctype.family == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("G", 2): 12, ("F", 4): 1152, ("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600}[
        (ctype.family, n)
    ]


def positive_root_count(ctype: CartanType) -> int:
    n = ctype.rank
    if ctype.family == "A":
        return n * (n + 1) // 2
    if ctype.family in "BC":
        return n * n
    if ctype.family == "D":
        return n * (n - 1)
    return {("G", 2): 6, ("F", 4): 24, ("E", 6): 36, ("E", 7): 63, ("E", 8): 120}[(ctype.family, n)]


def cartan_matrix(ctype: CartanType) -> list[list[int]]:
    """Integer matrix C with C[i][j] = 2 (a_i, a_j) / (a_j, a_j).

    The reflection in simple root j acts on coordinate vectors by subtracting
    sum_i c_i * C[i][j] from coordinate j.
    """
    r = ctype.rank
    mat = [[2 * (i == j) for j in range(r)] for i in range(r)]

    def chain(lo: int, hi: int) -> None:
        for i in range(lo, hi - 1):
            mat[i][i + 1] = mat[i + 1][i] = -1

    fam = ctype.family
    if fam == "A":
        chain(0, r)
    elif fam in "BC":
        # node 0 is e_1 (B, short) or 2e_1 (C, long); nodes 1.. are the chain
        chain(1, r)
        if r >= 2:
            if fam == "B":
                mat[0][1], mat[1][0] = -1, -2
            else:
                mat[0][1], mat[1][0] = -2, -1
    elif fam == "D":
        # node 0 is e_1 + e_2, attached to node 2; D_2 is disconnected
        chain(1, r)
        if r >= 3:
            mat[0][2] = mat[2][0] = -1
    elif fam == "G":
        mat[0][1], mat[1][0] = -1, -3
    elif fam == "F":
        mat[0][1] = mat[1][0] = -1
        mat[1][2], mat[2][1] = -2, -1
        mat[2][3] = mat[3][2] = -1
    else:
        for i, j in _E8_EDGES:
            if i < r and j < r:
                mat[i][j] = mat[j][i] = -1
    return mat


def _reflect(coords: Coords, j: int, col: tuple[int, ...]) -> Coords:
    """Image of a coordinate vector under the simple reflection s_j."""
    pairing = sum(c * a for c, a in zip(coords, col))
    out = list(coords)
    out[j] -= pairing
    return tuple(out)


def _close_positive_roots(ctype: CartanType, seeds: list[Coords]) -> set[Coords]:
    """Saturate a seed set under all simple reflections, keeping the
    all-nonnegative images.  Terminates because heights are bounded."""
    mat = cartan_matrix(ctype)
    cols = [tuple(mat[i][j] for i in range(ctype.rank)) for j in range(ctype.rank)]
    found: set[Coords] = set(seeds)
    frontier = list(seeds)
    rounds = 0
    while frontier:
        rounds += 1
        if rounds > 1000:
            raise NonTerminating(f"closure for {ctype} did not stabilize")
        fresh: list[Coords] = []
        for root in frontier:
            for j in range(ctype.rank):
                image = _reflect(root, j, cols[j])
                if min(image) >= 0 and image not in found:
                    found.add(image)
                    fresh.append(image)
        frontier = fresh
    return found


class RootSystem:
    """Positive roots of one Cartan type in canonical (height, lex) order.

    Fields:
        ctype             CartanType
        positive_roots    tuple of coordinate tuples over the simple basis
        heights           coordinate sums, aligned with positive_roots
        odd_mask          True where the height is odd
        reflection_tables one signed permutation of root indices per simple
                          root s: entry (target, sign) means s maps root k to
                          sign * root target; exactly index s itself flips
    """

    def __init__(self, ctype: CartanType, positive: list[Coords]):
        self.ctype = ctype
        order = sorted(positive, key=lambda c: (sum(c), c))
        self.positive_roots: tuple[Coords, ...] = tuple(order)
        self.heights: tuple[int, ...] = tuple(sum(c) for c in order)
        self.odd_mask: tuple[bool, ...] = tuple(h % 2 == 1 for h in self.heights)
        self.index_of: dict[Coords, int] = {c: k for k, c in enumerate(order)}
        # lex order reverses the unit vectors, so simple root j is generally
        # not at position j
        self.simple_index: tuple[int, ...] = tuple(
            self.index_of[tuple(int(i == j) for i in range(ctype.rank))]
            for j in range(ctype.rank)
        )
        self._build_tables()

    def _build_tables(self) -> None:
        r = self.ctype.rank
        n = len(self.positive_roots)
        mat = cartan_matrix(self.ctype)
        cols = [tuple(mat[i][j] for i in range(r)) for j in range(r)]
        tgt = np.empty((r, n), dtype=np.int16)
        neg = np.empty((r, n), dtype=np.uint8)
        for j in range(r):
            for k, coords in enumerate(self.positive_roots):
                image = _reflect(coords, j, cols[j])
                if min(image) >= 0:
                    tgt[j, k], neg[j, k] = self.index_of[image], 0
                else:
                    flipped = tuple(-c for c in image)
                    tgt[j, k], neg[j, k] = self.index_of[flipped], 1
        self._refl_tgt = tgt
        self._refl_neg = neg

    @property
    def rank(self) -> int:
        return self.ctype.rank

    @property
    def size(self) -> int:
        """Number of positive roots."""
        return len(self.positive_roots)

    @property
    def odd_indices(self) -> tuple[int, ...]:
        return tuple(k for k, odd in enumerate(self.odd_mask) if odd)

    @property
    def reflection_tables(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        return tuple(
            tuple(
                (int(t), -1 if f else 1)
                for t, f in zip(self._refl_tgt[j], self._refl_neg[j])
            )
            for j in range(self.rank)
        )

    def simple_root_index(self, j: int) -> int:
        """Index of simple root j among the positive roots."""
        if not 0 <= j < self.rank:
            raise IndexOutOfRange(f"simple root index {j} outside [0, {self.rank})")
        return self.simple_index[j]

    def __repr__(self) -> str:
        return f"RootSystem({self.ctype}, {self.size} positive roots)"


def build_root_system(ctype: CartanType) -> RootSystem:
    """Construct the root system of ctype by reflection closure."""
    r = ctype.rank
    simples: list[Coords] = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    positive = _close_positive_roots(ctype, simples)
    system = RootSystem(ctype, sorted(positive))
    if system.size != positive_root_count(ctype):
        raise NonTerminating(
            f"closure produced {system.size} roots for {ctype}, "
            f"expected {positive_root_count(ctype)}"
        )
    return system


@lru_cache(maxsize=None)
def root_system(ctype: CartanType) -> RootSystem:
    """Cached accessor; root systems are immutable once built."""
    return build_root_system(ctype)


def odd_roots(system: RootSystem) -> tuple[Coords, ...]:
    """Positive roots of odd height."""
    return tuple(c for c, odd in zip(system.positive_roots, system.odd_mask) if odd)
