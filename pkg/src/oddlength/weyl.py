"""Weyl group elements as signed permutations of the positive roots.

An element stores, for every positive root index k, the index of the image
root and a flag saying whether the image is negative.  Length is the number
of flags set, odd length the number of flags set at odd-height roots, and a
separate word parity bit keeps (-1)^length cheap under composition.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .cartan import CartanType, RootSystem, group_order
from .errors import (
    BudgetExceeded,
    IndexOutOfRange,
    InvalidWindow,
    SystemMismatch,
    TypeMismatch,
)

__all__ = [
    "WeylElement",
    "identity",
    "simple_reflection",
    "multiply",
    "length_by_roots",
    "odd_length_by_roots",
    "window_to_element",
    "element_to_window",
    "enumerate_group",
    "transversal_chain",
    "conjugate_simple_system",
    "ConjugatedRootSystem",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**8


class WeylElement:
    """Group element given by its action on the positive roots.

    tgt[k] is the positive-root index of the image of root k up to sign and
    neg[k] is 1 when that sign is negative.  parity equals length mod 2.
    Two elements are equal when they agree on the simple roots; that already
    determines the action everywhere.
    """

    __slots__ = ("system", "tgt", "neg", "parity")

    def __init__(self, system: RootSystem, tgt: np.ndarray, neg: np.ndarray, parity: int):
        self.system = system
        self.tgt = tgt
        self.neg = neg
        self.parity = parity

    def key(self) -> bytes:
        r = self.system.rank
        signed = (self.tgt[:r].astype(np.int32) + 1) * (1 - 2 * self.neg[:r].astype(np.int32))
        return signed.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.system is other.system and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def image(self, k: int) -> tuple[int, int]:
        """Image of positive root k as (target index, sign)."""
        return int(self.tgt[k]), -1 if self.neg[k] else 1

    def __repr__(self) -> str:
        return f"WeylElement({self.system.ctype}, len={length_by_roots(self)})"


def identity(system: RootSystem) -> WeylElement:
    n = system.size
    return WeylElement(system, np.arange(n, dtype=np.int16), np.zeros(n, dtype=np.uint8), 0)


def simple_reflection(system: RootSystem, j: int) -> WeylElement:
    if not 0 <= j < system.rank:
        raise IndexOutOfRange(f"simple reflection index {j} outside [0, {system.rank})")
    return WeylElement(system, system._refl_tgt[j].copy(), system._refl_neg[j].copy(), 1)


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    """Product u v acting as (u v)(a) = u(v(a))."""
    if u.system is not v.system:
        raise SystemMismatch("elements live in different root systems")
    tgt = u.tgt[v.tgt]
    neg = v.neg ^ u.neg[v.tgt]
    return WeylElement(u.system, tgt, neg, (u.parity + v.parity) & 1)


def length_by_roots(w: WeylElement) -> int:
    """Coxeter length: positive roots sent to negative ones."""
    return int(w.neg.sum())


def odd_length_by_roots(w: WeylElement) -> int:
    """Odd-height positive roots sent to negative ones."""
    sys = w.system
    if not hasattr(sys, "_odd_idx_arr"):
        sys._odd_idx_arr = np.array(sys.odd_indices, dtype=np.int64)
    return int(w.neg[sys._odd_idx_arr].sum())


# ---------------------------------------------------------------------------
# window representation for the classical families

def _ambient_simple_vectors(ctype: CartanType) -> list[tuple[int, ...]]:
    """Simple roots as integer vectors in Z^n, n the window size."""
    n = ctype.window_size
    vecs: list[list[int]] = []
    fam = ctype.family
    first: dict[str, list[int]] = {}
    if fam != "A":
        e1 = [0] * n
        e1[0] = 1
        if fam == "B":
            first["v"] = e1
        elif fam == "C":
            first["v"] = [2 * c for c in e1]
        else:
            v = [0] * n
            v[0] = v[1] = 1
            first["v"] = v
        vecs.append(first["v"])
    chain = ctype.rank if fam == "A" else ctype.rank - 1
    for i in range(chain):
        v = [0] * n
        v[i], v[i + 1] = -1, 1
        vecs.append(v)
    return [tuple(v) for v in vecs]


def _ambient_root_vectors(system: RootSystem) -> list[tuple[int, ...]]:
    simples = _ambient_simple_vectors(system.ctype)
    n = len(simples[0])
    out = []
    for coords in system.positive_roots:
        v = [0] * n
        for c, s in zip(coords, simples):
            for i in range(n):
                v[i] += c * s[i]
        out.append(tuple(v))
    return out


def _check_window(ctype: CartanType, window: Sequence[int]) -> tuple[int, ...]:
    n = ctype.window_size
    w = tuple(int(x) for x in window)
    if len(w) != n or sorted(abs(x) for x in w) != list(range(1, n + 1)):
        raise InvalidWindow(f"{list(window)} is not a signed permutation window of size {n}")
    if ctype.family == "A" and any(x < 0 for x in w):
        raise InvalidWindow("type A windows must be plain permutations")
    if ctype.family == "D" and sum(x < 0 for x in w) % 2:
        raise InvalidWindow("type D windows need an even number of negative entries")
    return w


def window_to_element(system: RootSystem, window: Sequence[int]) -> WeylElement:
    """Element acting by e_i -> sign(w(i)) e_{|w(i)|} for window w."""
    ctype = system.ctype
    if not ctype.is_classical:
        raise TypeMismatch(f"{ctype} has no window representation")
    w = _check_window(ctype, window)
    vectors = _cached_root_vectors(system)
    lookup = {v: k for k, v in enumerate(vectors)}
    n = len(w)
    size = system.size
    tgt = np.empty(size, dtype=np.int16)
    neg = np.empty(size, dtype=np.uint8)
    for k, vec in enumerate(vectors):
        out = [0] * n
        for i in range(n):
            c = vec[i]
            if c:
                s = w[i]
                out[abs(s) - 1] += c if s > 0 else -c
        key = tuple(out)
        hit = lookup.get(key)
        if hit is not None:
            tgt[k], neg[k] = hit, 0
        else:
            tgt[k], neg[k] = lookup[tuple(-x for x in out)], 1
    return WeylElement(system, tgt, neg, int(neg.sum()) & 1)


def _cached_root_vectors(system: RootSystem) -> list[tuple[int, ...]]:
    if not hasattr(system, "_ambient_vectors"):
        system._ambient_vectors = _ambient_root_vectors(system)
    return system._ambient_vectors


def element_to_window(w: WeylElement) -> tuple[int, ...]:
    """Window of a classical element; inverse of window_to_element."""
    system = w.system
    ctype = system.ctype
    if not ctype.is_classical:
        raise TypeMismatch(f"{ctype} has no window representation")
    vectors = _cached_root_vectors(system)
    n = ctype.window_size

    def image_of_root(k: int, sign: int = 1) -> list[int]:
        t, s = w.image(k)
        v = vectors[t]
        s *= sign
        return [s * c for c in v]

    def root_index(vec: tuple[int, ...]) -> tuple[int, int]:
        lookup = {v: k for k, v in enumerate(vectors)}
        if vec in lookup:
            return lookup[vec], 1
        return lookup[tuple(-c for c in vec)], -1

    fam = ctype.family
    window = [0] * n
    if fam in "BC":
        scale = 1 if fam == "B" else 2
        for i in range(n):
            e = [0] * n
            e[i] = scale
            k, sign = root_index(tuple(e))
            img = image_of_root(k, sign)
            j = next(a for a, c in enumerate(img) if c)
            window[i] = (j + 1) if img[j] > 0 else -(j + 1)
    elif fam == "D":
        # e_i = ((e_i + e_j) + (e_i - e_j)) / 2 with any j != i
        for i in range(n):
            j = 0 if i else 1
            plus, minus = [0] * n, [0] * n
            plus[i] = plus[j] = 1
            minus[i], minus[j] = 1, -1
            total = [0] * n
            for vec in (tuple(plus), tuple(minus)):
                k, sign = root_index(vec)
                for a, c in enumerate(image_of_root(k, sign)):
                    total[a] += c
            a = next(b for b, c in enumerate(total) if c)
            window[i] = (a + 1) if total[a] > 0 else -(a + 1)
    else:
        # images of e_j - e_1 share the coordinate -1 at position w(1)
        if n == 1:
            return (1,)
        images = []
        for j in range(1, n):
            vec = [0] * n
            vec[0], vec[j] = -1, 1
            k, sign = root_index(tuple(vec))
            images.append(image_of_root(k, sign))
        negs = [next(a for a, c in enumerate(img) if c < 0) for img in images]
        first = negs[0]
        window[0] = first + 1
        for j, img in enumerate(images, start=1):
            window[j] = next(a for a, c in enumerate(img) if c > 0) + 1
    return tuple(window)


# ---------------------------------------------------------------------------
# enumeration by coset descent

def _sift(w: WeylElement, j_limit: int) -> WeylElement:
    """Minimal representative of w W_J for J = simple indices below j_limit."""
    system = w.system
    simple_at = system.simple_index
    while True:
        for j in range(j_limit):
            if w.neg[simple_at[j]]:
                w = multiply(w, simple_reflection(system, j))
                break
        else:
            return w


def transversal_chain(system: RootSystem) -> list[list[WeylElement]]:
    """Minimal coset representatives along the parabolic chain that drops the
    highest-numbered simple generator first.

    Level k lists the representatives of <s_0..s_{r-2-k}> inside
    <s_0..s_{r-1-k}>; every group element is the product of one representative
    per level, taken left to right, exactly once.
    """
    if not hasattr(system, "_chain"):
        r = system.rank
        chain: list[list[WeylElement]] = []
        for k in range(r):
            gens = [simple_reflection(system, i) for i in range(r - k)]
            j_limit = r - k - 1
            start = identity(system)
            reps = {start.key(): start}
            frontier = [start]
            while frontier:
                fresh = []
                for u in frontier:
                    for s in gens:
                        v = _sift(multiply(s, u), j_limit)
                        key = v.key()
                        if key not in reps:
                            reps[key] = v
                            fresh.append(v)
                frontier = fresh
            level = sorted(reps.values(), key=lambda u: (length_by_roots(u), u.key()))
            chain.append(level)
        system._chain = chain
    return system._chain


def enumerate_group(
    system: RootSystem, budget: int = DEFAULT_BUDGET
) -> Iterator[WeylElement]:
    """Yield every group element exactly once, in a fixed order.

    Raises BudgetExceeded up front when the group is larger than budget; the
    partitioned engine handles those sizes.
    """
    order = group_order(system.ctype)
    if order > budget:
        raise BudgetExceeded(
            f"group of order {order} exceeds the element budget {budget}"
        )
    chain = transversal_chain(system)

    def descend(level: int, prefix: WeylElement) -> Iterator[WeylElement]:
        if level == len(chain):
            yield prefix
            return
        for u in chain[level]:
            yield from descend(level + 1, multiply(prefix, u))

    return descend(0, identity(system))


# ---------------------------------------------------------------------------
# conjugated simple systems

class ConjugatedRootSystem(RootSystem):
    """Root system with simple basis w(Delta), kept alongside its embedding
    into the base system.

    ambient[k] = (index, sign) writes the k-th new positive root as
    sign * (base positive root index) in the base coordinates.  Lengths of
    base-system elements with respect to the new positive system are computed
    from that embedding alone.
    """

    def __init__(self, base: RootSystem, conjugator: WeylElement):
        self.base = base
        self.conjugator = conjugator
        ambient = [conjugator.image(k) for k in range(base.size)]
        simple_vecs = [
            self._ambient_coords(ambient[base.simple_index[j]])
            for j in range(base.rank)
        ]
        coords = [
            self._solve_over_basis(simple_vecs, self._ambient_coords(img))
            for img in ambient
        ]
        order = sorted(range(base.size), key=lambda k: (sum(coords[k]), coords[k]))
        super().__init__(base.ctype, [coords[k] for k in order])
        self.ambient: tuple[tuple[int, int], ...] = tuple(ambient[k] for k in order)
        # sign with which each base root appears in the new positive system
        self._pos_sign = {idx: sign for idx, sign in self.ambient}

    def _ambient_coords(self, signed: tuple[int, int]) -> tuple[int, ...]:
        idx, sign = signed
        return tuple(sign * c for c in self.base.positive_roots[idx])

    @staticmethod
    def _solve_over_basis(
        basis: list[tuple[int, ...]], target: tuple[int, ...]
    ) -> tuple[int, ...]:
        """Exact coordinates of target over the given basis vectors."""
        r = len(basis)
        dim = len(target)
        rows = [[Fraction(basis[j][i]) for j in range(r)] + [Fraction(target[i])] for i in range(dim)]
        col = 0
        for j in range(r):
            pivot = next(i for i in range(col, dim) if rows[i][j] != 0)
            rows[col], rows[pivot] = rows[pivot], rows[col]
            lead = rows[col][j]
            rows[col] = [x / lead for x in rows[col]]
            for i in range(dim):
                if i != col and rows[i][j] != 0:
                    f = rows[i][j]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
            col += 1
        sol = [rows[i][r] for i in range(r)]
        if any(x.denominator != 1 for x in sol):
            raise SystemMismatch("conjugated simple roots do not span the root lattice")
        return tuple(int(x) for x in sol)

    def length_of(self, w: WeylElement) -> int:
        """Coxeter length of a base-system element relative to this system."""
        if w.system is not self.base:
            raise SystemMismatch("element does not belong to the base system")
        return self._flips(w, odd_only=False)

    def odd_length_of(self, w: WeylElement) -> int:
        if w.system is not self.base:
            raise SystemMismatch("element does not belong to the base system")
        return self._flips(w, odd_only=True)

    def _flips(self, w: WeylElement, odd_only: bool) -> int:
        count = 0
        for k, (idx, sign) in enumerate(self.ambient):
            if odd_only and not self.odd_mask[k]:
                continue
            t, s = w.image(idx)
            if sign * s != self._pos_sign[t]:
                count += 1
        return count


def conjugate_simple_system(system: RootSystem, w: WeylElement) -> ConjugatedRootSystem:
    """Root system on the simple basis w(Delta), positive system w(Phi+)."""
    if w.system is not system:
        raise SystemMismatch("conjugator does not belong to the given system")
    return ConjugatedRootSystem(system, w)


# ---------------------------------------------------------------------------
# window iterators for the classical groups

def iter_group_windows(ctype: CartanType) -> Iterator[tuple[int, ...]]:
    """All windows of the classical group of ctype, plain S_n order inside
    each sign pattern."""
    if not ctype.is_classical:
        raise TypeMismatch(f"{ctype} has no window representation")
    n = ctype.window_size
    fam = ctype.family
    if fam == "A":
        yield from itertools.permutations(range(1, n + 1))
        return
    for signs in itertools.product((1, -1), repeat=n):
        if fam == "D" and signs.count(-1) % 2:
            continue
        for p in itertools.permutations(range(1, n + 1)):
            yield tuple(s * v for s, v in zip(p, signs))
