"""Signed generating functions over Weyl groups and their closed forms.

A profile names the tuple of statistics carried as exponents; the sign is
always (-1) to the Coxeter length of the element.  Classical groups are
enumerated in window notation, exceptional ones through their action on the
positive roots (see engine.py).  Every closed form asserted by verify() is
multiplied out exactly and compared term by term.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from .cartan import CartanType, group_order, root_system
from .errors import (
    BudgetExceeded,
    NoPrediction,
    OutOfStatedRange,
    UnsupportedProfile,
)
from .poly import Poly, expand_product
from .stats import (
    StatisticId,
    SignedPermutation,
    atomic_stats,
    COMPOSITE,
    is_chessboard,
    is_good_chessboard,
    is_unimodal,
)
from .weyl import DEFAULT_BUDGET, iter_group_windows

__all__ = [
    "ResolvedProfile",
    "GFResult",
    "VerifyReport",
    "PROFILES",
    "RESTRICTIONS",
    "resolve_profile",
    "signed_gf",
    "predicted_gf",
    "predicted_display",
    "predicted_multivariate",
    "verify_univariate",
    "verify_multivariate",
    "verify_restriction",
    "verification_suite",
]

_S = StatisticId

# window statistic tuple and sign statistic per profile; None marks the
# type-resolved odd-length profile
_PROFILE_TABLE: dict[str, tuple[tuple[str, ...], tuple[_S, ...], _S, str]] = {
    "B-4var": (("x1", "x2", "y", "z"), (_S.oneg, _S.eneg, _S.oinv, _S.ensp), _S.len_B, "B"),
    "B-ooo": (("x", "y", "z"), (_S.oneg, _S.oinv, _S.onsp), _S.len_B, "B"),
    "B-eoo": (("x", "y", "z"), (_S.eneg, _S.oinv, _S.onsp), _S.len_B, "B"),
    "B-nonfactor": (("x1", "x2", "y", "z"), (_S.oneg, _S.eneg, _S.oinv, _S.onsp), _S.len_B, "B"),
    "uni-ooe": (("x",), (_S.L_ooe,), _S.len_B, "B"),
    "uni-eoe": (("x",), (_S.L_eoe,), _S.len_B, "B"),
    "uni-eoo": (("x",), (_S.L_eoo,), _S.len_B, "B"),
    "D-bivar": (("x", "y"), (_S.oinv, _S.onsp), _S.len_D, "D"),
    "D-oe": (("x", "y"), (_S.oinv, _S.ensp), _S.len_D, "D"),
}

_ODD_LENGTH_BY_FAMILY: dict[str, tuple[_S, _S]] = {
    "A": (_S.L_A, _S.len_A),
    "B": (_S.L_B, _S.len_B),
    "C": (_S.L_C, _S.len_B),
    "D": (_S.L_D, _S.len_D),
}

PROFILES: tuple[str, ...] = ("odd-length",) + tuple(_PROFILE_TABLE)

RESTRICTIONS: dict[str, tuple[str, ...]] = {
    # restriction name -> families it is defined for
    "full": ("A", "B", "C", "D", "E", "F", "G"),
    "unimodal": ("A",),
    "chessboard": ("A", "D"),
    "good-chessboard": ("D",),
}


@dataclass(frozen=True)
class ResolvedProfile:
    name: str
    vars: tuple[str, ...]
    window_stats: tuple[_S, ...] | None  # None: odd length through root action
    sign_stat: _S | None


def resolve_profile(name: str, ctype: CartanType) -> ResolvedProfile:
    if name == "odd-length":
        if ctype.is_classical:
            stat, sign = _ODD_LENGTH_BY_FAMILY[ctype.family]
            return ResolvedProfile(name, ("x",), (stat,), sign)
        return ResolvedProfile(name, ("x",), None, None)
    if name not in _PROFILE_TABLE:
        raise UnsupportedProfile(f"unknown profile {name!r}")
    vars_, stats, sign, family = _PROFILE_TABLE[name]
    if ctype.family != family:
        raise UnsupportedProfile(f"profile {name!r} is defined on family {family} only")
    return ResolvedProfile(name, vars_, stats, sign)


@dataclass(frozen=True)
class GFResult:
    poly: Poly
    ctype: CartanType
    profile: str
    restriction: str
    elements: int
    elapsed: float
    n_parts: int | None = None
    parts_done: tuple[int, ...] | None = None


# ---------------------------------------------------------------------------
# window enumeration backends

def _restriction_predicate(restriction: str, ctype: CartanType):
    if restriction not in RESTRICTIONS:
        raise UnsupportedProfile(f"unknown restriction {restriction!r}")
    if ctype.family not in RESTRICTIONS[restriction]:
        raise UnsupportedProfile(
            f"restriction {restriction!r} is not defined on family {ctype.family}"
        )
    if restriction == "full":
        return None
    if restriction == "unimodal":
        return is_unimodal
    if restriction == "chessboard":
        return is_chessboard
    return lambda win: is_good_chessboard(SignedPermutation.of(win))


def _gf_windows_python(ctype, profile, predicate, unsigned):
    sign_parts = tuple(s.value for s in COMPOSITE[profile.sign_stat])
    var_parts = [
        tuple(s.value for s in COMPOSITE.get(stat, (stat,)))
        for stat in profile.window_stats
    ]
    acc: dict[tuple[int, ...], int] = {}
    count = 0
    for win in iter_group_windows(ctype):
        if predicate is not None and not predicate(win):
            continue
        count += 1
        table = atomic_stats(win)
        expo = tuple(sum(table[p] for p in parts) for parts in var_parts)
        weight = 1 if unsigned else (-1) ** (sum(table[p] for p in sign_parts) & 1)
        acc[expo] = acc.get(expo, 0) + weight
    return Poly(profile.vars, acc), count


def _sign_blocks(ctype):
    n = ctype.window_size
    if ctype.family == "A":
        return [np.ones(n, dtype=np.int64)]
    blocks = []
    for signs in itertools.product((1, -1), repeat=n):
        if ctype.family == "D" and signs.count(-1) % 2:
            continue
        blocks.append(np.array(signs, dtype=np.int64))
    return blocks


def _gf_windows_numpy(ctype, profile, unsigned):
    """Blocked evaluation over all windows: one block per sign pattern."""
    n = ctype.window_size
    perms = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int64)
    atomic_names = ("oinv", "einv", "onsp", "ensp", "oneg", "eneg")
    var_parts = [
        tuple(s.value for s in COMPOSITE.get(stat, (stat,)))
        for stat in profile.window_stats
    ]
    sign_parts = tuple(s.value for s in COMPOSITE[profile.sign_stat])

    bound = _atomic_bounds(n)
    dims = tuple(1 + sum(bound[p] for p in parts) for parts in var_parts)
    size = int(np.prod(dims))
    pos = np.zeros(size, dtype=np.int64)
    neg = np.zeros(size, dtype=np.int64)

    pairs = [(i, j, (j - i) & 1) for i in range(n - 1) for j in range(i + 1, n)]
    for signs in _sign_blocks(ctype):
        win = perms * signs
        cols = {name: np.zeros(len(win), dtype=np.int64) for name in atomic_names}
        for i, j, odd in pairs:
            gt = win[:, i] > win[:, j]
            ns = (win[:, i] + win[:, j]) < 0
            if odd:
                cols["oinv"] += gt
                cols["onsp"] += ns
            else:
                cols["einv"] += gt
                cols["ensp"] += ns
        for i in range(n):
            cols["oneg" if i % 2 == 0 else "eneg"] += win[:, i] < 0
        cols["inv"] = cols["oinv"] + cols["einv"]
        cols["nsp"] = cols["onsp"] + cols["ensp"]
        cols["neg"] = cols["oneg"] + cols["eneg"]

        expo_cols = [sum(cols[p] for p in parts) for parts in var_parts]
        codes = np.ravel_multi_index(expo_cols, dims)
        if unsigned:
            pos += np.bincount(codes, minlength=size)
        else:
            parity = sum(cols[p] for p in sign_parts) & 1
            pos += np.bincount(codes[parity == 0], minlength=size)
            neg += np.bincount(codes[parity == 1], minlength=size)

    coef = pos - neg
    hits = np.nonzero(coef)[0]
    expos = np.unravel_index(hits, dims)
    terms = {
        tuple(int(expos[v][i]) for v in range(len(dims))): int(coef[hits[i]])
        for i in range(len(hits))
    }
    return Poly(profile.vars, terms)


def _atomic_bounds(n: int) -> dict[str, int]:
    odd_pairs = sum(n - g for g in range(1, n, 2))
    even_pairs = sum(n - g for g in range(2, n, 2))
    return {
        "oinv": odd_pairs,
        "einv": even_pairs,
        "onsp": odd_pairs,
        "ensp": even_pairs,
        "inv": odd_pairs + even_pairs,
        "nsp": odd_pairs + even_pairs,
        "oneg": (n + 1) // 2,
        "eneg": n // 2,
        "neg": n,
    }


_NUMPY_CUTOVER = 200_000


def signed_gf(
    ctype: CartanType,
    profile: str = "odd-length",
    restriction: str = "full",
    *,
    budget: int = DEFAULT_BUDGET,
    unsigned: bool = False,
) -> GFResult:
    """Exact signed generating function by exhaustive enumeration."""
    start = time.perf_counter()
    resolved = resolve_profile(profile, ctype)
    order = group_order(ctype)
    if order > budget:
        raise BudgetExceeded(
            f"group of order {order} exceeds the element budget {budget};"
            " use run_partitioned"
        )
    if resolved.window_stats is None:
        if restriction != "full":
            raise UnsupportedProfile(
                f"restriction {restriction!r} needs the window representation"
            )
        from .engine import odd_length_gf_by_roots

        poly = odd_length_gf_by_roots(root_system(ctype), unsigned=unsigned)
        count = order
    else:
        predicate = _restriction_predicate(restriction, ctype)
        if predicate is None and order >= _NUMPY_CUTOVER:
            poly = _gf_windows_numpy(ctype, resolved, unsigned)
            count = order
        else:
            poly, count = _gf_windows_python(ctype, resolved, predicate, unsigned)
    return GFResult(
        poly, ctype, profile, restriction, count, time.perf_counter() - start
    )


# ---------------------------------------------------------------------------
# closed product forms

def _x(k: int = 1) -> Poly:
    return Poly(("x",), {(k,): 1})


def _one() -> Poly:
    return Poly.const(1, ("x",))


def _a_factors(n: int) -> list[Poly]:
    # for S_n: factors (1 + (-1)^(i-1) x^floor(i/2)), i = 2..n
    return [_one() + Poly(("x",), {(i // 2,): (-1) ** (i - 1)}) for i in range(2, n + 1)]


def _a_display(n: int) -> str:
    return " ".join(
        f"(1{'+' if (-1) ** (i - 1) > 0 else '-'}x^{i // 2})" for i in range(2, n + 1)
    )


def _geo(k: int) -> Poly:
    return _one() - _x(k)


def predicted_gf(ctype: CartanType, printed_form: bool = False) -> Poly:
    """Closed form of the signed odd-length generating function.

    printed_form switches the type C answer to the shorter printed product,
    which disagrees with the enumerated series except at n = 1; keeping both
    on record is deliberate.
    """
    fam, n = ctype.family, ctype.rank
    if fam == "A":
        return expand_product(_a_factors(n + 1), ("x",))
    if fam == "B":
        return expand_product([_geo(i) for i in range(1, n + 1)], ("x",))
    if fam == "C":
        if printed_form:
            h = (n + 1) // 2
            return expand_product(
                [_geo(h)] + [_geo(2 * k) for k in range(1, h + 1)] * 2, ("x",)
            )
        if n % 2 == 0:
            h = n // 2
            factors = [_geo(h)]
            factors += [_geo(2 * k) for k in range(1, h)]
            factors += [_geo(2 * k) for k in range(1, h + 1)]
        else:
            h = (n + 1) // 2
            factors = [_geo(h)] + [_geo(2 * k) for k in range(1, h)] * 2
        return expand_product(factors, ("x",))
    if fam == "D":
        # square of the type A form at the same window size
        return expand_product(_a_factors(n) * 2, ("x",))
    if (fam, n) == ("F", 4):
        return expand_product([_geo(2), _geo(2), _geo(4), _geo(4)], ("x",))
    if (fam, n) == ("E", 6):
        return expand_product([_geo(2), _geo(4), _geo(6), _geo(8)], ("x",))
    if (fam, n) == ("E", 7):
        return expand_product([_geo(i) for i in range(2, 9)], ("x",))
    raise NoPrediction(f"no closed form on record for {ctype}")


def predicted_display(ctype: CartanType, printed_form: bool = False) -> str:
    fam, n = ctype.family, ctype.rank
    if fam == "A":
        return _a_display(n + 1)
    if fam == "B":
        return " ".join(f"(1-x^{i})" for i in range(1, n + 1))
    if fam == "C":
        h = (n + 1) // 2
        if printed_form:
            return f"(1-x^{h}) " + " ".join(f"(1-x^{2 * k})^2" for k in range(1, h + 1))
        if n % 2 == 0:
            return (
                f"(1-x^{n // 2}) "
                + " ".join(f"(1-x^{2 * k})^2" for k in range(1, n // 2))
                + f" (1-x^{n})"
            )
        return f"(1-x^{h}) " + " ".join(f"(1-x^{2 * k})^2" for k in range(1, h))
    if fam == "D":
        return " ".join(f"{p}^2" for p in _a_display(n).split())
    if (fam, n) == ("F", 4):
        return "(1-x^2)^2 (1-x^4)^2"
    if (fam, n) == ("E", 6):
        return "(1-x^2) (1-x^4) (1-x^6) (1-x^8)"
    if (fam, n) == ("E", 7):
        return " ".join(f"(1-x^{i})" for i in range(2, 9))
    raise NoPrediction(f"no closed form on record for {ctype}")


def _mono(vars_, **powers) -> Poly:
    expo = tuple(powers.get(v, 0) for v in vars_)
    return Poly(vars_, {expo: 1})


def predicted_multivariate(identity_id: str, n: int) -> Poly:
    """Closed forms of the multivariate identities, by profile name."""
    if identity_id == "B-4var":
        if n < 1:
            raise OutOfStatedRange("stated for n >= 1")
        v = ("x1", "x2", "y", "z")
        one = Poly.const(1, v)
        factors = [
            one + Poly(v, {(0, 0, (i + 1) // 2, 0): (-1) ** i}) for i in range(1, n)
        ]
        factors += [
            one - _mono(v, x1=1, x2=1, z=2 * i) for i in range(0, (n - 2) // 2 + 1)
        ]
        if n % 2 == 1:
            factors.append(one - _mono(v, x1=1, z=(n - 1) // 2))
        return expand_product(factors, v)
    if identity_id in ("B-ooo", "B-eoo"):
        if n < 1:
            raise OutOfStatedRange("stated for n >= 1")
        v = ("x", "y", "z")
        one = Poly.const(1, v)
        if identity_id == "B-eoo" and n % 2 == 1:
            return Poly.zero(v)
        shared = []
        for i in range(1, (n - 1) // 2 + 1):
            shared.append(one - _mono(v, x=1, z=2 * i))
            shared.append(one - _mono(v, y=2 * i))
        head = one - _mono(v, x=1)
        if n % 2 == 0:
            half = n // 2
            if identity_id == "B-ooo":
                mid = one - _mono(v, y=half, z=half)
            else:
                mid = _mono(v, z=half) - _mono(v, y=half)
            return expand_product([head, mid] + shared, v)
        return expand_product([head] + shared, v)
    if identity_id in ("uni-ooe", "uni-eoe", "uni-eoo"):
        if n < 3:
            raise OutOfStatedRange("stated for n >= 3")
        if identity_id == "uni-eoo":
            return Poly.zero(("x",))
        head = (n + 1) // 2 if identity_id == "uni-ooe" else n // 2
        return expand_product([_geo(head)] + [_geo(i) for i in range(1, n)], ("x",))
    if identity_id == "D-bivar":
        if n < 2:
            raise OutOfStatedRange("stated for n >= 2")
        v = ("x", "y")
        fa = expand_product(_a_factors(n), ("x",))
        px = Poly(v, {(e[0], 0): c for e, c in fa.terms.items()})
        py = Poly(v, {(0, e[0]): c for e, c in fa.terms.items()})
        return px * py
    if identity_id == "D-oe":
        if n < 2:
            raise OutOfStatedRange("stated for n >= 2")
        return Poly.zero(("x", "y"))
    if identity_id == "B-nonfactor":
        if n != 4:
            raise OutOfStatedRange("recorded for n = 4 only")
        v = ("x1", "x2", "y", "z")
        one = Poly.const(1, v)
        tail = (
            one
            + _mono(v, x1=1, x2=1, y=2, z=2)
            - _mono(v, x1=1, x2=1, z=2)
            - _mono(v, x2=1, y=2, z=2)
            + _mono(v, x1=1, z=2)
            + _mono(v, x2=1, y=2)
            - _mono(v, x1=1)
            - _mono(v, y=2)
        )
        return (one - _mono(v, y=2)) * (one - _mono(v, x1=1, x2=1, z=2)) * tail
    raise NoPrediction(f"no multivariate form on record for {identity_id!r}")


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class VerifyReport:
    name: str
    ok: bool
    computed: Poly
    predicted: Poly
    elapsed: float
    note: str = ""

    @property
    def diff(self) -> Poly:
        return self.computed - self.predicted

    def line(self) -> str:
        mark = "pass" if self.ok else "FAIL"
        extra = f"  [{self.note}]" if self.note else ""
        tail = "" if self.ok else f"  (diff has {len(self.diff.terms)} terms)"
        return f"{mark}  {self.name}{extra}{tail}"


def verify_univariate(ctype: CartanType, printed_form: bool = False) -> VerifyReport:
    start = time.perf_counter()
    predicted = predicted_gf(ctype, printed_form=printed_form)
    computed = signed_gf(ctype).poly
    tag = f"odd-length {ctype}" + (" (printed C form)" if printed_form else "")
    return VerifyReport(
        tag, computed == predicted, computed, predicted, time.perf_counter() - start
    )


def verify_multivariate(identity_id: str, n: int) -> VerifyReport:
    start = time.perf_counter()
    family = "D" if identity_id.startswith("D-") else "B"
    ctype = CartanType(family, n)
    computed = signed_gf(ctype, identity_id).poly
    predicted = predicted_multivariate(identity_id, n)
    return VerifyReport(
        f"{identity_id} n={n}",
        computed == predicted,
        computed,
        predicted,
        time.perf_counter() - start,
    )


def verify_restriction(
    ctype: CartanType, profile: str, restriction: str
) -> VerifyReport:
    """Check that restricting the domain does not change the polynomial."""
    start = time.perf_counter()
    full = signed_gf(ctype, profile).poly
    restricted = signed_gf(ctype, profile, restriction).poly
    return VerifyReport(
        f"{profile} {ctype} full = {restriction}",
        full == restricted,
        restricted,
        full,
        time.perf_counter() - start,
    )


def verification_suite(
    max_n: int = 8,
    *,
    multivariate_max_n: int = 6,
    include_exceptional: bool = True,
    include_printed_form: bool = False,
    families: tuple[str, ...] | None = None,
) -> list[VerifyReport]:
    """The desk-scale identity suite; every report should pass except the
    deliberately recorded printed type C form."""
    reports: list[VerifyReport] = []

    def want(fam: str) -> bool:
        return families is None or fam in families

    if want("A"):
        for n in range(2, max_n + 1):
            reports.append(verify_univariate(CartanType("A", n - 1)))
        for n in range(3, min(max_n, 8) + 1):
            reports.append(
                verify_restriction(CartanType("A", n - 1), "odd-length", "unimodal")
            )
            reports.append(
                verify_restriction(CartanType("A", n - 1), "odd-length", "chessboard")
            )
    if want("B"):
        for n in range(1, max_n + 1):
            reports.append(verify_univariate(CartanType("B", n)))
        for n in range(1, multivariate_max_n + 1):
            reports.append(verify_multivariate("B-4var", n))
            reports.append(verify_multivariate("B-ooo", n))
            reports.append(verify_multivariate("B-eoo", n))
        for n in range(3, multivariate_max_n + 1):
            reports.append(verify_multivariate("uni-ooe", n))
            reports.append(verify_multivariate("uni-eoe", n))
            reports.append(verify_multivariate("uni-eoo", n))
        if multivariate_max_n >= 4:
            reports.append(verify_multivariate("B-nonfactor", 4))
    if want("C"):
        for n in range(2, max_n + 1):
            reports.append(verify_univariate(CartanType("C", n)))
        if include_printed_form:
            for n in range(2, max_n + 1):
                reports.append(
                    verify_univariate(CartanType("C", n), printed_form=True)
                )
    if want("D"):
        for n in range(2, max_n + 1):
            reports.append(verify_univariate(CartanType("D", n)))
        for n in range(2, multivariate_max_n + 1):
            reports.append(verify_multivariate("D-bivar", n))
            reports.append(verify_multivariate("D-oe", n))
            reports.append(
                verify_restriction(CartanType("D", n), "D-bivar", "chessboard")
            )
            reports.append(
                verify_restriction(CartanType("D", n), "D-bivar", "good-chessboard")
            )
    if include_exceptional:
        for name in ("F4", "E6", "E7"):
            if want(name[0]):
                reports.append(verify_univariate(CartanType.parse(name)))
    return reports
