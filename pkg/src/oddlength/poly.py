"""Sparse multivariate polynomials over the integers.

Terms map exponent tuples to nonzero coefficients.  Arithmetic is exact;
coefficients are kept inside the signed 64-bit range on purpose, so a blown
bound raises instead of silently widening.  Serialized terms are ordered
lexicographically by exponent tuple, which makes every dump canonical.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from .errors import Overflow, VarMismatch

__all__ = ["Monomial", "Poly", "expand_product"]

Monomial = tuple[int, ...]

_COEF_MAX = 2**63 - 1
_EXP_MAX = 2**16 - 1


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Monomial, int] | None = None):
        self.vars: tuple[str, ...] = tuple(vars)
        clean: dict[Monomial, int] = {}
        for expo, coef in (terms or {}).items():
            if coef == 0:
                continue
            expo = tuple(int(e) for e in expo)
            if len(expo) != len(self.vars):
                raise VarMismatch(
                    f"exponent tuple {expo} does not fit variables {self.vars}"
                )
            _check_term(expo, coef)
            clean[expo] = int(coef)
        self.terms = clean

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> Poly:
        return cls(vars, {})

    @classmethod
    def const(cls, c: int, vars: Sequence[str]) -> Poly:
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> Poly:
        vs = tuple(vars)
        expo = tuple(int(v == name) for v in vs)
        if sum(expo) != 1:
            raise VarMismatch(f"{name!r} is not one of {vs}")
        return cls(vs, {expo: 1})

    @classmethod
    def monomial(cls, vars: Sequence[str], expo: Sequence[int], coef: int = 1) -> Poly:
        return cls(vars, {tuple(expo): coef})

    # ring operations ------------------------------------------------------

    def _match(self, other: Poly) -> None:
        if self.vars != other.vars:
            raise VarMismatch(f"variable tuples differ: {self.vars} vs {other.vars}")

    def __add__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            other = Poly.const(other, self.vars)
        self._match(other)
        out = dict(self.terms)
        for expo, coef in other.terms.items():
            out[expo] = out.get(expo, 0) + coef
        return Poly(self.vars, out)

    def __sub__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            other = Poly.const(other, self.vars)
        return self + (-other)

    def __neg__(self) -> Poly:
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        self._match(other)
        out: dict[Monomial, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                out[expo] = out.get(expo, 0) + c1 * c2
        return Poly(self.vars, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative powers are not defined here")
        out = Poly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # queries --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, expo: Sequence[int]) -> int:
        return self.terms.get(tuple(expo), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items())

    def eval_int(self, point: Sequence[int]) -> int:
        if len(point) != len(self.vars):
            raise VarMismatch(f"point {point} does not fit variables {self.vars}")
        total = 0
        for expo, coef in self.terms.items():
            v = coef
            for x, e in zip(point, expo):
                v *= x**e
            total += v
        if abs(total) > _COEF_MAX:
            raise Overflow(f"evaluation {total} left the 64-bit range")
        return total

    def substitute_collapse(self, mapping: Mapping[str, str]) -> Poly:
        """Rename or merge variables; exponents of merged variables add."""
        targets = [mapping.get(v, v) for v in self.vars]
        new_vars: list[str] = []
        for t in targets:
            if t not in new_vars:
                new_vars.append(t)
        index = {t: i for i, t in enumerate(new_vars)}
        out: dict[Monomial, int] = {}
        for expo, coef in self.terms.items():
            merged = [0] * len(new_vars)
            for e, t in zip(expo, targets):
                merged[index[t]] += e
            key = tuple(merged)
            out[key] = out.get(key, 0) + coef
        return Poly(new_vars, out)

    # serialization --------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"e": list(e), "c": c} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> Poly:
        return cls(tuple(data["vars"]), {tuple(t["e"]): t["c"] for t in data["terms"]})

    def dumps(self) -> str:
        """Canonical JSON text; equal polynomials dump to equal bytes."""
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def loads(cls, text: str) -> Poly:
        return cls.from_json_dict(json.loads(text))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for expo, coef in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            body = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, expo) if e
            )
            mag = abs(coef)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            parts.append(("- " if coef < 0 else "+ ") + piece)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"Poly({self})"


def _check_term(expo: Monomial, coef: int) -> None:
    if abs(coef) > _COEF_MAX:
        raise Overflow(f"coefficient {coef} left the 64-bit range")
    for e in expo:
        if e < 0 or e > _EXP_MAX:
            raise Overflow(f"exponent {e} outside [0, {_EXP_MAX}]")


def expand_product(factors: Iterable[Poly], vars: Sequence[str] | None = None) -> Poly:
    """Multiply out a list of factors; the empty product is 1."""
    factors = list(factors)
    if not factors:
        return Poly.const(1, vars if vars is not None else ())
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out
