"""Exact arithmetic in the ring Z[sqrt(s) : s square-free positive].

Elements are finite integer combinations ``sum c_s * sqrt(s)`` keyed by
square-free s, with the rational part stored under s = 1.  This is all
the irrationality the edge-weight formulas need: products of square
roots of integers stay inside the ring because
``sqrt(s1)*sqrt(s2) = g*sqrt(s3)`` where g = gcd(s1, s2) and s3 is the
square-free part of s1*s2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotRational


def squarefree_decompose(w: int) -> tuple[int, int]:
    """Split w >= 0 as c*c*s with s square-free; returns (c, s).

    Trial division; weights at desk scale stay far below 10**6.
    """
    if w < 0:
        raise ValueError("negative argument has no real square root here")
    if w == 0:
        return 0, 1
    c, s = 1, 1
    rest = w
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            c *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    s *= rest
    return c, s


@dataclass(frozen=True)
class SqrtNum:
    """Immutable ring element; ``terms`` maps square-free s to a nonzero
    integer coefficient.  The empty map is zero."""

    terms: tuple[tuple[int, int], ...]  # sorted ((s, coeff), ...)

    @staticmethod
    def _make(mapping: dict[int, int]) -> "SqrtNum":
        items = tuple(sorted((s, c) for s, c in mapping.items() if c != 0))
        return SqrtNum(items)

    @classmethod
    def from_int(cls, n: int) -> "SqrtNum":
        return cls._make({1: n})

    @classmethod
    def from_sqrt(cls, w: int) -> "SqrtNum":
        """sqrt(w) in normal form c*sqrt(s), w >= 0."""
        c, s = squarefree_decompose(w)
        return cls._make({s: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SqrtNum | int") -> "SqrtNum":
        if isinstance(other, int):
            other = SqrtNum.from_int(other)
        acc = dict(self.terms)
        for s, c in other.terms:
            acc[s] = acc.get(s, 0) + c
        return SqrtNum._make(acc)

    __radd__ = __add__

    def __neg__(self) -> "SqrtNum":
        return SqrtNum(tuple((s, -c) for s, c in self.terms))

    def __sub__(self, other: "SqrtNum | int") -> "SqrtNum":
        if isinstance(other, int):
            other = SqrtNum.from_int(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "SqrtNum":
        return SqrtNum.from_int(other) + (-self)

    def __mul__(self, other: "SqrtNum | int") -> "SqrtNum":
        if isinstance(other, int):
            other = SqrtNum.from_int(other)
        acc: dict[int, int] = {}
        for s1, c1 in self.terms:
            for s2, c2 in other.terms:
                g = math.gcd(s1, s2)
                s3 = (s1 // g) * (s2 // g)
                acc[s3] = acc.get(s3, 0) + c1 * c2 * g
        return SqrtNum._make(acc)

    __rmul__ = __mul__

    def as_integer(self) -> int:
        """The element as a rational integer, or NotRational."""
        for s, c in self.terms:
            if s != 1:
                raise NotRational(f"irrational term {c}*sqrt({s})", term=(s, c))
        return self.terms[0][1] if self.terms else 0

    def __float__(self) -> float:
        return float(sum(c * math.sqrt(s) for s, c in self.terms))

    def to_json(self) -> list[dict[str, int]]:
        return [{"sqfree": s, "coeff": c} for s, c in self.terms]

    @classmethod
    def from_json(cls, data: list[dict[str, int]]) -> "SqrtNum":
        acc: dict[int, int] = {}
        for item in data:
            s, c = int(item["sqfree"]), int(item["coeff"])
            _, sf = squarefree_decompose(s)
            if sf != s:
                raise ValueError(f"key {s} is not square-free")
            acc[s] = acc.get(s, 0) + c
        return cls._make(acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for s, c in self.terms:
            if s == 1:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(f"√{s}")
            elif c == -1:
                parts.append(f"-√{s}")
            else:
                parts.append(f"{c}√{s}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def from_sqrt(w: int) -> SqrtNum:
    return SqrtNum.from_sqrt(w)


def from_int(n: int) -> SqrtNum:
    return SqrtNum.from_int(n)
