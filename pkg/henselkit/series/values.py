"""Composed value group Q^k under reverse-lexicographic order."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from henselkit.lib.errors import InputError

_INFINITY_TOKENS = {"inf", "infinity", "∞", "+inf"}


@total_ordering
@dataclass(frozen=True)
class ValueVec:
    """An element of Q^k ∪ {∞}.

    Coordinate i is the exponent of t_i. Vectors of different lengths are compared after
    padding the shorter one with zeros on the right, which is how the value group of a stage
    sits inside the value group of the next one.
    """

    coords: tuple[Fraction, ...] = ()
    infinite: bool = False

    @classmethod
    def of(cls, *coords: int | Fraction | str) -> ValueVec:
        return cls(tuple(Fraction(c) for c in coords))

    @classmethod
    def infinity(cls) -> ValueVec:
        return cls((), True)

    @classmethod
    def zero(cls, length: int = 0) -> ValueVec:
        return cls((Fraction(0),) * length)

    @property
    def length(self) -> int:
        return len(self.coords)

    @property
    def top(self) -> Fraction:
        """Outermost coordinate, 0 for the trivial group."""
        return self.coords[-1] if self.coords else Fraction(0)

    def padded(self, length: int) -> tuple[Fraction, ...]:
        if length < len(self.coords):
            extra = self.coords[length:]
            if any(extra):
                raise ValueError(f"{self} does not lie in Q^{length}")
            return self.coords[:length]
        return self.coords + (Fraction(0),) * (length - len(self.coords))

    def lift(self, length: int) -> ValueVec:
        if self.infinite:
            return self
        return ValueVec(self.padded(length))

    def _key(self, length: int) -> tuple[Fraction, ...]:
        return tuple(reversed(self.padded(length)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ValueVec):
            return NotImplemented
        if self.infinite or other.infinite:
            return self.infinite and other.infinite
        length = max(self.length, other.length)
        return self.padded(length) == other.padded(length)

    def __hash__(self) -> int:
        if self.infinite:
            return hash("inf")
        coords = list(self.coords)
        while coords and coords[-1] == 0:
            coords.pop()
        return hash(tuple(coords))

    def __lt__(self, other: ValueVec) -> bool:
        if not isinstance(other, ValueVec):
            return NotImplemented
        if self.infinite:
            return False
        if other.infinite:
            return True
        length = max(self.length, other.length)
        return self._key(length) < other._key(length)

    def __add__(self, other: ValueVec) -> ValueVec:
        if self.infinite or other.infinite:
            return ValueVec.infinity()
        length = max(self.length, other.length)
        return ValueVec(tuple(a + b for a, b in zip(self.padded(length), other.padded(length))))

    def __neg__(self) -> ValueVec:
        if self.infinite:
            raise ArithmeticError("cannot negate the infinite value")
        return ValueVec(tuple(-c for c in self.coords))

    def __sub__(self, other: ValueVec) -> ValueVec:
        return self + (-other)

    def __mul__(self, factor: int | Fraction) -> ValueVec:
        if self.infinite:
            return self
        return ValueVec(tuple(c * factor for c in self.coords))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.infinite:
            return "inf"
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def to_json(self) -> str | list[str]:
        if self.infinite:
            return "inf"
        return [str(c) for c in self.coords]


def parse_value(text: str) -> ValueVec:
    """Parse ``"5"``, ``"1,-1"``, ``"(1, -1/2)"`` or ``"inf"``."""
    cleaned = text.strip()
    if cleaned.lower() in _INFINITY_TOKENS:
        return ValueVec.infinity()
    cleaned = cleaned.strip("()[] ")
    if not cleaned:
        return ValueVec()
    parts = [p.strip() for p in re.split(r"[,\s]+", cleaned) if p.strip()]
    try:
        return ValueVec(tuple(Fraction(p) for p in parts))
    except (ValueError, ZeroDivisionError) as err:
        raise InputError(f"invalid value vector '{text}'") from err


def min_value(values: list[ValueVec]) -> ValueVec:
    result = ValueVec.infinity()
    for value in values:
        if value < result:
            result = value
    return result
