"""Extended nonnegative rationals [0, ∞] with exact arithmetic."""

from __future__ import annotations

import re
from collections.abc import Iterable
from fractions import Fraction
from functools import total_ordering
from typing import Union

from powerdomains.core.exceptions import InfinityIndeterminate, PreconditionFailed

Number = Union["ExtNonneg", Fraction, int]

_RATIONAL = re.compile(r"^(inf|[0-9]+(/[0-9]+)?)$")


@total_ordering
class ExtNonneg:
    """A nonnegative rational or ∞.

    Conventions: ∞ + x = ∞, ∞ · x = ∞ for x > 0 and ∞ · 0 = 0.
    Subtraction is only defined when the result is a well-defined
    nonnegative value.
    """

    __slots__ = ("_value",)

    _value: Fraction | None

    def __init__(self, value: Number | str = 0) -> None:
        if isinstance(value, ExtNonneg):
            object.__setattr__(self, "_value", value._value)
            return
        if isinstance(value, str):
            value = _parse(value)
            object.__setattr__(self, "_value", None if value is None else value)
            return
        q = Fraction(value)
        if q < 0:
            raise ValueError(f"negative value {q} is not in [0, ∞]")
        object.__setattr__(self, "_value", q)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExtNonneg is immutable")

    @classmethod
    def infinity(cls) -> ExtNonneg:
        out = cls.__new__(cls)
        object.__setattr__(out, "_value", None)
        return out

    @classmethod
    def parse(cls, text: str) -> ExtNonneg:
        """Parse the "p/q" | "p" | "inf" grammar."""
        return cls(text)

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def is_zero(self) -> bool:
        return self._value == 0

    @property
    def finite(self) -> Fraction:
        if self._value is None:
            raise ValueError("∞ has no finite value")
        return self._value

    def __add__(self, other: Number) -> ExtNonneg:
        o = _coerce(other)
        if self._value is None or o._value is None:
            return INFINITY
        return ExtNonneg(self._value + o._value)

    __radd__ = __add__

    def __mul__(self, other: Number) -> ExtNonneg:
        o = _coerce(other)
        if self.is_zero or o.is_zero:
            return ZERO
        if self._value is None or o._value is None:
            return INFINITY
        return ExtNonneg(self._value * o._value)

    __rmul__ = __mul__

    def __sub__(self, other: Number) -> ExtNonneg:
        o = _coerce(other)
        if o._value is None:
            raise ValueError("cannot subtract ∞")
        if self._value is None:
            return INFINITY
        return ExtNonneg(self._value - o._value)

    def __truediv__(self, other: Number) -> ExtNonneg:
        o = _coerce(other)
        if o.is_zero or o._value is None:
            raise ValueError("division by 0 or ∞ is not defined on [0, ∞]")
        if self._value is None:
            return INFINITY
        return ExtNonneg(self._value / o._value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._value is not None and self._value == other
        if not isinstance(other, ExtNonneg):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other: Number) -> bool:
        o = _coerce(other)
        if self._value is None:
            return False
        if o._value is None:
            return True
        return self._value < o._value

    def __hash__(self) -> int:
        return hash(float("inf")) if self._value is None else hash(self._value)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        if self._value is None:
            return "inf"
        return str(self._value)

    def __repr__(self) -> str:
        return f"ExtNonneg({str(self)!r})"


def _parse(text: str) -> Fraction | None:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational string: {text!r}")
    if text == "inf":
        return None
    q = Fraction(text)
    return q


def _coerce(value: Number) -> ExtNonneg:
    return value if isinstance(value, ExtNonneg) else ExtNonneg(value)


def ext_sum(values: Iterable[ExtNonneg]) -> ExtNonneg:
    total = ZERO
    for v in values:
        total = total + v
    return total


def is_rational_string(text: str) -> bool:
    return bool(_RATIONAL.match(text))


def signed_combination(terms: list[tuple[int, ExtNonneg]]) -> ExtNonneg:
    """Evaluate Σ sign·value in a signed scratch domain.

    Raises InfinityIndeterminate when +∞ and −∞ both occur, and
    PreconditionFailed when the result would be negative.
    """
    pos_inf = any(s > 0 and v.is_infinite for s, v in terms)
    neg_inf = any(s < 0 and v.is_infinite for s, v in terms)
    if pos_inf and neg_inf:
        raise InfinityIndeterminate("∞ − ∞ in inclusion-exclusion", terms=len(terms))
    if pos_inf:
        return INFINITY
    if neg_inf:
        raise PreconditionFailed("inclusion-exclusion diverges to −∞")
    acc = sum((s * v.finite for s, v in terms), Fraction(0))
    if acc < 0:
        raise PreconditionFailed("inclusion-exclusion produced a negative value", value=str(acc))
    return ExtNonneg(acc)


ZERO = ExtNonneg(0)
ONE = ExtNonneg(1)
INFINITY = ExtNonneg.infinity()
