"""Exact money arithmetic for Ghana cedis (GHS).

Amounts are stored as integer pesewa counts (1 GHS = 100 pesewas), so
addition and integer scaling never lose precision. Rounding is half-up
and happens only at the two documented boundaries: unit prices round to
the whole pesewa, line costs and report figures round to the whole cedi.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP

__all__ = ["Money", "line_cost", "as_decimal"]

_CEDI = Decimal(100)
_ONE = Decimal(1)


def as_decimal(value) -> Decimal:
    """Coerce a quantity or factor to Decimal without binary-float noise."""
    if isinstance(value, Decimal):
        return value
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, float):
        # str() gives the shortest round-tripping form, which is the
        # number the caller actually saw.
        return Decimal(str(value))
    if isinstance(value, str):
        return Decimal(value)
    raise TypeError(f"cannot interpret {value!r} as a decimal quantity")


@dataclass(frozen=True, order=True)
class Money:
    """An exact GHS amount held as an integer count of pesewas."""

    pesewas: int

    @classmethod
    def from_ghs(cls, value) -> "Money":
        """Build from a GHS figure ('8.60', Decimal, int or float)."""
        amount = as_decimal(value) * _CEDI
        return cls(int(amount.to_integral_value(rounding=ROUND_HALF_UP)))

    @classmethod
    def zero(cls) -> "Money":
        return cls(0)

    @property
    def ghs(self) -> Decimal:
        return Decimal(self.pesewas) / _CEDI

    def __add__(self, other: "Money") -> "Money":
        return Money(self.pesewas + other.pesewas)

    def __sub__(self, other: "Money") -> "Money":
        return Money(self.pesewas - other.pesewas)

    def __mul__(self, count: int) -> "Money":
        if not isinstance(count, int):
            raise TypeError("use times() for non-integer scaling")
        return Money(self.pesewas * count)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.pesewas != 0

    def times(self, factor) -> "Money":
        """Scale by a decimal factor, rounding half-up to the pesewa."""
        amount = Decimal(self.pesewas) * as_decimal(factor)
        return Money(int(amount.to_integral_value(rounding=ROUND_HALF_UP)))

    def round_ghs(self) -> "Money":
        """Round half-up to the whole cedi (line/report boundary rule)."""
        whole = self.ghs.to_integral_value(rounding=ROUND_HALF_UP)
        return Money(int(whole) * 100)

    def format(self, grouped: bool = False) -> str:
        """Canonical text: whole cedis bare, otherwise two decimals."""
        sign = "-" if self.pesewas < 0 else ""
        mag = abs(self.pesewas)
        cedis, pes = divmod(mag, 100)
        whole = f"{cedis:,}" if grouped else str(cedis)
        if pes == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{pes:02d}"

    def __str__(self) -> str:
        return self.format()


def line_cost(unit_price: Money, quantity) -> Money:
    """Price a quantity line: one half-up rounding to the whole cedi.

    The product is taken exactly in Decimal so no intermediate pesewa
    rounding can shift the result (avoids double rounding).
    """
    exact = Decimal(unit_price.pesewas) * as_decimal(quantity) / _CEDI
    whole = exact.to_integral_value(rounding=ROUND_HALF_UP)
    return Money(int(whole) * 100)
