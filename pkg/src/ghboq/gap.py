"""Completeness gap against the informal flat per-square-metre quote.

Informal quotes bundle the shell and little else. Comparing a full
estimate to the quoted band shows how far the band undershoots, and
the flagged lines attribute that distance to the work the flat rate
habitually leaves out.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP

from .errors import InvalidBand
from .estimator import BoQLine, Estimate
from .money import Money, line_cost
from .pricebook import InformalBand

__all__ = ["OmittedLine", "GapReport", "gap", "omission_attribution"]


@dataclass(frozen=True)
class OmittedLine:
    item_id: str
    description: str
    cost: Money


@dataclass(frozen=True)
class GapReport:
    estimate_total: Money
    area_m2: float
    informal_low: Money
    informal_high: Money
    gap_vs_low: Decimal  # fractional, full precision
    gap_vs_high: Decimal
    omitted_lines: tuple[OmittedLine, ...]
    omitted_total: Money

    @property
    def gap_vs_low_pct(self) -> int:
        return _display_pct(self.gap_vs_low)

    @property
    def gap_vs_high_pct(self) -> int:
        return _display_pct(self.gap_vs_high)


def _display_pct(fraction: Decimal) -> int:
    return int((fraction * 100).to_integral_value(rounding=ROUND_HALF_UP))


def gap(est: Estimate, band: InformalBand) -> GapReport:
    if band.low_per_m2.pesewas <= 0 or band.high_per_m2.pesewas <= 0:
        raise InvalidBand("rates must be positive")
    if band.low_per_m2 > band.high_per_m2:
        raise InvalidBand("low rate exceeds high rate")

    area = est.spec.total_area_m2
    low = line_cost(band.low_per_m2, area)
    high = line_cost(band.high_per_m2, area)
    omitted = omission_attribution(est)
    return GapReport(
        estimate_total=est.total,
        area_m2=area,
        informal_low=low,
        informal_high=high,
        gap_vs_low=_fraction(est.total, low),
        gap_vs_high=_fraction(est.total, high),
        omitted_lines=omitted,
        omitted_total=sum((o.cost for o in omitted), Money.zero()),
    )


def _fraction(total: Money, reference: Money) -> Decimal:
    return Decimal(total.pesewas - reference.pesewas) / Decimal(reference.pesewas)


def omission_attribution(est: Estimate) -> tuple[OmittedLine, ...]:
    """Flagged lines, costliest first. Ties break on item id."""
    picked: list[BoQLine] = [
        entry
        for entry in est.lines
        if entry.omitted_in_informal and entry.cost is not None
    ]
    picked.sort(key=lambda e: (-e.cost.pesewas, e.item_id))
    return tuple(
        OmittedLine(e.item_id, e.description.strip(), e.cost) for e in picked
    )
