"""Plumbing and electrical: component take-off plus calibrated pricing.

Component quantities are first-class BoQ lines for procurement, but the
costs those systems actually command track installed-system market
rates, so pricing goes through the anchor tables in the price book
rather than summing parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP

from .building import BuildingSpec
from .errors import MissingCalibration
from .money import Money
from .pricebook import PriceBook

__all__ = [
    "PlumbingQuantities",
    "ElectricalQuantities",
    "plumbing_takeoff",
    "plumbing_cost",
    "electrical_takeoff",
    "electrical_cost",
    "room_count",
]

PLUMBING_STOREY_STEP = Decimal("0.25")  # riser/pump premium per extra storey


@dataclass(frozen=True)
class PlumbingQuantities:
    pvc_half_in_m: int
    pvc_three_quarter_in_m: int
    pvc_4in_m: int
    wc_units: int
    basins: int
    showers: int
    fitting_sets: int
    water_tanks: int  # ground tank, plus overhead for multi-storey
    storey_cost_factor: float


@dataclass(frozen=True)
class ElectricalQuantities:
    cable_2_5mm_m: int
    cable_4mm_m: int
    cable_6mm_m: int
    switches: int
    sockets: int
    light_fittings: int
    mcbs: int
    distribution_boards: int


def plumbing_takeoff(spec: BuildingSpec) -> PlumbingQuantities:
    b = spec.bathrooms
    return PlumbingQuantities(
        pvc_half_in_m=25 * b + 20,
        pvc_three_quarter_in_m=15 * b + 10,
        pvc_4in_m=8 * b + 15,
        wc_units=b,
        basins=b + 1,  # bathrooms plus the kitchen sink
        showers=b,
        fitting_sets=6 * b + 8,
        water_tanks=2 if spec.storeys > 1 else 1,
        storey_cost_factor=1 + 0.25 * (spec.storeys - 1),
    )


def plumbing_cost(spec: BuildingSpec, book: PriceBook) -> Money:
    """Anchor at the bathroom count, step past the table, scale by storeys."""
    anchors = book.services.plumbing_anchors
    if not anchors:
        raise MissingCalibration("plumbing")
    baths = spec.bathrooms
    top = max(anchors)
    if baths in anchors:
        base = anchors[baths]
    elif baths > top:
        base = anchors[top] + book.services.plumbing_extra_bath * (baths - top)
    else:
        # below the lowest anchor: hold at the lowest known system
        base = anchors[min(anchors)]
    factor = 1 + PLUMBING_STOREY_STEP * (spec.storeys - 1)
    return base.times(factor).round_ghs()


def room_count(spec: BuildingSpec) -> int:
    """Rooms wired per storey: bedrooms plus living and kitchen."""
    return (spec.bedrooms + 2) * spec.storeys


def electrical_takeoff(spec: BuildingSpec) -> ElectricalQuantities:
    rooms = room_count(spec)
    return ElectricalQuantities(
        cable_2_5mm_m=35 * rooms,
        cable_4mm_m=25 * rooms,
        cable_6mm_m=15 * rooms,
        switches=2 * rooms,
        sockets=3 * rooms + spec.bathrooms,
        light_fittings=-(-3 * rooms // 2),  # ceil(1.5 per room)
        mcbs=-(-rooms // 2) + 4,
        distribution_boards=spec.storeys,
    )


def electrical_cost(spec: BuildingSpec, book: PriceBook) -> Money:
    """Interpolate on room count within a storey band.

    With two or more anchors at the same storey count the cost is the
    straight line through the two nearest; a lone anchor scales by the
    room ratio. Queries beyond any tabulated storey count fall back to
    the nearest storey band, again scaled by room ratio.
    """
    anchors = book.services.electrical_anchors
    if not anchors:
        raise MissingCalibration("electrical")
    rooms = room_count(spec)
    storeys = spec.storeys
    if (rooms, storeys) in anchors:
        return anchors[(rooms, storeys)]

    same_band = sorted(
        (r, price) for (r, s), price in anchors.items() if s == storeys
    )
    if len(same_band) >= 2:
        (r0, p0), (r1, p1) = _nearest_pair(same_band, rooms)
        slope = Decimal(p1.pesewas - p0.pesewas) / Decimal(r1 - r0)
        cost = Decimal(p0.pesewas) + slope * Decimal(rooms - r0)
        pesewas = int(cost.to_integral_value(rounding=ROUND_HALF_UP))
        return Money(max(0, pesewas)).round_ghs()
    if len(same_band) == 1:
        r0, p0 = same_band[0]
        return p0.times(Decimal(rooms) / Decimal(r0)).round_ghs()

    nearest_storeys = min({s for (_, s) in anchors}, key=lambda s: abs(s - storeys))
    band = sorted((r, price) for (r, s), price in anchors.items() if s == nearest_storeys)
    r0, p0 = min(band, key=lambda item: abs(item[0] - rooms))
    return p0.times(Decimal(rooms) / Decimal(r0)).round_ghs()


def _nearest_pair(band: list[tuple[int, Money]], rooms: int):
    """Bracketing anchors when possible, else the two closest.

    Exact anchor hits return before this is called, so when both sides
    exist they bracket strictly.
    """
    below = [item for item in band if item[0] < rooms]
    above = [item for item in band if item[0] > rooms]
    if below and above:
        return below[-1], above[0]
    pair = sorted(band, key=lambda item: abs(item[0] - rooms))[:2]
    return tuple(sorted(pair))
