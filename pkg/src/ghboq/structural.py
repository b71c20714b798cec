"""Structural take-off: blocks, cement, sand, stone, steel, roofing.

Quantities come straight from the wall model and the building
description. Intermediates are carried at full precision; rounding is
always a single documented ceil at the end of each rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .building import BuildingSpec
from .errors import ValidationError
from .geometry import WallModel

__all__ = [
    "BLOCKS_PER_M2",
    "DEFAULT_WASTE_CUT",
    "CementBags",
    "RebarPieces",
    "RoofingQuantities",
    "StructuralQuantities",
    "block_count",
    "cement_bags",
    "sand_and_stone",
    "rebar_pieces",
    "roofing_quantities",
    "structural_takeoff",
]

BLOCKS_PER_M2 = 10.9          # 450x225 mm sandcrete laid flat, incl. joints
DEFAULT_WASTE_CUT = 0.05      # breakage and cutting allowance
STOREY_BLOCK_INCREMENT = 0.15  # extra blockwork per storey above the first
STOREY_STONE_INCREMENT = 0.15
FOUNDATION_BAGS_PER_M2 = 4
MORTAR_BAGS_PER_100_BLOCKS = 1.2
PLASTER_BAGS_PER_M2 = 0.6     # both faces counted separately
SCREED_BAGS_PER_M2 = 2
SAND_M3_PER_TRIP = 5.5
ROOF_PITCH_FACTOR = 1.2
SHEETS_PER_M2 = 0.45
BOARDFEET_PER_M2 = 15
NAILS_KG_PER_SHEET = 0.15
REBAR_Y12_PER_M2 = 12
REBAR_Y16_PER_M2 = 4
REBAR_Y10_PER_M2 = 3
REBAR_Y20_PER_M2 = 0.5
Y12_MULTI_STOREY_FACTOR = 1.4


def _ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)


@dataclass(frozen=True)
class CementBags:
    foundation: int
    mortar: int
    plaster: int
    screed: int

    @property
    def total(self) -> int:
        return self.foundation + self.mortar + self.plaster + self.screed


@dataclass(frozen=True)
class RebarPieces:
    """6 m lengths by bar diameter."""

    y10: int
    y12: int
    y16: int
    y20: int


@dataclass(frozen=True)
class RoofingQuantities:
    roof_area_m2: float
    sheets: int
    timber_boardfeet: int
    nails_kg: int
    ridge_caps: int


@dataclass(frozen=True)
class StructuralQuantities:
    blocks: int
    cement: CementBags
    sand_trips: int
    stone_m3: float
    rebar: RebarPieces
    roofing: RoofingQuantities


def block_count(
    wall: WallModel,
    storeys: int,
    *,
    blocks_per_m2: float = BLOCKS_PER_M2,
    w_cut: float = DEFAULT_WASTE_CUT,
) -> int:
    """Blocks for the whole building.

    The wall model covers one storey. The ground storey lays at the
    base density; every storey above it carries the 15% complexity
    premium (stair enclosures, floor edges, party walls), so the
    per-storey factors are 1.0, 1.15, 1.15, ...
    """
    if storeys < 1:
        raise ValidationError("storeys", f"must be >= 1, got {storeys}")
    if w_cut < 0:
        raise ValidationError("w_cut", f"must be >= 0, got {w_cut}")
    per_storey = wall.net_wall_area_m2 * blocks_per_m2 * (1.0 + w_cut)
    storey_factors = 1.0 + (storeys - 1) * (1.0 + STOREY_BLOCK_INCREMENT)
    return math.ceil(per_storey * storey_factors)


def cement_bags(spec: BuildingSpec, wall: WallModel, blocks: int) -> CementBags:
    """Four-component cement decomposition, each component ceiled.

    Screed covers every storey's slab surface at 2 bags/m2 of declared
    floor area per storey.
    """
    foundation = math.ceil(spec.footprint_m2 * FOUNDATION_BAGS_PER_M2)
    # ceil(blocks/100 * 1.2) computed in integers to dodge float fuzz
    mortar = _ceil_div(blocks * 12, 1000)
    gross_all_storeys = wall.gross_wall_area_m2 * spec.storeys
    plaster = math.ceil(gross_all_storeys * 2 * PLASTER_BAGS_PER_M2)
    screed = math.ceil(spec.total_area_m2 * spec.storeys * SCREED_BAGS_PER_M2)
    return CementBags(foundation=foundation, mortar=mortar, plaster=plaster, screed=screed)


def sand_and_stone(
    spec: BuildingSpec, wall: WallModel, blocks: int
) -> tuple[int, float]:
    """(sand trips, stone m3).

    Sand sums four demand terms before a single ceil to whole trips.
    Stone serves the foundation; upper storeys add 15% each for the
    suspended slabs.
    """
    footprint = spec.footprint_m2
    gross_all_storeys = wall.gross_wall_area_m2 * spec.storeys
    foundation_trips = footprint * 0.18 / SAND_M3_PER_TRIP
    mortar_trips = blocks / 1000 * 2.5
    plaster_trips = (gross_all_storeys * 2 / 100) * 3
    screed_trips = (spec.total_area_m2 * spec.storeys * 0.15) / SAND_M3_PER_TRIP
    sand = math.ceil(foundation_trips + mortar_trips + plaster_trips + screed_trips)
    stone = footprint * 0.18 * (1 + STOREY_STONE_INCREMENT * (spec.storeys - 1))
    return sand, stone


def rebar_pieces(spec: BuildingSpec) -> RebarPieces:
    """6 m bar counts.

    Y12 is footprint-based with a 1.4 continuity factor once the frame
    goes past one storey; Y16/Y10 scale with storey count; Y20 column
    bars appear only in multi-storey frames.
    """
    footprint = spec.footprint_m2
    y12_factor = Y12_MULTI_STOREY_FACTOR if spec.storeys >= 2 else 1.0
    y12 = math.ceil(REBAR_Y12_PER_M2 * footprint * y12_factor)
    y16 = math.ceil(REBAR_Y16_PER_M2 * footprint * spec.storeys)
    y10 = math.ceil(REBAR_Y10_PER_M2 * footprint * spec.storeys)
    y20 = (
        math.ceil(REBAR_Y20_PER_M2 * footprint * spec.storeys)
        if spec.storeys >= 2
        else 0
    )
    return RebarPieces(y10=y10, y12=y12, y16=y16, y20=y20)


def roofing_quantities(spec: BuildingSpec) -> RoofingQuantities:
    """Roof covers the footprint with a 1.2 pitch/overhang allowance."""
    roof_area = spec.footprint_m2 * ROOF_PITCH_FACTOR
    sheets = math.ceil(roof_area * SHEETS_PER_M2)
    timber = math.ceil(roof_area * BOARDFEET_PER_M2)
    nails = _ceil_div(sheets * 3, 20)  # 0.15 kg per sheet
    ridge = math.ceil(math.sqrt(spec.total_area_m2) * 0.5)
    return RoofingQuantities(
        roof_area_m2=roof_area,
        sheets=sheets,
        timber_boardfeet=timber,
        nails_kg=nails,
        ridge_caps=ridge,
    )


def structural_takeoff(
    spec: BuildingSpec, wall: WallModel, *, w_cut: float = DEFAULT_WASTE_CUT
) -> StructuralQuantities:
    blocks = block_count(wall, spec.storeys, w_cut=w_cut)
    cement = cement_bags(spec, wall, blocks)
    sand, stone = sand_and_stone(spec, wall, blocks)
    return StructuralQuantities(
        blocks=blocks,
        cement=cement,
        sand_trips=sand,
        stone_m3=stone,
        rebar=rebar_pieces(spec),
        roofing=roofing_quantities(spec),
    )
