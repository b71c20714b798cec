"""Feature costing: sanitation, HVAC, finishes and optional packages."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP

from .building import BuildingSpec, FeatureKind, FeatureSelection, Grade
from .errors import MissingParameter, UnknownGrade, ValidationError
from .geometry import WallModel
from .money import Money, line_cost
from .pricebook import MaterialKind, PriceBook, Region, resolve_price

__all__ = [
    "FeatureCostLine",
    "septic_cost",
    "hvac_counts",
    "hvac_cost",
    "tiles_cost",
    "paint_cost",
    "doors_windows_allowance",
    "staircase_allowance",
    "feature_cost_lines",
]

TILE_WASTAGE = Decimal("1.10")

_TILE_MATERIAL = {
    Grade.BASIC: MaterialKind.TILE_BASIC_M2,
    Grade.STANDARD: MaterialKind.TILE_STANDARD_M2,
    Grade.LUXURY: MaterialKind.TILE_LUXURY_M2,
}
_PAINT_MATERIAL = {
    Grade.BASIC: MaterialKind.PAINT_BASIC_M2,
    Grade.STANDARD: MaterialKind.PAINT_STANDARD_M2,
    Grade.LUXURY: MaterialKind.PAINT_LUXURY_M2,
}


@dataclass(frozen=True)
class FeatureCostLine:
    item_id: str
    description: str
    cost: Money
    category: str  # services | finishes | external | hvac_septic
    post_total: bool = False
    quantity: float | None = None
    unit: str = ""
    unit_price: Money | None = None


def septic_cost(bedrooms: int, book: PriceBook) -> Money:
    """Septic tank banded by bedrooms, plus a soakaway in all bands."""
    if bedrooms <= 2:
        tank = book.feature_price("septic_tank_2bed")
    elif bedrooms == 3:
        tank = book.feature_price("septic_tank_3bed")
    else:
        tank = book.feature_price("septic_tank_4bed")
    return tank + book.feature_price("soakaway")


def hvac_counts(spec: BuildingSpec, fan_count: int | None = None) -> tuple[int, int]:
    """(AC units, ceiling fans). ``fan_count`` pins the fan rule."""
    ac = spec.bedrooms + 1
    fans = fan_count if fan_count is not None else spec.bedrooms + 2
    return ac, fans


def hvac_cost(
    spec: BuildingSpec, book: PriceBook, fan_count: int | None = None
) -> tuple[Money, str]:
    ac, fans = hvac_counts(spec, fan_count)
    cost = book.feature_price("ac_unit") * ac + book.feature_price("ceiling_fan") * fans
    return cost, f"{ac} AC + {fans} fans"


def tiles_cost(area_m2: float, grade: Grade, book: PriceBook, region: Region) -> Money:
    """Floor tiling over the full floor area with 10% cutting wastage."""
    if not area_m2 > 0:
        raise ValidationError("area_m2", f"must be > 0, got {area_m2}")
    material = _TILE_MATERIAL.get(grade)
    if material is None:
        raise UnknownGrade(str(grade))
    rate = resolve_price(book, material, region)
    return line_cost(rate.times(TILE_WASTAGE), area_m2)


def paint_cost(
    wall: WallModel, storeys: int, grade: Grade, book: PriceBook, region: Region
) -> tuple[Money, float]:
    """Paint both faces of every plastered wall; returns (cost, area)."""
    material = _PAINT_MATERIAL.get(grade)
    if material is None:
        raise UnknownGrade(str(grade))
    surface = wall.gross_wall_area_m2 * storeys * 2
    rate = resolve_price(book, material, region)
    return line_cost(rate, surface), surface


def doors_windows_allowance(bedrooms: int, book: PriceBook) -> Money:
    """Joinery allowance through the bedroom anchors, linear past them."""
    anchors = sorted(
        (int(key.split("_")[2].rstrip("bed")), book.features[key])
        for key in book.features
        if key.startswith("doors_windows_")
    )
    if not anchors:
        raise MissingParameter("doors_windows", "doors_windows_<N>bed table")
    if len(anchors) == 1:
        return anchors[0][1]
    pairs = {n: price for n, price in anchors}
    if bedrooms in pairs:
        return pairs[bedrooms]
    if bedrooms < anchors[0][0]:
        (n0, p0), (n1, p1) = anchors[0], anchors[1]
    elif bedrooms > anchors[-1][0]:
        (n0, p0), (n1, p1) = anchors[-2], anchors[-1]
    else:
        below = [a for a in anchors if a[0] < bedrooms][-1]
        above = [a for a in anchors if a[0] > bedrooms][0]
        (n0, p0), (n1, p1) = below, above
    slope = Decimal(p1.pesewas - p0.pesewas) / Decimal(n1 - n0)
    pesewas = Decimal(p0.pesewas) + slope * Decimal(bedrooms - n0)
    rounded = int(pesewas.to_integral_value(rounding=ROUND_HALF_UP))
    return Money(max(0, rounded)).round_ghs()


def staircase_allowance(storeys: int, book: PriceBook) -> Money:
    """One flight per storey transition."""
    if storeys < 2:
        return Money.zero()
    return book.feature_price("staircase_flight") * (storeys - 1)


def feature_cost_lines(
    spec: BuildingSpec,
    wall: WallModel,
    book: PriceBook,
    region: Region,
    *,
    fan_count: int | None = None,
    paint_override: Money | None = None,
) -> list[FeatureCostLine]:
    """Cost lines for every selected feature, in a stable order."""
    lines: list[FeatureCostLine] = []
    for sel in sorted(spec.features, key=lambda s: s.feature.value):
        lines.append(
            _feature_line(
                sel,
                spec,
                wall,
                book,
                region,
                fan_count=fan_count,
                paint_override=paint_override,
            )
        )
    return lines


def _feature_line(
    sel: FeatureSelection,
    spec: BuildingSpec,
    wall: WallModel,
    book: PriceBook,
    region: Region,
    *,
    fan_count: int | None,
    paint_override: Money | None,
) -> FeatureCostLine:
    grade = sel.grade or spec.finish
    kind = sel.feature

    if kind is FeatureKind.SEPTIC:
        return FeatureCostLine(
            "septic",
            f"Septic tank + soakaway ({spec.bedrooms} bedrooms)",
            septic_cost(spec.bedrooms, book),
            "hvac_septic",
            sel.post_total,
        )
    if kind is FeatureKind.HVAC:
        cost, detail = hvac_cost(spec, book, fan_count)
        return FeatureCostLine(
            "hvac", f"HVAC ({detail})", cost, "hvac_septic", sel.post_total
        )
    if kind is FeatureKind.TILES:
        rate = resolve_price(book, _TILE_MATERIAL[grade], region).times(TILE_WASTAGE)
        return FeatureCostLine(
            "tiles",
            f"Floor tiles, {grade.value} (incl. 10% wastage)",
            tiles_cost(spec.total_area_m2, grade, book, region),
            "finishes",
            sel.post_total,
            quantity=spec.total_area_m2,
            unit="m2",
            unit_price=rate,
        )
    if kind is FeatureKind.PAINT:
        if paint_override is not None:
            return FeatureCostLine(
                "paint", f"Painting, {grade.value}", paint_override, "finishes", sel.post_total
            )
        cost, surface = paint_cost(wall, spec.storeys, grade, book, region)
        return FeatureCostLine(
            "paint",
            f"Painting, {grade.value} (both faces)",
            cost,
            "finishes",
            sel.post_total,
            quantity=surface,
            unit="m2",
            unit_price=resolve_price(book, _PAINT_MATERIAL[grade], region),
        )
    if kind is FeatureKind.COMPOUND_WALL:
        if sel.perimeter_m is None:
            raise MissingParameter("compound_wall", "perimeter_m")
        rate = book.feature_price(f"compound_wall_{grade.value}_m")
        return FeatureCostLine(
            "compound_wall",
            f"Compound wall, {grade.value} height, {sel.perimeter_m:g} m",
            line_cost(rate, sel.perimeter_m),
            "external",
            sel.post_total,
            quantity=sel.perimeter_m,
            unit="m",
            unit_price=rate,
        )
    if kind is FeatureKind.CEILING:
        if sel.ceiling_type is None:
            raise MissingParameter("ceiling", "ceiling_type")
        rate = book.feature_price(f"ceiling_{sel.ceiling_type}_m2")
        return FeatureCostLine(
            "ceiling",
            f"Ceiling, {sel.ceiling_type}",
            line_cost(rate, spec.total_area_m2),
            "finishes",
            sel.post_total,
            quantity=spec.total_area_m2,
            unit="m2",
            unit_price=rate,
        )
    if kind is FeatureKind.EXTERNAL_WORKS:
        return FeatureCostLine(
            "external_works",
            "External works package",
            book.feature_price("external_works_package"),
            "external",
            sel.post_total,
        )
    if kind is FeatureKind.KITCHEN:
        key_grade = Grade.STANDARD if grade is Grade.BASIC else grade
        return FeatureCostLine(
            "kitchen",
            f"Kitchen built-ins, {key_grade.value}",
            book.feature_price(f"kitchen_{key_grade.value}"),
            "finishes",
            sel.post_total,
        )
    if kind in (FeatureKind.SOLAR, FeatureKind.SECURITY, FeatureKind.SMART_HOME):
        return FeatureCostLine(
            kind.value,
            f"{kind.value.replace('_', ' ').title()} package, {grade.value}",
            book.feature_price(f"{kind.value}_{grade.value}"),
            "services",
            sel.post_total,
        )
    raise UnknownGrade(f"{kind.value}/{grade.value}")  # pragma: no cover
