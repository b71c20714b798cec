"""Assemble the bill of quantities and roll it up into an estimate.

Pricing walks the take-off quantities against an immutable price-book
snapshot. The variable subtotal carries a 15% contingency; design,
permit and utility-connection fees are fixed and sit outside it.
Features flagged ``post_total`` (optional extras quoted after the
bottom line) are appended after contingency and fees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_UP

from .building import BuildingSpec
from .errors import UnknownMaterial, UnresolvableMaterial
from .features import feature_cost_lines, staircase_allowance, doors_windows_allowance
from .geometry import (
    FloorPlanLayout,
    WallModel,
    wall_model_from_formula,
    wall_model_from_layout,
)
from .money import Money, line_cost
from .pricebook import (
    MaterialKind,
    PriceBook,
    Region,
    labour_rate,
    resolve_price,
    style_modifier,
)
from .services import (
    electrical_cost,
    electrical_takeoff,
    plumbing_cost,
    plumbing_takeoff,
)
from .structural import DEFAULT_WASTE_CUT, structural_takeoff

__all__ = [
    "CONTINGENCY_RATE",
    "EstimateFlags",
    "BoQLine",
    "Estimate",
    "estimate",
    "categorize",
    "reprice",
    "contingency_on",
]

CONTINGENCY_RATE = Decimal("0.15")
LABOUR_STOREY_STEP = Decimal("0.15")


@dataclass(frozen=True)
class EstimateFlags:
    """Explicit switches; reference reproduction sets these, never defaults.

    The pin fields exist for the published worked examples, whose
    reference tool included cement/sand demand beyond its documented
    equations and fixed a few lumpsums by hand. A pin replaces the
    corresponding line value; everything else still computes normally.
    """

    w_cut: float = DEFAULT_WASTE_CUT
    price_roof_accessories: bool = True
    include_utility_fee: bool = True
    pin_cement_total_bags: int | None = None
    pin_sand_trips: int | None = None
    pin_paint_cost: Money | None = None
    pin_fan_count: int | None = None

    def to_dict(self) -> dict:
        doc: dict = {
            "w_cut": self.w_cut,
            "price_roof_accessories": self.price_roof_accessories,
            "include_utility_fee": self.include_utility_fee,
        }
        if self.pin_cement_total_bags is not None:
            doc["pin_cement_total_bags"] = self.pin_cement_total_bags
        if self.pin_sand_trips is not None:
            doc["pin_sand_trips"] = self.pin_sand_trips
        if self.pin_paint_cost is not None:
            doc["pin_paint_cost"] = int(self.pin_paint_cost.ghs)
        if self.pin_fan_count is not None:
            doc["pin_fan_count"] = self.pin_fan_count
        return doc

    @classmethod
    def from_dict(cls, data: dict) -> "EstimateFlags":
        paint = data.get("pin_paint_cost")
        return cls(
            w_cut=float(data.get("w_cut", DEFAULT_WASTE_CUT)),
            price_roof_accessories=bool(data.get("price_roof_accessories", True)),
            include_utility_fee=bool(data.get("include_utility_fee", True)),
            pin_cement_total_bags=data.get("pin_cement_total_bags"),
            pin_sand_trips=data.get("pin_sand_trips"),
            pin_paint_cost=Money.from_ghs(paint) if paint is not None else None,
            pin_fan_count=data.get("pin_fan_count"),
        )


@dataclass(frozen=True)
class BoQLine:
    item_id: str
    description: str
    category: str  # shell | services | hvac_septic | finishes | labour | staircase | external | fees
    quantity: float | None = None
    unit: str = ""
    unit_price: Money | None = None
    cost: Money | None = None
    omitted_in_informal: bool = False
    informational: bool = False
    post_total: bool = False


@dataclass(frozen=True)
class Estimate:
    spec: BuildingSpec
    region: Region
    mode: str  # "geometry" | "formula"
    pricebook_version: str
    flags: EstimateFlags
    wall: WallModel
    lines: tuple[BoQLine, ...]
    variable_subtotal: Money
    contingency: Money
    fixed_fees: Money
    post_total_cost: Money
    total: Money
    rate_per_m2: Money

    def line(self, item_id: str) -> BoQLine:
        for entry in self.lines:
            if entry.item_id == item_id:
                return entry
        raise KeyError(item_id)


def contingency_on(subtotal: Money) -> Money:
    """15% of the variable subtotal, half-up to the whole cedi."""
    exact = Decimal(subtotal.pesewas) * CONTINGENCY_RATE
    return Money(int(exact.to_integral_value(rounding=ROUND_HALF_UP))).round_ghs()


def estimate(
    spec: BuildingSpec,
    book: PriceBook,
    layout: FloorPlanLayout | None = None,
    *,
    region: Region | None = None,
    flags: EstimateFlags = EstimateFlags(),
) -> Estimate:
    """Full estimate. A drawn layout wins over the rectangular fallback."""
    spec.validate()
    if layout is not None:
        wall = wall_model_from_layout(layout)
    else:
        wall = wall_model_from_formula(spec.footprint_m2, spec.bedrooms)
    return _assemble(spec, wall, book, region or spec.region, flags)


def reprice(est: Estimate, book: PriceBook) -> Estimate:
    """Recost an estimate against another book; quantities stay put."""
    try:
        return _assemble(est.spec, est.wall, book, est.region, est.flags)
    except UnknownMaterial as exc:
        raise UnresolvableMaterial(exc.material) from exc


def categorize(est: Estimate) -> dict[str, Money]:
    """Costed (non-informational) line totals per category."""
    buckets: dict[str, Money] = {}
    for entry in est.lines:
        if entry.informational or entry.cost is None:
            continue
        buckets[entry.category] = buckets.get(entry.category, Money.zero()) + entry.cost
    return buckets


# ---- assembly ---------------------------------------------------------


def _assemble(
    spec: BuildingSpec,
    wall: WallModel,
    book: PriceBook,
    region: Region,
    flags: EstimateFlags,
) -> Estimate:
    sq = structural_takeoff(spec, wall, w_cut=flags.w_cut)
    style = spec.style.value

    def price(material: MaterialKind, category: str) -> Money:
        base = resolve_price(book, material, region)
        return base.times(style_modifier(book, style, category))

    def lump(amount: Money, category: str) -> Money:
        factor = style_modifier(book, style, category)
        if factor == 1:
            return amount
        return amount.times(factor).round_ghs()

    lines: list[BoQLine] = []

    def qty_line(item_id, description, category, quantity, unit, material, **kw):
        unit_price = price(material, category)
        lines.append(
            BoQLine(
                item_id,
                description,
                category,
                quantity=quantity,
                unit=unit,
                unit_price=unit_price,
                cost=line_cost(unit_price, quantity),
                omitted_in_informal=item_id in book.gap_omitted_items,
                **kw,
            )
        )

    def info_line(item_id, description, category, quantity, unit):
        lines.append(
            BoQLine(
                item_id,
                description,
                category,
                quantity=quantity,
                unit=unit,
                informational=True,
                omitted_in_informal=item_id in book.gap_omitted_items,
            )
        )

    def lump_line(item_id, description, category, cost, **kw):
        lines.append(
            BoQLine(
                item_id,
                description,
                category,
                cost=lump(cost, category),
                omitted_in_informal=item_id in book.gap_omitted_items,
                **kw,
            )
        )

    # shell
    qty_line("blocks", 'Sandcrete blocks, 6" hollow', "shell", sq.blocks, "pcs",
             MaterialKind.BLOCK_6IN_HOLLOW)

    cement_price = price(MaterialKind.CEMENT_BAG_50KG, "shell")
    cement_qty = flags.pin_cement_total_bags or sq.cement.total
    lines.append(
        BoQLine(
            "cement_total",
            "Cement, 50 kg bags (all uses)",
            "shell",
            quantity=cement_qty,
            unit="bags",
            unit_price=cement_price,
            cost=line_cost(cement_price, cement_qty),
            omitted_in_informal="cement_total" in book.gap_omitted_items,
        )
    )
    for part, bags in (
        ("foundation", sq.cement.foundation),
        ("mortar", sq.cement.mortar),
        ("plaster", sq.cement.plaster),
        ("screed", sq.cement.screed),
    ):
        # component split of the line above: costed for attribution but
        # not summed, the parent line carries the money
        lines.append(
            BoQLine(
                f"cement_{part}",
                f"  cement: {part}",
                "shell",
                quantity=bags,
                unit="bags",
                unit_price=cement_price,
                cost=line_cost(cement_price, bags),
                omitted_in_informal=f"cement_{part}" in book.gap_omitted_items,
                informational=True,
            )
        )

    qty_line("sand", "Sand, tipper trips", "shell",
             flags.pin_sand_trips or sq.sand_trips, "trips", MaterialKind.SAND_TRIP)
    qty_line("stone", "Crushed stone", "shell", sq.stone_m3, "m3", MaterialKind.STONE_M3)

    for item_id, label, count, material in (
        ("rebar_y12", "Rebar Y12, 6 m lengths", sq.rebar.y12, MaterialKind.REBAR_Y12),
        ("rebar_y16", "Rebar Y16, 6 m lengths", sq.rebar.y16, MaterialKind.REBAR_Y16),
        ("rebar_y10", "Rebar Y10, 6 m lengths", sq.rebar.y10, MaterialKind.REBAR_Y10),
        ("rebar_y20", "Rebar Y20, 6 m lengths", sq.rebar.y20, MaterialKind.REBAR_Y20),
    ):
        if count:
            qty_line(item_id, label, "shell", count, "pcs", material)

    qty_line("roof_sheets", "Roofing sheets, IBR 0.45 mm", "shell",
             sq.roofing.sheets, "pcs", MaterialKind.ROOF_SHEET_IBR_045)
    qty_line("roof_timber", "Roof timber", "shell",
             sq.roofing.timber_boardfeet, "bf", MaterialKind.ROOF_TIMBER_BOARDFOOT)
    if flags.price_roof_accessories:
        qty_line("roof_nails", "Roofing nails", "shell",
                 sq.roofing.nails_kg, "kg", MaterialKind.ROOF_NAILS_KG)
        qty_line("ridge_caps", "Ridge caps", "shell",
                 sq.roofing.ridge_caps, "pcs", MaterialKind.RIDGE_CAP)
    else:
        info_line("roof_nails", "Roofing nails", "shell", sq.roofing.nails_kg, "kg")
        info_line("ridge_caps", "Ridge caps", "shell", sq.roofing.ridge_caps, "pcs")

    # staircase
    stair = staircase_allowance(spec.storeys, book)
    if stair:
        lump_line("staircase", f"Staircase, {spec.storeys - 1} flight(s)", "staircase", stair)

    # services: calibrated lumpsums plus procurement quantities
    lump_line("plumbing", f"Plumbing, full system ({spec.bathrooms} bath)",
              "services", plumbing_cost(spec, book))
    pq = plumbing_takeoff(spec)
    info_line("pvc_half_in", '  PVC 1/2" pipe', "services", pq.pvc_half_in_m, "m")
    info_line("pvc_three_quarter_in", '  PVC 3/4" pipe', "services",
              pq.pvc_three_quarter_in_m, "m")
    info_line("pvc_4in", '  PVC 4" pipe', "services", pq.pvc_4in_m, "m")
    info_line("wc_units", "  WC units", "services", pq.wc_units, "pcs")
    info_line("basins", "  Basins", "services", pq.basins, "pcs")
    info_line("showers", "  Showers", "services", pq.showers, "pcs")
    info_line("fitting_sets", "  Fitting sets", "services", pq.fitting_sets, "sets")
    info_line("water_tanks", "  Water storage tanks", "services", pq.water_tanks, "pcs")

    eq = electrical_takeoff(spec)
    lump_line("electrical", "Electrical, full installation", "services",
              electrical_cost(spec, book))
    info_line("cable_2_5mm", "  Cable 2.5 mm2", "services", eq.cable_2_5mm_m, "m")
    info_line("cable_4mm", "  Cable 4 mm2", "services", eq.cable_4mm_m, "m")
    info_line("cable_6mm", "  Cable 6 mm2", "services", eq.cable_6mm_m, "m")
    info_line("switches", "  Switches", "services", eq.switches, "pcs")
    info_line("sockets", "  Socket outlets", "services", eq.sockets, "pcs")
    info_line("light_fittings", "  Light fittings", "services", eq.light_fittings, "pcs")
    info_line("mcbs", "  MCBs", "services", eq.mcbs, "pcs")
    info_line("distribution_boards", "  Distribution boards", "services",
              eq.distribution_boards, "pcs")

    # selected features
    for fline in feature_cost_lines(
        spec, wall, book, region,
        fan_count=flags.pin_fan_count,
        paint_override=flags.pin_paint_cost,
    ):
        lines.append(
            BoQLine(
                fline.item_id,
                fline.description,
                fline.category,
                quantity=fline.quantity,
                unit=fline.unit,
                unit_price=fline.unit_price,
                cost=lump(fline.cost, fline.category),
                omitted_in_informal=fline.item_id in book.gap_omitted_items,
                post_total=fline.post_total,
            )
        )

    # joinery allowance and labour close out the variable lines
    lump_line("doors_windows", f"Doors and windows allowance ({spec.bedrooms} bedrooms)",
              "finishes", doors_windows_allowance(spec.bedrooms, book))

    labour_unit = labour_rate(book, region).times(
        1 + LABOUR_STOREY_STEP * (spec.storeys - 1)
    ).times(style_modifier(book, style, "labour"))
    lines.append(
        BoQLine(
            "labour",
            "Labour, all trades",
            "labour",
            quantity=spec.total_area_m2,
            unit="m2",
            unit_price=labour_unit,
            cost=line_cost(labour_unit, spec.total_area_m2),
            omitted_in_informal="labour" in book.gap_omitted_items,
        )
    )

    variable = Money.zero()
    post_total = Money.zero()
    for entry in lines:
        if entry.informational or entry.cost is None:
            continue
        if entry.post_total:
            post_total += entry.cost
        else:
            variable += entry.cost

    cont = contingency_on(variable)

    fees = [
        ("fee_design", "Design fee", book.fees.design_fee(spec.storeys)),
        ("fee_permit", "Building permit", book.fees.permit_fee(spec.storeys)),
    ]
    if flags.include_utility_fee:
        fees.append(("fee_utility", "Utility connections", book.fees.utility_connection))
    fixed = Money.zero()
    for item_id, label, amount in fees:
        lines.append(BoQLine(item_id, label, "fees", cost=amount))
        fixed += amount

    total = variable + cont + fixed + post_total
    rate = Decimal(total.pesewas) / Decimal(str(spec.total_area_m2))
    rate_money = Money(int(rate.to_integral_value(rounding=ROUND_HALF_UP)))

    return Estimate(
        spec=spec,
        region=region,
        mode=wall.source,
        pricebook_version=book.version,
        flags=flags,
        wall=wall,
        lines=tuple(lines),
        variable_subtotal=variable,
        contingency=cont,
        fixed_fees=fixed,
        post_total_cost=post_total,
        total=total,
        rate_per_m2=rate_money,
    )
