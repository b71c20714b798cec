"""Price book: material prices, regional multipliers, calibration tables.

A price book is an immutable snapshot. Overrides layer on top of the
defaults and produce a *new* book with a strictly later version stamp;
prior snapshots stay valid, so concurrent estimates always price against
a consistent view.

The on-disk form is a human-editable sectioned key/value document
([meta], [defaults], [overrides], [labour], [regions], [fees],
[features], [services], [informal_band], [gap], [styles]). The package
ships a complete default document; `default_pricebook()` loads it.
"""

from __future__ import annotations

import configparser
import importlib.resources
import os
import tempfile
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Mapping

from .errors import (
    InvalidBand,
    NonPositivePrice,
    ParseError,
    UnknownMaterial,
    UnknownRegion,
    ValidationError,
)
from .money import Money, as_decimal

__all__ = [
    "SupplyClass",
    "MaterialKind",
    "Region",
    "RegionalMultipliers",
    "FeeSchedule",
    "ServiceCalibration",
    "InformalBand",
    "PriceBook",
    "default_pricebook",
    "load_pricebook",
    "loads_pricebook",
    "save_pricebook",
    "dump_pricebook",
    "resolve_price",
    "apply_override",
    "style_modifier",
]


class SupplyClass(str, Enum):
    """Where a material's price is set: factory gate or local supply."""

    MANUFACTURED = "manufactured"
    LOCAL = "local"


class MaterialKind(str, Enum):
    CEMENT_BAG_50KG = "cement_bag_50kg"
    BLOCK_6IN_HOLLOW = "block_6in_hollow"
    BLOCK_6IN_SOLID = "block_6in_solid"
    REBAR_Y10 = "rebar_y10"
    REBAR_Y12 = "rebar_y12"
    REBAR_Y16 = "rebar_y16"
    REBAR_Y20 = "rebar_y20"
    ROOF_SHEET_IBR_045 = "roof_sheet_ibr_045"
    ROOF_TIMBER_BOARDFOOT = "roof_timber_boardfoot"
    ROOF_NAILS_KG = "roof_nails_kg"
    RIDGE_CAP = "ridge_cap"
    SAND_TRIP = "sand_trip"
    STONE_M3 = "stone_m3"
    TILE_BASIC_M2 = "tile_basic_m2"
    TILE_STANDARD_M2 = "tile_standard_m2"
    TILE_LUXURY_M2 = "tile_luxury_m2"
    PAINT_BASIC_M2 = "paint_basic_m2"
    PAINT_STANDARD_M2 = "paint_standard_m2"
    PAINT_LUXURY_M2 = "paint_luxury_m2"

    @property
    def supply_class(self) -> SupplyClass:
        return _SUPPLY_CLASS[self]


# Cement, steel, sheets and factory finishes travel from the plants in
# the south; blocks are moulded on site and sand/stone/timber are won
# locally, so their costs move the other way with distance from Accra.
_SUPPLY_CLASS = {
    MaterialKind.CEMENT_BAG_50KG: SupplyClass.MANUFACTURED,
    MaterialKind.BLOCK_6IN_HOLLOW: SupplyClass.LOCAL,
    MaterialKind.BLOCK_6IN_SOLID: SupplyClass.LOCAL,
    MaterialKind.REBAR_Y10: SupplyClass.MANUFACTURED,
    MaterialKind.REBAR_Y12: SupplyClass.MANUFACTURED,
    MaterialKind.REBAR_Y16: SupplyClass.MANUFACTURED,
    MaterialKind.REBAR_Y20: SupplyClass.MANUFACTURED,
    MaterialKind.ROOF_SHEET_IBR_045: SupplyClass.MANUFACTURED,
    MaterialKind.ROOF_TIMBER_BOARDFOOT: SupplyClass.LOCAL,
    MaterialKind.ROOF_NAILS_KG: SupplyClass.MANUFACTURED,
    MaterialKind.RIDGE_CAP: SupplyClass.MANUFACTURED,
    MaterialKind.SAND_TRIP: SupplyClass.LOCAL,
    MaterialKind.STONE_M3: SupplyClass.LOCAL,
    MaterialKind.TILE_BASIC_M2: SupplyClass.MANUFACTURED,
    MaterialKind.TILE_STANDARD_M2: SupplyClass.MANUFACTURED,
    MaterialKind.TILE_LUXURY_M2: SupplyClass.MANUFACTURED,
    MaterialKind.PAINT_BASIC_M2: SupplyClass.MANUFACTURED,
    MaterialKind.PAINT_STANDARD_M2: SupplyClass.MANUFACTURED,
    MaterialKind.PAINT_LUXURY_M2: SupplyClass.MANUFACTURED,
}


class Region(str, Enum):
    GREATER_ACCRA = "greater_accra"
    ASHANTI = "ashanti"
    WESTERN = "western"
    WESTERN_NORTH = "western_north"
    CENTRAL = "central"
    EASTERN = "eastern"
    VOLTA = "volta"
    OTI = "oti"
    NORTHERN = "northern"
    SAVANNAH = "savannah"
    NORTH_EAST = "north_east"
    UPPER_EAST = "upper_east"
    UPPER_WEST = "upper_west"
    BONO = "bono"
    BONO_EAST = "bono_east"
    AHAFO = "ahafo"


@dataclass(frozen=True)
class RegionalMultipliers:
    region: Region
    manufactured_factor: Decimal
    local_factor: Decimal

    def factor_for(self, supply: SupplyClass) -> Decimal:
        if supply is SupplyClass.MANUFACTURED:
            return self.manufactured_factor
        return self.local_factor


@dataclass(frozen=True)
class FeeSchedule:
    design_base: Money
    permit_base: Money
    utility_connection: Money
    design_multi_factor: Decimal
    permit_multi_factor: Decimal

    def design_fee(self, storeys: int) -> Money:
        if storeys > 1:
            return self.design_base.times(self.design_multi_factor)
        return self.design_base

    def permit_fee(self, storeys: int) -> Money:
        if storeys > 1:
            return self.permit_base.times(self.permit_multi_factor)
        return self.permit_base


@dataclass(frozen=True)
class ServiceCalibration:
    """Lumpsum anchors for whole-system service pricing."""

    plumbing_anchors: Mapping[int, Money]          # bathrooms -> cost
    plumbing_extra_bath: Money                     # per bathroom past the last anchor
    electrical_anchors: Mapping[tuple[int, int], Money]  # (rooms, storeys) -> cost


@dataclass(frozen=True)
class InformalBand:
    low_per_m2: Money
    high_per_m2: Money


@dataclass(frozen=True)
class PriceBook:
    """Immutable price snapshot. Treat every instance as read-only."""

    version: str
    defaults: Mapping[MaterialKind, Money]
    overrides: Mapping[MaterialKind, Money]
    labour_rate_per_m2: Money
    regions: Mapping[Region, RegionalMultipliers]
    fees: FeeSchedule
    features: Mapping[str, Money]
    services: ServiceCalibration
    informal_band: InformalBand
    gap_omitted_items: tuple[str, ...]
    styles: Mapping[str, Decimal] = field(default_factory=dict)

    def base_price(self, material: MaterialKind) -> Money:
        if material in self.overrides:
            return self.overrides[material]
        try:
            return self.defaults[material]
        except KeyError:
            raise UnknownMaterial(str(material.value)) from None

    def feature_price(self, key: str) -> Money:
        try:
            return self.features[key]
        except KeyError:
            raise UnknownMaterial(key) from None


# Work that informal flat-rate quotes habitually leave out; the gap
# analyzer uses this set unless the document overrides it.
DEFAULT_GAP_OMITTED = (
    "cement_plaster",
    "cement_screed",
    "rebar_y16",
    "rebar_y20",
    "plumbing",
    "electrical",
    "hvac",
    "septic",
)


def resolve_price(book: PriceBook, material: MaterialKind, region: Region) -> Money:
    """Resolved unit price: (override or default) x regional factor.

    Rounds half-up to the whole pesewa.
    """
    if not isinstance(material, MaterialKind):
        try:
            material = MaterialKind(material)
        except ValueError:
            raise UnknownMaterial(str(material)) from None
    if not isinstance(region, Region):
        try:
            region = Region(region)
        except ValueError:
            raise UnknownRegion(str(region)) from None
    if region not in book.regions:
        raise UnknownRegion(region.value)
    base = book.base_price(material)
    factor = book.regions[region].factor_for(material.supply_class)
    return base.times(factor)


def labour_rate(book: PriceBook, region: Region) -> Money:
    """Labour is local supply; the regional local factor applies."""
    if region not in book.regions:
        raise UnknownRegion(getattr(region, "value", str(region)))
    return book.labour_rate_per_m2.times(book.regions[region].local_factor)


def parse_price(field_path: str, raw: object) -> Money:
    """Coerce a caller-supplied price to Money; typed error on garbage."""
    try:
        return Money.from_ghs(as_decimal(raw))
    except (InvalidOperation, TypeError):
        raise ValidationError(field_path, f"not a number: {raw!r}") from None


def apply_override(
    book: PriceBook,
    material: MaterialKind,
    price: Money,
    timestamp: datetime | None = None,
) -> PriceBook:
    """Layer one override and return a new, later-versioned book."""
    if not isinstance(material, MaterialKind):
        try:
            material = MaterialKind(material)
        except ValueError:
            raise UnknownMaterial(str(material)) from None
    if price.pesewas <= 0:
        raise NonPositivePrice(f"overrides.{material.value}", price.format())
    stamp = _next_version(book.version, timestamp)
    overrides = dict(book.overrides)
    overrides[material] = price
    return replace(book, overrides=overrides, version=stamp)


def style_modifier(book: PriceBook, style: str, category: str) -> Decimal:
    """Multiplier for a (style, category) pair; identity when unlisted."""
    return book.styles.get(f"{style}.{category}", Decimal(1))


def _next_version(current: str, timestamp: datetime | None) -> str:
    """Monotonic ISO-8601 version stamps.

    If the supplied timestamp does not sort after the current version,
    nudge one microsecond past it so versions never regress.
    """
    if timestamp is None:
        timestamp = datetime.now(timezone.utc)
    if timestamp.tzinfo is None:
        timestamp = timestamp.replace(tzinfo=timezone.utc)
    current_dt = _parse_version(current)
    if current_dt is not None and timestamp <= current_dt:
        from datetime import timedelta

        timestamp = current_dt + timedelta(microseconds=1)
    return timestamp.isoformat().replace("+00:00", "Z")


def _parse_version(version: str) -> datetime | None:
    try:
        return datetime.fromisoformat(version.replace("Z", "+00:00"))
    except ValueError:
        return None


# ---- document i/o ----------------------------------------------------

_SECTIONS = (
    "meta",
    "defaults",
    "overrides",
    "labour",
    "regions",
    "fees",
    "features",
    "services",
    "informal_band",
    "gap",
    "styles",
)


def default_pricebook() -> PriceBook:
    """The price book shipped with the package (GHS 2026 mid-range)."""
    text = (
        importlib.resources.files("ghboq.data")
        .joinpath("default_pricebook.ini")
        .read_text(encoding="utf-8")
    )
    return loads_pricebook(text)


def load_pricebook(path: str | os.PathLike) -> PriceBook:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_pricebook(fh.read())


def loads_pricebook(text: str) -> PriceBook:
    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    try:
        parser.read_string(text)
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] if exc.errors else None
        raise ParseError(str(exc).splitlines()[0], line=line) from exc
    except configparser.Error as exc:
        raise ParseError(str(exc)) from exc

    for section in parser.sections():
        if section not in _SECTIONS:
            raise ValidationError(section, "unknown section")

    version = _get(parser, "meta", "version", "1970-01-01T00:00:00Z")

    defaults = _read_prices(parser, "defaults", require_all=True)
    overrides = _read_prices(parser, "overrides", require_all=False)

    labour = _read_money(parser, "labour", "rate_per_m2")

    regions: dict[Region, RegionalMultipliers] = {}
    if parser.has_section("regions"):
        for key, raw in parser.items("regions"):
            try:
                region = Region(key)
            except ValueError:
                raise ValidationError(f"regions.{key}", "unknown region") from None
            parts = [p.strip() for p in raw.split(",")]
            if len(parts) != 2:
                raise ValidationError(
                    f"regions.{key}", "expected 'manufactured_factor, local_factor'"
                )
            manu, local = (_decimal(f"regions.{key}", p) for p in parts)
            if manu <= 0 or local <= 0:
                raise ValidationError(f"regions.{key}", "factors must be > 0")
            regions[region] = RegionalMultipliers(region, manu, local)
    if Region.GREATER_ACCRA not in regions:
        raise ValidationError("regions.greater_accra", "baseline region is required")

    fees = FeeSchedule(
        design_base=_read_money(parser, "fees", "design_base"),
        permit_base=_read_money(parser, "fees", "permit_base"),
        utility_connection=_read_money(parser, "fees", "utility_connection"),
        design_multi_factor=_decimal(
            "fees.design_multi_factor", _get(parser, "fees", "design_multi_factor", "1")
        ),
        permit_multi_factor=_decimal(
            "fees.permit_multi_factor", _get(parser, "fees", "permit_multi_factor", "1")
        ),
    )

    features: dict[str, Money] = {}
    if parser.has_section("features"):
        for key, raw in parser.items("features"):
            features[key] = _money_value(f"features.{key}", raw)

    plumbing_anchors: dict[int, Money] = {}
    electrical_anchors: dict[tuple[int, int], Money] = {}
    plumbing_step = Money.zero()
    if parser.has_section("services"):
        for key, raw in parser.items("services"):
            price = _money_value(f"services.{key}", raw)
            if key == "plumbing_extra_bath":
                plumbing_step = price
            elif key.startswith("plumbing_") and key.endswith("bath"):
                count = key[len("plumbing_") : -len("bath")]
                plumbing_anchors[int(count)] = price
            elif key.startswith("electrical_rooms"):
                body = key[len("electrical_rooms") :]
                rooms_s, _, storeys_s = body.partition("_storeys")
                try:
                    electrical_anchors[(int(rooms_s), int(storeys_s))] = price
                except ValueError:
                    raise ValidationError(
                        f"services.{key}", "expected electrical_rooms<N>_storeys<M>"
                    ) from None
            else:
                raise ValidationError(f"services.{key}", "unknown calibration key")
    services = ServiceCalibration(plumbing_anchors, plumbing_step, electrical_anchors)

    band = InformalBand(
        low_per_m2=_read_money(parser, "informal_band", "low_per_m2"),
        high_per_m2=_read_money(parser, "informal_band", "high_per_m2"),
    )
    if band.low_per_m2.pesewas <= 0 or band.high_per_m2 < band.low_per_m2:
        raise InvalidBand("need 0 < low <= high")

    omitted = DEFAULT_GAP_OMITTED
    if parser.has_section("gap") and parser.has_option("gap", "omitted"):
        omitted = tuple(
            item.strip() for item in parser.get("gap", "omitted").split(",") if item.strip()
        )

    styles: dict[str, Decimal] = {}
    if parser.has_section("styles"):
        for key, raw in parser.items("styles"):
            factor = _decimal(f"styles.{key}", raw)
            if factor <= 0:
                raise ValidationError(f"styles.{key}", "modifier must be > 0")
            styles[key] = factor

    return PriceBook(
        version=version,
        defaults=defaults,
        overrides=overrides,
        labour_rate_per_m2=labour,
        regions=regions,
        fees=fees,
        features=features,
        services=services,
        informal_band=band,
        gap_omitted_items=omitted,
        styles=styles,
    )


def dump_pricebook(book: PriceBook) -> str:
    """Serialize to the sectioned key/value document form."""
    out: list[str] = []
    out.append("# Price book. All figures in GHS unless noted.")
    out.append("[meta]")
    out.append(f"version = {book.version}")
    out.append("")
    out.append("[defaults]")
    for material in MaterialKind:
        if material in book.defaults:
            out.append(f"{material.value} = {book.defaults[material]}")
    out.append("")
    out.append("[overrides]")
    for material in MaterialKind:
        if material in book.overrides:
            out.append(f"{material.value} = {book.overrides[material]}")
    out.append("")
    out.append("[labour]")
    out.append(f"rate_per_m2 = {book.labour_rate_per_m2}")
    out.append("")
    out.append("[regions]")
    for region in Region:
        if region in book.regions:
            mult = book.regions[region]
            out.append(
                f"{region.value} = {mult.manufactured_factor}, {mult.local_factor}"
            )
    out.append("")
    out.append("[fees]")
    out.append(f"design_base = {book.fees.design_base}")
    out.append(f"permit_base = {book.fees.permit_base}")
    out.append(f"utility_connection = {book.fees.utility_connection}")
    out.append(f"design_multi_factor = {book.fees.design_multi_factor}")
    out.append(f"permit_multi_factor = {book.fees.permit_multi_factor}")
    out.append("")
    out.append("[features]")
    for key in sorted(book.features):
        out.append(f"{key} = {book.features[key]}")
    out.append("")
    out.append("[services]")
    for baths in sorted(book.services.plumbing_anchors):
        out.append(f"plumbing_{baths}bath = {book.services.plumbing_anchors[baths]}")
    out.append(f"plumbing_extra_bath = {book.services.plumbing_extra_bath}")
    for rooms, storeys in sorted(book.services.electrical_anchors):
        price = book.services.electrical_anchors[(rooms, storeys)]
        out.append(f"electrical_rooms{rooms}_storeys{storeys} = {price}")
    out.append("")
    out.append("[informal_band]")
    out.append(f"low_per_m2 = {book.informal_band.low_per_m2}")
    out.append(f"high_per_m2 = {book.informal_band.high_per_m2}")
    out.append("")
    out.append("[gap]")
    out.append("omitted = " + ", ".join(book.gap_omitted_items))
    if book.styles:
        out.append("")
        out.append("[styles]")
        for key in sorted(book.styles):
            out.append(f"{key} = {book.styles[key]}")
    out.append("")
    return "\n".join(out)


def save_pricebook(book: PriceBook, path: str | os.PathLike) -> None:
    """Atomic write: never leaves a half-written store behind."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".pricebook-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dump_pricebook(book))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---- parsing helpers -------------------------------------------------


def _get(parser, section, option, fallback=None):
    if parser.has_section(section) and parser.has_option(section, option):
        return parser.get(section, option).strip()
    if fallback is not None:
        return fallback
    raise ValidationError(f"{section}.{option}", "missing required entry")


def _decimal(field_path: str, raw: str) -> Decimal:
    try:
        return Decimal(raw)
    except InvalidOperation:
        raise ValidationError(field_path, f"not a number: {raw!r}") from None


def _money_value(field_path: str, raw: str) -> Money:
    value = _decimal(field_path, raw)
    if value <= 0:
        raise NonPositivePrice(field_path, raw)
    return Money.from_ghs(value)


def _read_money(parser, section, option) -> Money:
    return _money_value(f"{section}.{option}", _get(parser, section, option))


def _read_prices(parser, section, require_all: bool) -> dict[MaterialKind, Money]:
    prices: dict[MaterialKind, Money] = {}
    if parser.has_section(section):
        for key, raw in parser.items(section):
            try:
                material = MaterialKind(key)
            except ValueError:
                raise ValidationError(f"{section}.{key}", "unknown material") from None
            prices[material] = _money_value(f"{section}.{key}", raw)
    if require_all:
        for material in MaterialKind:
            if material not in prices:
                raise ValidationError(
                    f"{section}.{material.value}", "missing required entry"
                )
    return prices
