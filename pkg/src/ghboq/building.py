"""Building description: the user-facing input to an estimate."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidSpec, ParseError, ValidationError
from .pricebook import Region

__all__ = [
    "Style",
    "Grade",
    "FeatureKind",
    "FeatureSelection",
    "BuildingSpec",
    "parse_spec",
    "spec_to_dict",
]


class Style(str, Enum):
    TRADITIONAL = "traditional"
    MODERN = "modern"
    LUXURY = "luxury"
    OPEN_CONCEPT = "open_concept"
    LOFT_STUDIO = "loft_studio"
    TOWNHOUSE = "townhouse"
    MEDITERRANEAN = "mediterranean"
    FARMHOUSE = "farmhouse"
    TINY_HOME = "tiny_home"
    COTTAGE = "cottage"
    BARNDOMINIUM = "barndominium"
    CRAFTSMAN = "craftsman"


class Grade(str, Enum):
    """Finish level, reused for graded feature tables."""

    BASIC = "basic"
    STANDARD = "standard"
    LUXURY = "luxury"


class FeatureKind(str, Enum):
    SEPTIC = "septic"
    HVAC = "hvac"
    TILES = "tiles"
    PAINT = "paint"
    COMPOUND_WALL = "compound_wall"
    SOLAR = "solar"
    KITCHEN = "kitchen"
    SECURITY = "security"
    CEILING = "ceiling"
    EXTERNAL_WORKS = "external_works"
    SMART_HOME = "smart_home"


CEILING_TYPES = ("gypsum", "pop", "wood_acoustic")


@dataclass(frozen=True)
class FeatureSelection:
    """One chosen feature.

    ``grade`` defaults to the building's finish level when omitted.
    ``post_total`` controls contingency placement: the default keeps the
    feature inside the variable subtotal; True appends it after
    contingency and fees, the way optional extras are quoted.
    """

    feature: FeatureKind
    grade: Grade | None = None
    perimeter_m: float | None = None     # compound_wall only
    ceiling_type: str | None = None      # ceiling only
    post_total: bool = False


@dataclass(frozen=True)
class BuildingSpec:
    total_area_m2: float
    storeys: int
    bedrooms: int
    bathrooms: int
    style: Style = Style.TRADITIONAL
    finish: Grade = Grade.STANDARD
    region: Region = Region.GREATER_ACCRA
    features: frozenset[FeatureSelection] = field(default_factory=frozenset)

    @property
    def footprint_m2(self) -> float:
        return self.total_area_m2 / self.storeys

    def validate(self) -> None:
        if not self.total_area_m2 > 0:
            raise InvalidSpec("total_area_m2", f"must be > 0, got {self.total_area_m2}")
        if self.storeys < 1:
            raise InvalidSpec("storeys", f"must be >= 1, got {self.storeys}")
        if self.bedrooms < 1:
            raise InvalidSpec("bedrooms", f"must be >= 1, got {self.bedrooms}")
        if self.bathrooms < 1:
            raise InvalidSpec("bathrooms", f"must be >= 1, got {self.bathrooms}")
        for sel in self.features:
            if sel.feature is FeatureKind.COMPOUND_WALL:
                if sel.perimeter_m is None or not sel.perimeter_m > 0:
                    raise InvalidSpec(
                        "features.compound_wall.perimeter_m", "must be > 0"
                    )
            if sel.feature is FeatureKind.CEILING:
                if sel.ceiling_type not in CEILING_TYPES:
                    raise InvalidSpec(
                        "features.ceiling.ceiling_type",
                        f"must be one of {', '.join(CEILING_TYPES)}",
                    )


# ---- document form ----------------------------------------------------


def parse_spec(source: str | dict) -> BuildingSpec:
    """Parse a building document (JSON text or an already-decoded dict)."""
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    else:
        data = source
    if not isinstance(data, dict):
        raise ValidationError("spec", "expected an object")

    def need(key, kind, caster):
        if key not in data:
            raise ValidationError(key, "missing required field")
        try:
            return caster(data[key])
        except (TypeError, ValueError):
            raise ValidationError(key, f"expected {kind}, got {data[key]!r}") from None

    area = need("total_area_m2", "a number", float)
    storeys = need("storeys", "an integer", _strict_int)
    bedrooms = need("bedrooms", "an integer", _strict_int)
    bathrooms = need("bathrooms", "an integer", _strict_int)

    style = _enum_field(data, "style", Style, Style.TRADITIONAL)
    finish = _enum_field(data, "finish", Grade, Grade.STANDARD)
    region = _enum_field(data, "region", Region, Region.GREATER_ACCRA)

    features = []
    raw_features = data.get("features", [])
    if not isinstance(raw_features, list):
        raise ValidationError("features", "expected a list")
    for i, raw in enumerate(raw_features):
        if not isinstance(raw, dict):
            raise ValidationError(f"features[{i}]", "expected an object")
        kind = _enum_value(f"features[{i}].feature", raw.get("feature"), FeatureKind)
        grade = None
        if raw.get("grade") is not None:
            grade = _enum_value(f"features[{i}].grade", raw["grade"], Grade)
        perimeter = raw.get("perimeter_m")
        if perimeter is not None:
            try:
                perimeter = float(perimeter)
            except (TypeError, ValueError):
                raise ValidationError(
                    f"features[{i}].perimeter_m", "expected a number"
                ) from None
        features.append(
            FeatureSelection(
                feature=kind,
                grade=grade,
                perimeter_m=perimeter,
                ceiling_type=raw.get("ceiling_type"),
                post_total=bool(raw.get("post_total", False)),
            )
        )

    spec = BuildingSpec(
        total_area_m2=area,
        storeys=storeys,
        bedrooms=bedrooms,
        bathrooms=bathrooms,
        style=style,
        finish=finish,
        region=region,
        features=frozenset(features),
    )
    spec.validate()
    return spec


def spec_to_dict(spec: BuildingSpec) -> dict:
    doc: dict = {
        "total_area_m2": spec.total_area_m2,
        "storeys": spec.storeys,
        "bedrooms": spec.bedrooms,
        "bathrooms": spec.bathrooms,
        "style": spec.style.value,
        "finish": spec.finish.value,
        "region": spec.region.value,
    }
    features = []
    for sel in sorted(spec.features, key=lambda s: s.feature.value):
        item: dict = {"feature": sel.feature.value}
        if sel.grade is not None:
            item["grade"] = sel.grade.value
        if sel.perimeter_m is not None:
            item["perimeter_m"] = sel.perimeter_m
        if sel.ceiling_type is not None:
            item["ceiling_type"] = sel.ceiling_type
        if sel.post_total:
            item["post_total"] = True
        features.append(item)
    doc["features"] = features
    return doc


def _strict_int(value) -> int:
    if isinstance(value, bool):
        raise ValueError("bool is not an int")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise ValueError(f"not an integer: {value!r}")


def _enum_field(data, key, enum_cls, default):
    if key not in data or data[key] is None:
        return default
    return _enum_value(key, data[key], enum_cls)


def _enum_value(field_path, raw, enum_cls):
    try:
        return enum_cls(raw)
    except ValueError:
        allowed = ", ".join(member.value for member in enum_cls)
        raise ValidationError(field_path, f"must be one of: {allowed}") from None
