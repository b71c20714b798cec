"""Wall geometry: drawn floor plans and the rectangular fallback.

A layout document describes one storey; the structural take-off scales
wall quantities across storeys. When no layout is drawn, the fallback
approximates the plan as a 1.4:1 rectangle and adds interior partitions
as a fraction of the perimeter that grows with bedroom count.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    NonPositiveFootprint,
    OpeningsExceedGross,
    ParseError,
    ValidationError,
)

__all__ = [
    "WALL_HEIGHT_M",
    "WallSegment",
    "Opening",
    "Door",
    "Room",
    "RoomKind",
    "FloorPlanLayout",
    "WallModel",
    "RectangularApproximation",
    "ComplianceFinding",
    "wall_model_from_layout",
    "wall_model_from_formula",
    "check_room_minimums",
    "parse_layout",
    "layout_to_dict",
]

WALL_HEIGHT_M = 3.0

ASPECT_RATIO = 1.4
PARTITION_FACTOR = 0.40
BEDROOM_PARTITION_STEP = 0.15  # per bedroom above two

# GS 1207 habitable-room floor minimums, boundary inclusive.
ROOM_MINIMUMS_M2 = {
    "living": 13.47,
    "bedroom_main": 11.15,
}


class RoomKind(str, Enum):
    LIVING = "living"
    BEDROOM_MAIN = "bedroom_main"
    BEDROOM = "bedroom"
    KITCHEN = "kitchen"
    BATH = "bath"
    OTHER = "other"


@dataclass(frozen=True)
class WallSegment:
    """A wall in plan units; its length is the longer cross dimension."""

    a: float
    b: float

    def length_m(self, scale: float) -> float:
        return max(self.a, self.b) * scale


@dataclass(frozen=True)
class Opening:
    width_m: float
    height_m: float

    @property
    def area_m2(self) -> float:
        return self.width_m * self.height_m


@dataclass(frozen=True)
class Door:
    """Positional metadata only; walls arrive pre-split at door gaps."""

    x: float | None = None
    y: float | None = None


@dataclass(frozen=True)
class Room:
    kind: RoomKind
    area_m2: float


@dataclass(frozen=True)
class FloorPlanLayout:
    scale: float  # metres per plan unit
    walls: tuple[WallSegment, ...]
    windows: tuple[Opening, ...] = ()
    doors: tuple[Door, ...] = ()
    rooms: tuple[Room, ...] = ()


@dataclass(frozen=True)
class WallModel:
    """Single-storey wall quantities, geometry- or formula-sourced."""

    total_wall_length_m: float
    wall_height_m: float
    gross_wall_area_m2: float
    opening_area_m2: float
    net_wall_area_m2: float
    source: str  # "geometry" | "formula"


@dataclass(frozen=True)
class RectangularApproximation:
    footprint_m2: float
    width_m: float
    length_m: float
    perimeter_m: float
    partition_length_m: float

    @property
    def total_wall_length_m(self) -> float:
        return self.perimeter_m + self.partition_length_m


@dataclass(frozen=True)
class ComplianceFinding:
    room_index: int
    room_kind: str
    required_m2: float
    actual_m2: float


def wall_model_from_layout(
    layout: FloorPlanLayout, wall_height_m: float = WALL_HEIGHT_M
) -> WallModel:
    """Measure drawn walls; deduct window openings from the gross area.

    math.fsum keeps the totals independent of segment order. A layout
    with no walls measures zero everywhere.
    """
    total_length = math.fsum(seg.length_m(layout.scale) for seg in layout.walls)
    gross = total_length * wall_height_m
    openings = math.fsum(op.area_m2 for op in layout.windows)
    if openings > gross:
        raise OpeningsExceedGross(openings, gross)
    return WallModel(
        total_wall_length_m=total_length,
        wall_height_m=wall_height_m,
        gross_wall_area_m2=gross,
        opening_area_m2=openings,
        net_wall_area_m2=gross - openings,
        source="geometry",
    )


def rectangular_approximation(
    footprint_m2: float, bedrooms: int
) -> RectangularApproximation:
    if not footprint_m2 > 0:
        raise NonPositiveFootprint(footprint_m2)
    if bedrooms < 1:
        raise ValidationError("bedrooms", f"must be >= 1, got {bedrooms}")
    width = math.sqrt(footprint_m2 / ASPECT_RATIO)
    length = ASPECT_RATIO * width
    perimeter = 2 * (width + length)
    partition_factor = PARTITION_FACTOR * (
        1 + BEDROOM_PARTITION_STEP * max(0, bedrooms - 2)
    )
    return RectangularApproximation(
        footprint_m2=footprint_m2,
        width_m=width,
        length_m=length,
        perimeter_m=perimeter,
        partition_length_m=perimeter * partition_factor,
    )


def wall_model_from_formula(
    footprint_m2: float, bedrooms: int, wall_height_m: float = WALL_HEIGHT_M
) -> WallModel:
    """Rectangular fallback; no openings, so net equals gross."""
    rect = rectangular_approximation(footprint_m2, bedrooms)
    total = rect.total_wall_length_m
    gross = total * wall_height_m
    return WallModel(
        total_wall_length_m=total,
        wall_height_m=wall_height_m,
        gross_wall_area_m2=gross,
        opening_area_m2=0.0,
        net_wall_area_m2=gross,
        source="formula",
    )


def check_room_minimums(layout: FloorPlanLayout) -> list[ComplianceFinding]:
    """GS 1207 floor-area minimums. Boundary values pass."""
    findings = []
    for index, room in enumerate(layout.rooms):
        required = ROOM_MINIMUMS_M2.get(room.kind.value)
        if required is not None and room.area_m2 < required:
            findings.append(
                ComplianceFinding(
                    room_index=index,
                    room_kind=room.kind.value,
                    required_m2=required,
                    actual_m2=room.area_m2,
                )
            )
    return findings


# ---- document form ----------------------------------------------------


def parse_layout(source: str | dict) -> FloorPlanLayout:
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    else:
        data = source
    if not isinstance(data, dict):
        raise ValidationError("layout", "expected an object")

    try:
        scale = float(data["scale"])
    except KeyError:
        raise ValidationError("scale", "missing required field") from None
    except (TypeError, ValueError):
        raise ValidationError("scale", f"expected a number, got {data['scale']!r}") from None
    if not scale > 0:
        raise ValidationError("scale", f"must be > 0, got {scale}")

    walls = []
    for i, raw in enumerate(_list_field(data, "walls", required=True)):
        a = _positive(f"walls[{i}].a", raw, "a")
        b = _positive(f"walls[{i}].b", raw, "b")
        walls.append(WallSegment(a=a, b=b))

    windows = []
    for i, raw in enumerate(_list_field(data, "windows")):
        windows.append(
            Opening(
                width_m=_positive(f"windows[{i}].w_m", raw, "w_m"),
                height_m=_positive(f"windows[{i}].h_m", raw, "h_m"),
            )
        )

    doors = []
    for i, raw in enumerate(_list_field(data, "doors")):
        if not isinstance(raw, dict):
            raise ValidationError(f"doors[{i}]", "expected an object")
        doors.append(Door(x=raw.get("x"), y=raw.get("y")))

    rooms = []
    for i, raw in enumerate(_list_field(data, "rooms")):
        if not isinstance(raw, dict):
            raise ValidationError(f"rooms[{i}]", "expected an object")
        kind_raw = raw.get("kind")
        try:
            kind = RoomKind(kind_raw)
        except ValueError:
            allowed = ", ".join(k.value for k in RoomKind)
            raise ValidationError(
                f"rooms[{i}].kind", f"must be one of: {allowed}"
            ) from None
        rooms.append(Room(kind=kind, area_m2=_positive(f"rooms[{i}].area_m2", raw, "area_m2")))

    return FloorPlanLayout(
        scale=scale,
        walls=tuple(walls),
        windows=tuple(windows),
        doors=tuple(doors),
        rooms=tuple(rooms),
    )


def layout_to_dict(layout: FloorPlanLayout) -> dict:
    doc: dict = {
        "scale": layout.scale,
        "walls": [{"a": seg.a, "b": seg.b} for seg in layout.walls],
    }
    if layout.windows:
        doc["windows"] = [
            {"w_m": op.width_m, "h_m": op.height_m} for op in layout.windows
        ]
    if layout.doors:
        doc["doors"] = [
            {k: v for k, v in (("x", d.x), ("y", d.y)) if v is not None}
            for d in layout.doors
        ]
    if layout.rooms:
        doc["rooms"] = [
            {"kind": room.kind.value, "area_m2": room.area_m2} for room in layout.rooms
        ]
    return doc


def _list_field(data: dict, key: str, required: bool = False) -> list:
    if key not in data:
        if required:
            raise ValidationError(key, "missing required field")
        return []
    value = data[key]
    if not isinstance(value, list):
        raise ValidationError(key, "expected a list")
    if required and not value:
        raise ValidationError(key, "must not be empty")
    return value


def _positive(field_path: str, raw, key: str) -> float:
    if not isinstance(raw, dict) or key not in raw:
        raise ValidationError(field_path, "missing required field")
    try:
        value = float(raw[key])
    except (TypeError, ValueError):
        raise ValidationError(field_path, f"expected a number, got {raw[key]!r}") from None
    if not value > 0:
        raise ValidationError(field_path, f"must be > 0, got {value}")
    return value
