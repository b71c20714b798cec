"""Error types shared across the estimation engine.

Every error that stems from user-supplied input carries enough context
(field path or line number) for the CLI and HTTP layers to produce a
useful diagnostic without string-matching on messages.
"""

from __future__ import annotations

__all__ = [
    "EngineError",
    "ParseError",
    "ValidationError",
    "InvalidSpec",
    "UnknownRegion",
    "UnknownMaterial",
    "UnresolvableMaterial",
    "NonPositivePrice",
    "UnknownGrade",
    "MissingParameter",
    "MissingCalibration",
    "OpeningsExceedGross",
    "NonPositiveFootprint",
    "InvalidBand",
    "UnknownCase",
    "UnknownFormat",
]


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(EngineError):
    """A document could not be parsed at all.

    Carries the offending line number when the underlying parser
    provides one.
    """

    def __init__(self, message: str, *, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(EngineError):
    """A parsed document or value failed a semantic check.

    ``field`` is a dotted/indexed path such as ``walls[3].a`` or
    ``defaults.cement_bag_50kg``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class InvalidSpec(ValidationError):
    """A building description violates its preconditions."""


class UnknownRegion(EngineError):
    def __init__(self, region: str):
        self.region = region
        super().__init__(f"unknown region: {region!r}")


class UnknownMaterial(EngineError):
    def __init__(self, material: str):
        self.material = material
        super().__init__(f"unknown material: {material!r}")


class UnresolvableMaterial(EngineError):
    """A reprice was attempted against a book missing a needed entry."""

    def __init__(self, material: str):
        self.material = material
        super().__init__(f"price book cannot resolve material: {material!r}")


class NonPositivePrice(ValidationError):
    def __init__(self, field: str, value):
        super().__init__(field, f"price must be strictly positive, got {value}")


class UnknownGrade(EngineError):
    def __init__(self, grade: str):
        self.grade = grade
        super().__init__(f"unknown grade: {grade!r}")


class MissingParameter(EngineError):
    """A selected feature lacks a required parameter."""

    def __init__(self, feature: str, parameter: str):
        self.feature = feature
        self.parameter = parameter
        super().__init__(f"feature {feature!r} requires parameter {parameter!r}")


class MissingCalibration(EngineError):
    """The price book lacks an anchor table needed for a lumpsum cost."""

    def __init__(self, table: str):
        self.table = table
        super().__init__(f"price book has no calibration table: {table!r}")


class OpeningsExceedGross(ValidationError):
    def __init__(self, opening_area: float, gross_area: float):
        super().__init__(
            "windows",
            f"opening area {opening_area:.2f} m2 exceeds gross wall area {gross_area:.2f} m2",
        )


class NonPositiveFootprint(ValidationError):
    def __init__(self, value):
        super().__init__("footprint_m2", f"footprint must be > 0, got {value}")


class InvalidBand(ValidationError):
    def __init__(self, message: str):
        super().__init__("informal_band", message)


class UnknownCase(EngineError):
    def __init__(self, case_id: str):
        self.case_id = case_id
        super().__init__(f"unknown case fixture: {case_id!r} (expected A, B or C)")


class UnknownFormat(EngineError):
    def __init__(self, fmt: str):
        self.format = fmt
        super().__init__(f"unknown output format: {fmt!r}")
