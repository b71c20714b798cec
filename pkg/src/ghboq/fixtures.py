"""Reproduction fixtures: three published worked examples (A, B, C).

Each fixture carries the building spec, the flag bundle the reference
workbook used, and the expected lines with a tolerance class per row.
The reference workbook ran without a cutting-waste allowance, left
roofing nails and ridge caps unpriced, and carried a handful of values
(total cement demand, sand trips, and for case A the fan count and
paint lumpsum) beyond what its documented equations produce; those
arrive here as explicit pins, never as silent defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .building import (
    BuildingSpec,
    FeatureKind,
    FeatureSelection,
    Grade,
    spec_to_dict,
)
from .errors import UnknownCase
from .estimator import Estimate, EstimateFlags, contingency_on, estimate
from .gap import GapReport, gap
from .money import Money
from .pricebook import PriceBook, default_pricebook
from .structural import structural_takeoff

__all__ = [
    "Tolerance",
    "ExpectedRow",
    "CaseFixture",
    "CheckRow",
    "CaseResult",
    "CASE_IDS",
    "get_fixture",
    "run_case",
    "case_request_document",
]

CASE_IDS = ("A", "B", "C")


@dataclass(frozen=True)
class Tolerance:
    kind: str  # "exact" | "abs" | "pct" | "range"
    amount: float = 0.0
    low: float = 0.0
    high: float = 0.0

    @classmethod
    def exact(cls) -> "Tolerance":
        return cls("exact")

    @classmethod
    def absolute(cls, amount: float) -> "Tolerance":
        return cls("abs", amount=amount)

    @classmethod
    def pct(cls, percent: float) -> "Tolerance":
        return cls("pct", amount=percent)

    @classmethod
    def within(cls, low: float, high: float) -> "Tolerance":
        return cls("range", low=low, high=high)

    def check(self, expected: float, actual: float) -> bool:
        if self.kind == "exact":
            return abs(actual - expected) <= 1e-9 * max(1.0, abs(expected))
        if self.kind == "abs":
            return abs(actual - expected) <= self.amount + 1e-9
        if self.kind == "pct":
            return abs(actual - expected) <= abs(expected) * self.amount / 100 + 1e-9
        return self.low - 1e-9 <= actual <= self.high + 1e-9

    def describe(self) -> str:
        if self.kind == "exact":
            return "exact"
        if self.kind == "abs":
            return f"+/-{_trim(self.amount)}"
        if self.kind == "pct":
            return f"+/-{_trim(self.amount)}%"
        return f"[{_trim(self.low)}, {_trim(self.high)}]"


def _trim(value: float) -> str:
    return f"{value:g}"


@dataclass(frozen=True)
class ExpectedRow:
    label: str
    kind: str  # "quantity" | "cost" | "summary" | "gap_low" | "gap_high" | "sand_formula" | "contingency_rule"
    key: str
    expected: float
    tolerance: Tolerance


def _qty(label: str, key: str, expected: float, tol: Tolerance = Tolerance.exact()) -> ExpectedRow:
    return ExpectedRow(label, "quantity", key, expected, tol)


def _cost(label: str, key: str, expected: float, tol: Tolerance = Tolerance.exact()) -> ExpectedRow:
    return ExpectedRow(label, "cost", key, expected, tol)


def _summary(label: str, key: str, expected: float, tol: Tolerance) -> ExpectedRow:
    return ExpectedRow(label, "summary", key, expected, tol)


@dataclass(frozen=True)
class CaseFixture:
    case_id: str
    title: str
    spec: BuildingSpec
    flags: EstimateFlags
    expected: tuple[ExpectedRow, ...]
    extras: tuple[FeatureSelection, ...] = ()


@dataclass(frozen=True)
class CheckRow:
    label: str
    expected: float
    actual: float
    tolerance: str
    ok: bool


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    estimate: Estimate
    gap_report: GapReport
    rows: tuple[CheckRow, ...]
    extras_estimate: Estimate | None = None

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)


_BASE_FEATURES = frozenset(
    {
        FeatureSelection(FeatureKind.SEPTIC),
        FeatureSelection(FeatureKind.HVAC),
        FeatureSelection(FeatureKind.TILES, grade=Grade.STANDARD),
        FeatureSelection(FeatureKind.PAINT, grade=Grade.STANDARD),
    }
)

_CASE_A = CaseFixture(
    case_id="A",
    title="75 m2 two-bedroom single-storey house, Greater Accra",
    spec=BuildingSpec(
        total_area_m2=75.0, storeys=1, bedrooms=2, bathrooms=1,
        features=_BASE_FEATURES,
    ),
    flags=EstimateFlags(
        w_cut=0.0,
        price_roof_accessories=False,
        include_utility_fee=False,
        pin_cement_total_bags=847,
        pin_sand_trips=24,
        pin_paint_cost=Money.from_ghs(8500),
        pin_fan_count=3,
    ),
    expected=(
        _qty("Blocks (pcs)", "blocks", 1609),
        _qty("Cement, total (bags, pinned)", "cement_total", 847),
        _qty("Cement: foundation (bags)", "cement_foundation", 300),
        _qty("Cement: mortar (bags)", "cement_mortar", 20),
        _qty("Cement: plaster (bags)", "cement_plaster", 178),
        _qty("Cement: screed (bags)", "cement_screed", 150),
        ExpectedRow("Sand by formula (trips)", "sand_formula", "sand", 18, Tolerance.exact()),
        _qty("Sand as priced (trips, pinned)", "sand", 24),
        _qty("Stone (m3)", "stone", 13.5),
        _qty("Rebar Y12 (lengths)", "rebar_y12", 900),
        _qty("Rebar Y16 (lengths)", "rebar_y16", 300),
        _qty("Rebar Y10 (lengths)", "rebar_y10", 225),
        _qty("Roofing sheets (pcs)", "roof_sheets", 41),
        _qty("Roof timber (bf)", "roof_timber", 1350),
        _cost("Plaster cement (GHS)", "cement_plaster", 17978),
        _cost("Screed cement (GHS)", "cement_screed", 15150),
        _cost("Tiles (GHS)", "tiles", 3713),
        _cost("Paint (GHS, pinned)", "paint", 8500),
        _cost("Labour (GHS)", "labour", 67500),
        _cost("Plumbing (GHS)", "plumbing", 28500),
        _cost("Electrical (GHS)", "electrical", 22400),
        _summary("Fixed fees (GHS)", "fixed_fees", 8500, Tolerance.exact()),
        _summary("Total (GHS)", "total", 519657, Tolerance.pct(5)),
        ExpectedRow("Gap vs low rate (%)", "gap_low", "", 98, Tolerance.absolute(1)),
        ExpectedRow("Gap vs high rate (%)", "gap_high", "", 39, Tolerance.absolute(1)),
    ),
)

_CASE_B = CaseFixture(
    case_id="B",
    title="120 m2 three-bedroom single-storey house, Greater Accra",
    spec=BuildingSpec(
        total_area_m2=120.0, storeys=1, bedrooms=3, bathrooms=2,
        features=_BASE_FEATURES,
    ),
    flags=EstimateFlags(
        w_cut=0.0,
        price_roof_accessories=False,
        include_utility_fee=False,
        pin_cement_total_bags=1254,
        pin_sand_trips=34,
    ),
    expected=(
        _qty("Blocks (pcs)", "blocks", 2121, Tolerance.absolute(1)),
        _qty("Cement, total (bags, pinned)", "cement_total", 1254),
        _qty("Cement: foundation (bags)", "cement_foundation", 480),
        _qty("Cement: mortar (bags)", "cement_mortar", 26),
        _qty("Cement: plaster (bags)", "cement_plaster", 234),
        _qty("Cement: screed (bags)", "cement_screed", 240),
        _qty("Sand as priced (trips, pinned)", "sand", 34),
        _qty("Rebar Y12 (lengths)", "rebar_y12", 1440),
        _qty("Rebar Y16 (lengths)", "rebar_y16", 480),
        _qty("Rebar Y10 (lengths)", "rebar_y10", 360),
        _qty("Roofing sheets (pcs)", "roof_sheets", 65),
        _qty("Roof timber (bf)", "roof_timber", 2160),
        _cost("Tiles (GHS)", "tiles", 5940),
        _cost("Labour (GHS)", "labour", 108000),
        _cost("Plumbing (GHS)", "plumbing", 41500),
        _cost("Electrical (GHS)", "electrical", 32800),
        _summary("Fixed fees (GHS)", "fixed_fees", 8500, Tolerance.exact()),
        _summary("Total (GHS)", "total", 789692, Tolerance.pct(5)),
        ExpectedRow("Gap vs low rate (%)", "gap_low", "", 88, Tolerance.absolute(1)),
        ExpectedRow("Gap vs high rate (%)", "gap_high", "", 32, Tolerance.absolute(1)),
    ),
)

_CASE_C = CaseFixture(
    case_id="C",
    title="200 m2 four-bedroom two-storey house, Greater Accra",
    spec=BuildingSpec(
        total_area_m2=200.0, storeys=2, bedrooms=4, bathrooms=3,
        features=_BASE_FEATURES,
    ),
    flags=EstimateFlags(
        w_cut=0.0,
        price_roof_accessories=False,
        pin_cement_total_bags=2389,
        pin_sand_trips=68,
    ),
    extras=(
        FeatureSelection(
            FeatureKind.COMPOUND_WALL, grade=Grade.BASIC,
            perimeter_m=90.0, post_total=True,
        ),
        FeatureSelection(FeatureKind.KITCHEN, grade=Grade.STANDARD, post_total=True),
        FeatureSelection(FeatureKind.EXTERNAL_WORKS, post_total=True),
    ),
    expected=(
        # blocks: published figure 4,365 carries an unexplained residual;
        # accepted band is that figure down to 10% under it
        _qty("Blocks (pcs)", "blocks", 4365, Tolerance.within(3928.5, 4365)),
        _qty("Cement, total (bags, pinned)", "cement_total", 2389),
        _qty("Cement: foundation (bags)", "cement_foundation", 400),
        _qty("Cement: mortar (bags)", "cement_mortar", 53),
        _qty("Cement: plaster (bags)", "cement_plaster", 444),
        _qty("Cement: screed (bags)", "cement_screed", 800),
        _qty("Sand as priced (trips, pinned)", "sand", 68),
        _qty("Stone (m3)", "stone", 20.7),
        _qty("Rebar Y12 (lengths)", "rebar_y12", 1680),
        _qty("Rebar Y16 (lengths)", "rebar_y16", 800),
        _qty("Rebar Y10 (lengths)", "rebar_y10", 600),
        _qty("Rebar Y20 (lengths)", "rebar_y20", 100),
        _qty("Roofing sheets (pcs)", "roof_sheets", 54),
        _qty("Roof timber (bf)", "roof_timber", 1800),
        _cost("Staircase (GHS)", "staircase", 8000),
        _cost("Tiles (GHS)", "tiles", 9900),
        _cost("Labour (GHS)", "labour", 207000),
        _cost("Plumbing (GHS)", "plumbing", 68750),
        _cost("Electrical (GHS)", "electrical", 54400),
        _summary("Fixed fees (GHS)", "fixed_fees", 14700, Tolerance.exact()),
        ExpectedRow("Contingency = 15% of subtotal", "contingency_rule", "", 0, Tolerance.exact()),
        _summary("Total (GHS)", "total", 1293318, Tolerance.pct(1)),
        _summary("Total with optional extras (GHS)", "total_with_extras", 1398318, Tolerance.pct(1)),
        ExpectedRow("Gap vs low rate (%)", "gap_low", "", 85, Tolerance.absolute(1)),
        ExpectedRow("Gap vs high rate (%)", "gap_high", "", 29, Tolerance.absolute(1)),
    ),
)

_FIXTURES = {"A": _CASE_A, "B": _CASE_B, "C": _CASE_C}


def get_fixture(case_id: str) -> CaseFixture:
    try:
        return _FIXTURES[case_id.upper()]
    except KeyError:
        raise UnknownCase(case_id) from None


def run_case(case_id: str, book: PriceBook | None = None) -> CaseResult:
    """Estimate a fixture and grade every expected row."""
    fixture = get_fixture(case_id)
    book = book or default_pricebook()
    est = estimate(fixture.spec, book, flags=fixture.flags)
    report = gap(est, book.informal_band)

    extras_est = None
    if fixture.extras:
        spec2 = replace(
            fixture.spec,
            features=frozenset(fixture.spec.features | set(fixture.extras)),
        )
        extras_est = estimate(spec2, book, flags=fixture.flags)

    rows = tuple(
        _grade(row, est, report, extras_est, fixture) for row in fixture.expected
    )
    return CaseResult(
        case_id=fixture.case_id,
        estimate=est,
        gap_report=report,
        rows=rows,
        extras_estimate=extras_est,
    )


def _grade(
    row: ExpectedRow,
    est: Estimate,
    report: GapReport,
    extras_est: Estimate | None,
    fixture: CaseFixture,
) -> CheckRow:
    expected = row.expected
    if row.kind == "quantity":
        actual = float(est.line(row.key).quantity)
    elif row.kind == "cost":
        actual = float(est.line(row.key).cost.ghs)
    elif row.kind == "summary":
        if row.key == "total_with_extras":
            actual = float(extras_est.total.ghs)
        else:
            actual = float(getattr(est, row.key).ghs)
    elif row.kind == "gap_low":
        actual = float(report.gap_vs_low_pct)
    elif row.kind == "gap_high":
        actual = float(report.gap_vs_high_pct)
    elif row.kind == "sand_formula":
        sq = structural_takeoff(fixture.spec, est.wall, w_cut=fixture.flags.w_cut)
        actual = float(sq.sand_trips)
    elif row.kind == "contingency_rule":
        expected = float(contingency_on(est.variable_subtotal).ghs)
        actual = float(est.contingency.ghs)
    else:  # pragma: no cover - fixture data is static
        raise ValueError(f"unknown check kind {row.kind!r}")
    return CheckRow(
        label=row.label,
        expected=expected,
        actual=actual,
        tolerance=row.tolerance.describe(),
        ok=row.tolerance.check(expected, actual),
    )


def case_request_document(case_id: str) -> dict:
    """Fixture as a ready-to-send estimate request plus expectations."""
    fixture = get_fixture(case_id)
    return {
        "case_id": fixture.case_id,
        "title": fixture.title,
        "request": {
            "spec": spec_to_dict(fixture.spec),
            "region": fixture.spec.region.value,
            "flags": fixture.flags.to_dict(),
        },
        "optional_extras": [
            _selection_doc(sel) for sel in fixture.extras
        ],
        "expected": [
            {
                "label": row.label,
                "kind": row.kind,
                "key": row.key,
                "expected": row.expected,
                "tolerance": row.tolerance.describe(),
            }
            for row in fixture.expected
        ],
    }


def _selection_doc(sel: FeatureSelection) -> dict:
    doc: dict = {"feature": sel.feature.value}
    if sel.grade is not None:
        doc["grade"] = sel.grade.value
    if sel.perimeter_m is not None:
        doc["perimeter_m"] = sel.perimeter_m
    if sel.ceiling_type is not None:
        doc["ceiling_type"] = sel.ceiling_type
    if sel.post_total:
        doc["post_total"] = True
    return doc
