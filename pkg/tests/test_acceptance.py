"""Acceptance gate: the published worked examples and engine invariants.

One test per criterion; a verbose run prints one pass/fail line each.
All numeric checks run in case-compat mode (w_cut = 0) against the
shipped default pricebook, Greater Accra region.
"""

from dataclasses import replace
from pathlib import Path

from ghboq.building import BuildingSpec, FeatureKind, FeatureSelection, Grade
from ghboq.estimator import EstimateFlags, contingency_on, estimate, reprice
from ghboq.export import render_csv, render_markdown
from ghboq.fixtures import get_fixture
from ghboq.gap import gap
from ghboq.geometry import (
    FloorPlanLayout,
    WallSegment,
    rectangular_approximation,
    wall_model_from_formula,
)
from ghboq.money import Money, line_cost
from ghboq.pricebook import MaterialKind, apply_override
from ghboq.structural import cement_bags, roofing_quantities, structural_takeoff

GOLDEN = Path(__file__).parent / "golden"

BASE_FEATURES = frozenset(
    {
        FeatureSelection(FeatureKind.SEPTIC),
        FeatureSelection(FeatureKind.HVAC),
        FeatureSelection(FeatureKind.TILES, grade=Grade.STANDARD),
        FeatureSelection(FeatureKind.PAINT, grade=Grade.STANDARD),
    }
)


def _case_estimate(case_id, book):
    fixture = get_fixture(case_id)
    return fixture, estimate(fixture.spec, book, flags=fixture.flags)


def _ghs(line):
    return int(line.cost.ghs)


def _within_pct(actual, expected, pct):
    return abs(actual - expected) <= abs(expected) * pct / 100


def test_primary_case_a_quantity_sublines_exact(book):
    fixture, est = _case_estimate("A", book)
    q = structural_takeoff(
        fixture.spec,
        wall_model_from_formula(fixture.spec.footprint_m2, fixture.spec.bedrooms),
        w_cut=0.0,
    )
    assert est.line("blocks").quantity == 1609
    assert (q.cement.foundation, q.cement.mortar, q.cement.plaster, q.cement.screed) == (
        300,
        20,
        178,
        150,
    )
    assert q.sand_trips == 18  # formula value; the workbook pins 24
    assert q.stone_m3 == 13.5
    assert est.line("rebar_y12").quantity == 900
    assert est.line("rebar_y16").quantity == 300
    assert est.line("rebar_y10").quantity == 225
    assert est.line("roof_sheets").quantity == 41
    assert est.line("roof_timber").quantity == 1350


def test_primary_case_b_quantity_sublines(book):
    fixture, est = _case_estimate("B", book)
    bags = cement_bags(
        fixture.spec,
        wall_model_from_formula(fixture.spec.footprint_m2, fixture.spec.bedrooms),
        est.line("blocks").quantity,
    )
    assert (bags.foundation, bags.mortar, bags.plaster, bags.screed) == (480, 26, 234, 240)
    assert abs(est.line("blocks").quantity - 2121) <= 1
    assert est.line("rebar_y12").quantity == 1440
    assert est.line("rebar_y16").quantity == 480
    assert est.line("rebar_y10").quantity == 360
    assert est.line("roof_sheets").quantity == 65
    assert est.line("roof_timber").quantity == 2160


def test_primary_case_c_quantities_and_structure(book):
    fixture, est = _case_estimate("C", book)
    assert est.line("rebar_y12").quantity == 1680
    assert est.line("rebar_y16").quantity == 800
    assert est.line("rebar_y10").quantity == 600
    assert est.line("rebar_y20").quantity == 100
    bags = cement_bags(
        fixture.spec,
        wall_model_from_formula(fixture.spec.footprint_m2, fixture.spec.bedrooms),
        est.line("blocks").quantity,
    )
    assert (bags.foundation, bags.mortar, bags.plaster, bags.screed) == (400, 53, 444, 800)
    assert est.line("stone").quantity == 20.7
    assert est.line("roof_sheets").quantity == 54
    assert est.line("roof_timber").quantity == 1800
    blocks = est.line("blocks").quantity
    assert 4365 * 0.90 <= blocks <= 4365
    assert _ghs(est.line("staircase")) == 8000
    assert est.fixed_fees == Money.from_ghs(14700)
    assert est.contingency == contingency_on(est.variable_subtotal)


def test_primary_cost_lines_exact(book):
    _, a = _case_estimate("A", book)
    _, b = _case_estimate("B", book)
    _, c = _case_estimate("C", book)
    assert _ghs(a.line("cement_plaster")) == 17978
    assert _ghs(a.line("cement_screed")) == 15150
    assert (_ghs(a.line("tiles")), _ghs(b.line("tiles")), _ghs(c.line("tiles"))) == (
        3713,
        5940,
        9900,
    )
    assert (_ghs(a.line("labour")), _ghs(b.line("labour")), _ghs(c.line("labour"))) == (
        67500,
        108000,
        207000,
    )
    assert (
        _ghs(a.line("plumbing")),
        _ghs(b.line("plumbing")),
        _ghs(c.line("plumbing")),
    ) == (28500, 41500, 68750)
    assert (
        _ghs(a.line("electrical")),
        _ghs(b.line("electrical")),
        _ghs(c.line("electrical")),
    ) == (22400, 32800, 54400)


def test_primary_totals_within_tolerance(book):
    _, a = _case_estimate("A", book)
    _, b = _case_estimate("B", book)
    fixture_c, c = _case_estimate("C", book)
    assert _within_pct(int(a.total.ghs), 519657, 5)
    assert _within_pct(int(b.total.ghs), 789692, 5)
    assert _within_pct(int(c.total.ghs), 1293318, 1)
    with_extras = estimate(
        replace(fixture_c.spec, features=fixture_c.spec.features | set(fixture_c.extras)),
        book,
        flags=fixture_c.flags,
    )
    assert _within_pct(int(with_extras.total.ghs), 1398318, 1)


def test_primary_gap_percentages(book):
    expectations = {"A": (98, 39), "B": (88, 32), "C": (85, 29)}
    for case_id, (low, high) in expectations.items():
        _, est = _case_estimate(case_id, book)
        report = gap(est, book.informal_band)
        assert abs(report.gap_vs_low_pct - low) <= 1, case_id
        assert abs(report.gap_vs_high_pct - high) <= 1, case_id


def test_primary_property_suite(book):
    # footprint halving: doubling storeys at fixed total area exactly
    # halves foundation cement and roof area
    for total in (80, 120, 150, 200):
        one = BuildingSpec(total_area_m2=total, storeys=1, bedrooms=3, bathrooms=2)
        two = BuildingSpec(total_area_m2=total, storeys=2, bedrooms=3, bathrooms=2)
        wall = wall_model_from_formula(one.footprint_m2, one.bedrooms)
        assert cement_bags(two, wall, 0).foundation * 2 == cement_bags(one, wall, 0).foundation
        assert roofing_quantities(two).roof_area_m2 * 2 == roofing_quantities(one).roof_area_m2

    # monotonicity of totals in area, bedrooms, bathrooms
    def total(area=120, bedrooms=3, bathrooms=2):
        spec = BuildingSpec(
            total_area_m2=area,
            storeys=1,
            bedrooms=bedrooms,
            bathrooms=bathrooms,
            features=BASE_FEATURES,
        )
        return estimate(spec, book).total

    assert total(area=80) < total(area=120) < total(area=180)
    assert total(bedrooms=2) < total(bedrooms=3) < total(bedrooms=4)
    assert total(bathrooms=1) < total(bathrooms=2) < total(bathrooms=3)

    # repricing linearity: an overridden unit price flows straight
    # through cost = round(price x qty) for every material
    fixture = get_fixture("A")
    base = estimate(fixture.spec, book, flags=fixture.flags)
    lines_by_material = {
        "blocks": MaterialKind.BLOCK_6IN_HOLLOW,
        "cement_total": MaterialKind.CEMENT_BAG_50KG,
        "sand": MaterialKind.SAND_TRIP,
        "stone": MaterialKind.STONE_M3,
        "rebar_y12": MaterialKind.REBAR_Y12,
        "rebar_y16": MaterialKind.REBAR_Y16,
        "rebar_y10": MaterialKind.REBAR_Y10,
        "roof_sheets": MaterialKind.ROOF_SHEET_IBR_045,
        "roof_timber": MaterialKind.ROOF_TIMBER_BOARDFOOT,
    }
    for item_id, material in lines_by_material.items():
        bumped = apply_override(book, material, Money.from_ghs(777))
        line = reprice(base, bumped).line(item_id)
        assert line.unit_price == Money.from_ghs(777), item_id
        assert line.cost == line_cost(Money.from_ghs(777), line.quantity), item_id

    # geometry vs formula equivalence on the synthetic rectangle
    spec = BuildingSpec(
        total_area_m2=75, storeys=1, bedrooms=2, bathrooms=1, features=BASE_FEATURES
    )
    rect = rectangular_approximation(spec.footprint_m2, spec.bedrooms)
    layout = FloorPlanLayout(
        scale=1.0,
        walls=(
            WallSegment(rect.perimeter_m, 0.001),
            WallSegment(rect.partition_length_m, 0.001),
        ),
    )
    assert estimate(spec, book, layout).total == estimate(spec, book).total

    # rate per m2 strictly decreasing across the three cases
    rates = [
        estimate(get_fixture(cid).spec, book, flags=get_fixture(cid).flags).rate_per_m2
        for cid in ("A", "B", "C")
    ]
    assert rates[0] > rates[1] > rates[2]

    # determinism: repeated runs are bit-identical
    first = estimate(fixture.spec, book, flags=fixture.flags)
    second = estimate(fixture.spec, book, flags=fixture.flags)
    assert first == second
    assert render_csv(first) == render_csv(second)

    # golden exports byte-stable
    assert render_csv(base) == GOLDEN.joinpath("case_a.csv").read_text()
    assert render_markdown(base) == GOLDEN.joinpath("case_a.md").read_text()
