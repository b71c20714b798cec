"""Serialize estimates and gap reports: structured JSON, CSV, markdown.

Output is byte-stable for identical inputs: fixed key order, canonical
number formatting, no locale dependence, no timestamps.
"""

from __future__ import annotations

import csv
import io
import json
from importlib.metadata import PackageNotFoundError, version as _dist_version

from .building import spec_to_dict
from .errors import UnknownFormat
from .estimator import BoQLine, Estimate, categorize
from .gap import GapReport
from .money import Money

__all__ = [
    "ENGINE_VERSION",
    "CSV_COLUMNS",
    "estimate_to_dict",
    "gap_to_dict",
    "export_boq",
    "render_markdown",
    "render_csv",
]

try:
    ENGINE_VERSION = _dist_version("ghboq")
except PackageNotFoundError:  # running from a source tree
    ENGINE_VERSION = "0.1.0"

CSV_COLUMNS = ("category", "item", "qty", "unit", "unit_price", "cost", "omitted_in_informal")

CATEGORY_ORDER = (
    "shell",
    "staircase",
    "services",
    "hvac_septic",
    "finishes",
    "external",
    "labour",
    "fees",
)

CATEGORY_TITLES = {
    "shell": "Structural shell",
    "staircase": "Staircase",
    "services": "Plumbing and electrical",
    "hvac_septic": "HVAC and septic",
    "finishes": "Finishes",
    "external": "External works",
    "labour": "Labour",
    "fees": "Fixed fees",
}


def _qty_text(quantity) -> str:
    if quantity is None:
        return ""
    if isinstance(quantity, int):
        return str(quantity)
    return f"{quantity:g}"


def _line_doc(line: BoQLine) -> dict:
    return {
        "item_id": line.item_id,
        "description": line.description.strip(),
        "category": line.category,
        "quantity": line.quantity,
        "unit": line.unit,
        "unit_price": line.unit_price.format() if line.unit_price else None,
        "cost_ghs": int(line.cost.ghs) if line.cost else None,
        "omitted_in_informal": line.omitted_in_informal,
        "informational": line.informational,
        "post_total": line.post_total,
    }


def estimate_to_dict(est: Estimate) -> dict:
    subtotals = categorize(est)
    return {
        "schema": "estimate/1",
        "engine_version": ENGINE_VERSION,
        "pricebook_version": est.pricebook_version,
        "mode": est.mode,
        "region": est.region.value,
        "spec": spec_to_dict(est.spec),
        "flags": est.flags.to_dict(),
        "wall": {
            "total_wall_length_m": est.wall.total_wall_length_m,
            "wall_height_m": est.wall.wall_height_m,
            "gross_wall_area_m2": est.wall.gross_wall_area_m2,
            "opening_area_m2": est.wall.opening_area_m2,
            "net_wall_area_m2": est.wall.net_wall_area_m2,
        },
        "lines": [_line_doc(line) for line in est.lines],
        "category_subtotals_ghs": {
            cat: int(subtotals[cat].ghs) for cat in CATEGORY_ORDER if cat in subtotals
        },
        "summary": {
            "variable_subtotal_ghs": int(est.variable_subtotal.ghs),
            "contingency_ghs": int(est.contingency.ghs),
            "fixed_fees_ghs": int(est.fixed_fees.ghs),
            "post_total_ghs": int(est.post_total_cost.ghs),
            "total_ghs": int(est.total.ghs),
            "rate_per_m2": est.rate_per_m2.format(),
            "area_m2": est.spec.total_area_m2,
        },
    }


def gap_to_dict(report: GapReport) -> dict:
    return {
        "schema": "gap/1",
        "estimate_total_ghs": int(report.estimate_total.ghs),
        "area_m2": report.area_m2,
        "informal_low_ghs": int(report.informal_low.ghs),
        "informal_high_ghs": int(report.informal_high.ghs),
        "gap_vs_low_pct": report.gap_vs_low_pct,
        "gap_vs_high_pct": report.gap_vs_high_pct,
        "gap_vs_low": f"{report.gap_vs_low:.6f}",
        "gap_vs_high": f"{report.gap_vs_high:.6f}",
        "omitted_lines": [
            {
                "item_id": line.item_id,
                "description": line.description,
                "cost_ghs": int(line.cost.ghs),
            }
            for line in report.omitted_lines
        ],
        "omitted_total_ghs": int(report.omitted_total.ghs),
    }


def render_csv(est: Estimate) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for line in est.lines:
        writer.writerow(
            (
                line.category,
                line.description.strip(),
                _qty_text(line.quantity),
                line.unit,
                line.unit_price.format() if line.unit_price else "",
                line.cost.format() if line.cost else "",
                "true" if line.omitted_in_informal else "false",
            )
        )
    return buffer.getvalue()


def _money_cell(value: Money | None) -> str:
    return value.format(grouped=True) if value is not None else ""


def render_markdown(est: Estimate) -> str:
    out: list[str] = []
    out.append(f"# Estimate: {est.spec.total_area_m2:g} m2, {est.spec.storeys} storey(s)")
    out.append("")
    out.append(f"Region: {est.region.value} | Mode: {est.mode} | Pricebook: {est.pricebook_version}")
    out.append("")
    for cat in CATEGORY_ORDER:
        rows = [line for line in est.lines if line.category == cat]
        if not rows:
            continue
        out.append(f"## {CATEGORY_TITLES[cat]}")
        out.append("")
        out.append("| Item | Qty | Unit | Unit price (GHS) | Cost (GHS) |")
        out.append("| --- | ---: | --- | ---: | ---: |")
        for line in rows:
            marker = " *" if line.omitted_in_informal else ""
            note = " (info)" if line.informational else ""
            out.append(
                "| {item}{marker}{note} | {qty} | {unit} | {price} | {cost} |".format(
                    item=line.description.strip(),
                    marker=marker,
                    note=note,
                    qty=_qty_text(line.quantity),
                    unit=line.unit,
                    price=_money_cell(line.unit_price),
                    cost=_money_cell(line.cost),
                )
            )
        out.append("")
    out.append("## Summary")
    out.append("")
    out.append("| | GHS |")
    out.append("| --- | ---: |")
    out.append(f"| Variable subtotal | {est.variable_subtotal.format(grouped=True)} |")
    out.append(f"| Contingency (15%) | {est.contingency.format(grouped=True)} |")
    out.append(f"| Fixed fees | {est.fixed_fees.format(grouped=True)} |")
    if est.post_total_cost:
        out.append(f"| Optional extras | {est.post_total_cost.format(grouped=True)} |")
    out.append(f"| **Total** | **{est.total.format(grouped=True)}** |")
    out.append(f"| Rate per m2 | {est.rate_per_m2.format(grouped=True)} |")
    out.append("")
    out.append("Lines marked * are typically omitted from informal flat-rate quotes.")
    out.append("")
    return "\n".join(out)


def export_boq(est: Estimate, fmt: str) -> str:
    if fmt == "csv":
        return render_csv(est)
    if fmt == "structured":
        return json.dumps(estimate_to_dict(est), indent=2, sort_keys=False) + "\n"
    if fmt in ("markdown", "markdown-table"):
        return render_markdown(est)
    raise UnknownFormat(fmt)
