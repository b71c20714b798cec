/** Pure mapping from service documents to display rows.
 *
 * Everything here is selection, ordering and string shaping. Where the
 * estimate falls against the informal band is decided by comparing the
 * service's own gap percentages; no figure is computed on this side.
 */

import { groupDigits, money, quantity, signedPct } from "./format";
import type { Scenario } from "./state";
import type { EstimateDoc, GapDoc, LineDoc } from "./types";

export interface LineView {
  itemId: string;
  description: string;
  category: string;
  quantityText: string;
  unit: string;
  unitPriceText: string;
  costText: string;
  omitted: boolean;
  informational: boolean;
  postTotal: boolean;
}

export interface EstimateView {
  totalText: string;
  rateText: string;
  areaText: string;
  variableText: string;
  contingencyText: string;
  feesText: string;
  postTotalText: string;
  region: string;
  pricebookVersion: string;
  categories: { category: string; subtotalText: string }[];
  lines: LineView[];
}

function lineView(line: LineDoc): LineView {
  return {
    itemId: line.item_id,
    description: line.description,
    category: line.category,
    quantityText: quantity(line.quantity),
    unit: line.unit,
    unitPriceText: line.unit_price === null ? "" : groupDigits(line.unit_price),
    costText: money(line.cost_ghs),
    omitted: line.omitted_in_informal,
    informational: line.informational,
    postTotal: line.post_total,
  };
}

export function estimateView(doc: EstimateDoc): EstimateView {
  return {
    totalText: money(doc.summary.total_ghs),
    rateText: groupDigits(doc.summary.rate_per_m2),
    areaText: String(doc.summary.area_m2),
    variableText: money(doc.summary.variable_subtotal_ghs),
    contingencyText: money(doc.summary.contingency_ghs),
    feesText: money(doc.summary.fixed_fees_ghs),
    postTotalText: money(doc.summary.post_total_ghs),
    region: doc.region,
    pricebookVersion: doc.pricebook_version,
    categories: Object.entries(doc.category_subtotals_ghs).map(
      ([category, subtotal]) => ({ category, subtotalText: money(subtotal) }),
    ),
    lines: doc.lines.map(lineView),
  };
}

export type BandPosition = "below band" | "within band" | "above band";

/** Placement relative to the informal band, read off the service's
 * signed percentages rather than recomputed from the totals.
 */
export function bandPosition(gap: GapDoc): BandPosition {
  if (gap.gap_vs_low_pct < 0) return "below band";
  if (gap.gap_vs_high_pct > 0) return "above band";
  return "within band";
}

export interface GapView {
  bandText: string;
  totalText: string;
  position: BandPosition;
  vsLowBadge: string;
  vsHighBadge: string;
  omitted: { itemId: string; description: string; costText: string }[];
  omittedTotalText: string;
}

export function gapView(gap: GapDoc): GapView {
  return {
    bandText: `GHS ${money(gap.informal_low_ghs)} to ${money(gap.informal_high_ghs)}`,
    totalText: money(gap.estimate_total_ghs),
    position: bandPosition(gap),
    vsLowBadge: signedPct(gap.gap_vs_low_pct),
    vsHighBadge: signedPct(gap.gap_vs_high_pct),
    // Already ranked by the service, largest omission first.
    omitted: gap.omitted_lines.map((line) => ({
      itemId: line.item_id,
      description: line.description,
      costText: money(line.cost_ghs),
    })),
    omittedTotalText: money(gap.omitted_total_ghs),
  };
}

export interface CompareRow {
  label: string;
  cells: string[];
  /* Highlight cue: true only when at least two columns disagree. */
  differs: boolean;
}

export interface CompareView {
  labels: string[];
  rows: CompareRow[];
}

function row(label: string, cells: string[]): CompareRow {
  const first = cells[0];
  const differs = cells.length > 1 && cells.some((cell) => cell !== first);
  return { label, cells, differs };
}

export function compareView(scenarios: readonly Scenario[]): CompareView {
  const labels = scenarios.map((s) => s.label);
  if (scenarios.length === 0) return { labels, rows: [] };

  const categories: string[] = [];
  for (const s of scenarios) {
    for (const category of Object.keys(s.result.estimate.category_subtotals_ghs)) {
      if (!categories.includes(category)) categories.push(category);
    }
  }

  const rows: CompareRow[] = [
    row("Total (GHS)", scenarios.map((s) => money(s.result.estimate.summary.total_ghs))),
    row("Rate per m2 (GHS)", scenarios.map((s) => groupDigits(s.result.estimate.summary.rate_per_m2))),
  ];
  for (const category of categories) {
    rows.push(
      row(category, scenarios.map((s) => {
        const subtotal = s.result.estimate.category_subtotals_ghs[category];
        return subtotal === undefined ? "" : money(subtotal);
      })),
    );
  }
  rows.push(row("Informal band (GHS)", scenarios.map((s) => {
    const gap = s.result.gap;
    return `${money(gap.informal_low_ghs)} to ${money(gap.informal_high_ghs)}`;
  })));
  rows.push(row("Vs informal low", scenarios.map((s) => signedPct(s.result.gap.gap_vs_low_pct))));
  rows.push(row("Vs informal high", scenarios.map((s) => signedPct(s.result.gap.gap_vs_high_pct))));
  rows.push(row("Band position", scenarios.map((s) => bandPosition(s.result.gap))));
  return { labels, rows };
}
