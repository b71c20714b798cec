import { describe, expect, it } from "vitest";

import { groupDigits, money, quantity, signedPct } from "../src/format";
import type { Scenario } from "../src/state";
import type { EstimateDoc, GapDoc, GapResponse } from "../src/types";
import { renderEstimate, renderGap } from "../src/ui";
import { bandPosition, compareView, estimateView, gapView } from "../src/viewmodel";
import { loadFixture } from "./helpers";

describe("formatting", () => {
  it("groups digits without changing them", () => {
    expect(groupDigits(523585)).toBe("523,585");
    expect(groupDigits(1234567)).toBe("1,234,567");
    expect(groupDigits(999)).toBe("999");
    expect(groupDigits(-1234)).toBe("-1,234");
    expect(groupDigits("6981.13")).toBe("6,981.13");
    expect(groupDigits("0.994610")).toBe("0.994610");
  });

  it("renders empty cells for figures the service did not send", () => {
    expect(money(null)).toBe("");
    expect(money(0)).toBe("0");
    expect(quantity(null)).toBe("");
    expect(quantity(13.5)).toBe("13.5");
  });

  it("always signs the gap badge", () => {
    expect(signedPct(40)).toBe("+40%");
    expect(signedPct(0)).toBe("+0%");
    expect(signedPct(-12)).toBe("-12%");
  });
});

describe("estimate view", () => {
  const doc = loadFixture<GapResponse>("gap_a").estimate;

  it("shapes the summary strings from the service figures", () => {
    const view = estimateView(doc);
    expect(view.totalText).toBe("523,585");
    expect(view.rateText).toBe("6,981.13");
    expect(view.variableText).toBe("447,900");
    expect(view.contingencyText).toBe("67,185");
    expect(view.feesText).toBe("8,500");
    expect(view.areaText).toBe("75");
  });

  it("keeps category subtotals in service order", () => {
    const view = estimateView(doc);
    expect(view.categories.map((c) => c.category)).toEqual([
      "shell", "services", "hvac_septic", "finishes", "labour", "fees",
    ]);
    expect(view.categories[0]!.subtotalText).toBe("262,027");
    expect(view.categories[4]!.subtotalText).toBe("67,500");
  });

  it("carries every line through with its flags", () => {
    const view = estimateView(doc);
    const blocks = view.lines.find((l) => l.itemId === "blocks")!;
    expect(blocks.quantityText).toBe("1609");
    expect(blocks.unitPriceText).toBe("8.60");
    expect(blocks.costText).toBe("13,837");
    expect(blocks.omitted).toBe(false);

    const plumbing = view.lines.find((l) => l.itemId === "plumbing")!;
    expect(plumbing.omitted).toBe(true);
    expect(plumbing.quantityText).toBe("");
    expect(view.lines).toHaveLength(doc.lines.length);
  });
});

describe("gap view", () => {
  const gap = loadFixture<GapResponse>("gap_a").gap;

  it("shows the band, the marker and the signed badges", () => {
    const view = gapView(gap);
    expect(view.bandText).toBe("GHS 262,500 to 375,000");
    expect(view.totalText).toBe("523,585");
    expect(view.position).toBe("above band");
    expect(view.vsLowBadge).toBe("+99%");
    expect(view.vsHighBadge).toBe("+40%");
    expect(view.omittedTotalText).toBe("150,188");
  });

  it("keeps the omitted list in the service's ranking", () => {
    const view = gapView(gap);
    expect(view.omitted.slice(0, 3).map((o) => o.itemId)).toEqual([
      "rebar_y16", "plumbing", "electrical",
    ]);
    expect(view.omitted[0]!.costText).toBe("29,400");
    expect(view.omitted).toHaveLength(gap.omitted_lines.length);
  });

  it("places the total against the band using the service percentages", () => {
    const at = (low: number, high: number) =>
      bandPosition({ ...gap, gap_vs_low_pct: low, gap_vs_high_pct: high });
    expect(at(-10, -30)).toBe("below band");
    expect(at(0, -20)).toBe("within band");
    expect(at(15, 0)).toBe("within band");
    expect(at(15, 3)).toBe("above band");
  });
});

/* The intercept: feed documents whose figures are arithmetically
 * inconsistent on purpose. If any money figure were recomputed on this
 * side (line sum, qty x price, contingency, rate), the rendered output
 * would disagree with the feed. It must not.
 */
describe("no client-side money arithmetic", () => {
  const tamperedEstimate: EstimateDoc = {
    schema: "estimate/1",
    engine_version: "0.0",
    pricebook_version: "tampered",
    mode: "formula",
    region: "greater_accra",
    spec: { total_area_m2: 75, storeys: 1, bedrooms: 2, bathrooms: 1 },
    flags: {},
    lines: [
      {
        item_id: "blocks",
        description: "Blocks",
        category: "shell",
        quantity: 3,
        unit: "pcs",
        unit_price: "111.11", // 3 x 111.11 is NOT 777
        cost_ghs: 777,
        omitted_in_informal: false,
        informational: false,
        post_total: false,
      },
      {
        item_id: "labour",
        description: "Labour",
        category: "labour",
        quantity: null,
        unit: "sum",
        unit_price: null,
        cost_ghs: 888,
        omitted_in_informal: true,
        informational: false,
        post_total: false,
      },
    ],
    category_subtotals_ghs: { shell: 2222 }, // not the 777 line sum
    summary: {
      variable_subtotal_ghs: 4444, // not 777 + 888
      contingency_ghs: 5555, // not 15% of anything above
      fixed_fees_ghs: 6666,
      post_total_ghs: 0,
      total_ghs: 999999, // not 4444 + 5555 + 6666
      rate_per_m2: "123.45", // not 999999 / 75
      area_m2: 75,
    },
  };

  const tamperedGap: GapDoc = {
    schema: "gap/1",
    estimate_total_ghs: 999999,
    area_m2: 75,
    informal_low_ghs: 1111,
    informal_high_ghs: 3333,
    gap_vs_low_pct: 12, // nothing like (999999 - 1111) / 1111
    gap_vs_high_pct: 34,
    gap_vs_low: "0.12",
    gap_vs_high: "0.34",
    omitted_lines: [{ item_id: "labour", description: "Labour", cost_ghs: 777 }],
    omitted_total_ghs: 88, // not 777
  };

  it("displays the service's estimate figures verbatim, inconsistencies and all", () => {
    const view = estimateView(tamperedEstimate);
    expect(view.totalText).toBe("999,999");
    expect(view.rateText).toBe("123.45");
    expect(view.variableText).toBe("4,444");
    expect(view.contingencyText).toBe("5,555");
    expect(view.feesText).toBe("6,666");
    expect(view.categories).toEqual([{ category: "shell", subtotalText: "2,222" }]);
    expect(view.lines[0]!.costText).toBe("777");
    expect(view.lines[0]!.unitPriceText).toBe("111.11");
    expect(view.lines[1]!.costText).toBe("888");

    const html = renderEstimate(view);
    // None of the plausible recomputations may surface anywhere.
    for (const recomputed of ["333.33", "1,665", "1665", "16,665", "13,333", "13333"]) {
      expect(html).not.toContain(recomputed);
    }
    expect(html).toContain("999,999");
    expect(html).toContain("123.45");
  });

  it("displays the service's gap figures verbatim too", () => {
    const view = gapView(tamperedGap);
    expect(view.bandText).toBe("GHS 1,111 to 3,333");
    expect(view.totalText).toBe("999,999");
    expect(view.vsLowBadge).toBe("+12%");
    expect(view.vsHighBadge).toBe("+34%");
    expect(view.omitted[0]!.costText).toBe("777");
    expect(view.omittedTotalText).toBe("88");

    const html = renderGap(view);
    expect(html).toContain("+12% vs low");
    expect(html).toContain("+34% vs high");
    // 89890% would be the honest recomputation of the low gap.
    expect(html).not.toContain("89890");
  });

  it("comparison columns also pass figures straight through", () => {
    const scenario: Scenario = {
      label: "tampered",
      pinned: true,
      result: {
        request: { spec: tamperedEstimate.spec },
        estimate: tamperedEstimate,
        gap: tamperedGap,
        pricebookVersion: "tampered",
      },
    };
    const view = compareView([scenario, scenario]);
    const totals = view.rows.find((r) => r.label === "Total (GHS)")!;
    expect(totals.cells).toEqual(["999,999", "999,999"]);
    const rate = view.rows.find((r) => r.label === "Rate per m2 (GHS)")!;
    expect(rate.cells).toEqual(["123.45", "123.45"]);
  });
});

describe("comparison", () => {
  function scenarioFrom(name: string, label: string): Scenario {
    const body = loadFixture<GapResponse>(name);
    return {
      label,
      pinned: true,
      result: {
        request: { spec: body.estimate.spec },
        estimate: body.estimate,
        gap: body.gap,
        pricebookVersion: body.pricebook_version,
      },
    };
  }

  it("shows zero differences when a scenario is compared with itself", () => {
    const a = scenarioFrom("gap_a", "A");
    const again = scenarioFrom("gap_a", "A again");
    const view = compareView([a, again]);

    expect(view.rows.length).toBeGreaterThan(5);
    expect(view.rows.filter((r) => r.differs)).toEqual([]);
  });

  it("never highlights a single column", () => {
    const view = compareView([scenarioFrom("gap_b", "B")]);
    expect(view.labels).toEqual(["B"]);
    expect(view.rows.every((r) => r.differs === false)).toBe(true);
  });

  it("is empty without pins", () => {
    expect(compareView([])).toEqual({ labels: [], rows: [] });
  });

  it("flags exactly the rows whose figures differ", () => {
    const view = compareView([scenarioFrom("gap_a", "A"), scenarioFrom("gap_b", "B")]);
    const byLabel = new Map(view.rows.map((r) => [r.label, r]));

    expect(byLabel.get("Total (GHS)")!.differs).toBe(true);
    expect(byLabel.get("Total (GHS)")!.cells).toEqual(["523,585", "786,634"]);
    expect(byLabel.get("Rate per m2 (GHS)")!.differs).toBe(true);
    // Both worked examples sit above the informal band: no difference.
    expect(byLabel.get("Band position")!.cells).toEqual(["above band", "above band"]);
    expect(byLabel.get("Band position")!.differs).toBe(false);
  });
});
