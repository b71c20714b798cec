import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { WhatIfSession } from "../src/state";
import type { EstimateRequest, GapResponse, SpecDoc } from "../src/types";
import { compareView, estimateView } from "../src/viewmodel";
import { fakeFetch, loadFixture } from "./helpers";

const BASE = "http://svc.test";

/** Serves the published cases plus the gap responses captured for them. */
function caseService() {
  return fakeFetch((call) => {
    if (call.method === "GET") {
      const id = call.url.slice(call.url.lastIndexOf("/") + 1).toLowerCase();
      return { status: 200, body: loadFixture(`case_${id}`) };
    }
    const request = call.body as EstimateRequest;
    const byArea: Record<number, string> = { 75: "gap_a", 120: "gap_b", 200: "gap_c" };
    const name = byArea[request.spec.total_area_m2];
    if (!name) throw new Error(`no fixture for area ${request.spec.total_area_m2}`);
    return { status: 200, body: loadFixture(name) };
  });
}

describe("worked-case pins", () => {
  it("reproduces the published totals and rate column side by side", async () => {
    const session = new WhatIfSession(
      new ApiClient(BASE, caseService()),
      { total_area_m2: 75, storeys: 1, bedrooms: 2, bathrooms: 1 },
    );

    for (const id of ["A", "B", "C"] as const) {
      await session.loadCase(id);
      await session.refresh();
      session.pin(`Case ${id}`);
    }

    const view = compareView(session.pinned());
    expect(view.labels).toEqual(["Case A", "Case B", "Case C"]);

    const byLabel = new Map(view.rows.map((r) => [r.label, r]));
    expect(byLabel.get("Total (GHS)")!.cells).toEqual([
      "523,585", "786,634", "1,286,866",
    ]);
    expect(byLabel.get("Rate per m2 (GHS)")!.cells).toEqual([
      "6,981.13", "6,555.28", "6,434.33",
    ]);
    // All three worked examples price above the informal band.
    expect(byLabel.get("Band position")!.cells).toEqual([
      "above band", "above band", "above band",
    ]);
    expect(byLabel.get("Vs informal low")!.cells).toEqual(["+99%", "+87%", "+84%"]);
  });
});

describe("storeys what-if at fixed floor area", () => {
  const spec120: SpecDoc = {
    total_area_m2: 120,
    storeys: 1,
    bedrooms: 3,
    bathrooms: 2,
    style: "modern",
    finish: "standard",
    features: [
      { feature: "septic" },
      { feature: "hvac" },
      { feature: "tiles", grade: "standard" },
      { feature: "paint", grade: "standard" },
    ],
  };

  function storeyService() {
    return fakeFetch((call) => {
      const request = call.body as EstimateRequest;
      const name = request.spec.storeys === 2 ? "gap_120_two_storey" : "gap_120_one_storey";
      return { status: 200, body: loadFixture(name) };
    });
  }

  it("shows the trade-off: smaller footprint, new frame and stair rows", async () => {
    const session = new WhatIfSession(new ApiClient(BASE, storeyService()), spec120);

    await session.refresh();
    const oneStorey = session.pin("One storey");
    session.setSpec({ storeys: 2 });
    await session.refresh();
    const twoStoreys = session.pin("Two storeys");

    // Pinned snapshots keep the inputs they were made with.
    expect(oneStorey.result.request.spec.storeys).toBe(1);
    expect(twoStoreys.result.request.spec.storeys).toBe(2);

    const one = estimateView(oneStorey.result.estimate);
    const two = estimateView(twoStoreys.result.estimate);
    const line = (v: typeof one, id: string) => v.lines.find((l) => l.itemId === id);

    // Footprint halves, so foundation work shrinks.
    expect(line(one, "cement_foundation")!.quantityText).toBe("480");
    expect(line(two, "cement_foundation")!.quantityText).toBe("240");
    // Frame and stair items only exist once there is an upper floor.
    expect(line(one, "rebar_y20")).toBeUndefined();
    expect(line(two, "rebar_y20")!.costText).toBe("8,700");
    expect(line(one, "staircase")).toBeUndefined();
    expect(line(two, "staircase")!.costText).toBe("8,000");
    // Risers and lifting push the services bill up.
    expect(line(one, "plumbing")!.costText).toBe("41,500");
    expect(line(two, "plumbing")!.costText).toBe("51,875");
  });

  it("highlights exactly the comparison rows that moved", async () => {
    const session = new WhatIfSession(new ApiClient(BASE, storeyService()), spec120);

    await session.refresh();
    session.pin("One storey");
    session.setSpec({ storeys: 2 });
    await session.refresh();
    session.pin("Two storeys");

    const view = compareView(session.pinned());
    const byLabel = new Map(view.rows.map((r) => [r.label, r]));

    expect(byLabel.get("Total (GHS)")!.cells).toEqual(["746,910", "790,787"]);
    expect(byLabel.get("Total (GHS)")!.differs).toBe(true);
    expect(byLabel.get("staircase")!.cells).toEqual(["", "8,000"]);
    expect(byLabel.get("staircase")!.differs).toBe(true);
    expect(byLabel.get("fees")!.cells).toEqual(["12,500", "14,700"]);
    expect(byLabel.get("fees")!.differs).toBe(true);

    // Same floor area: the informal band and the septic/AC package hold still.
    expect(byLabel.get("Informal band (GHS)")!.cells).toEqual([
      "420,000 to 600,000", "420,000 to 600,000",
    ]);
    expect(byLabel.get("Informal band (GHS)")!.differs).toBe(false);
    expect(byLabel.get("hvac_septic")!.cells).toEqual(["49,600", "49,600"]);
    expect(byLabel.get("hvac_septic")!.differs).toBe(false);
  });
});
