import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { WhatIfSession } from "../src/state";
import type { GapResponse, SpecDoc } from "../src/types";
import { deferred, fakeFetch, loadFixture } from "./helpers";
import type { StubReply } from "./helpers";

const BASE = "http://svc.test";

const SPEC: SpecDoc = {
  total_area_m2: 75,
  storeys: 1,
  bedrooms: 2,
  bathrooms: 1,
  style: "modern",
  finish: "standard",
  features: [{ feature: "septic" }, { feature: "hvac" }],
};

function sessionWith(handler: Parameters<typeof fakeFetch>[0]) {
  const fetchFn = fakeFetch(handler);
  const session = new WhatIfSession(new ApiClient(BASE, fetchFn), SPEC);
  return { session, fetchFn };
}

describe("request building", () => {
  it("copies inputs so callers cannot reach back into the session", () => {
    const { session } = sessionWith(() => ({ status: 200, body: {} }));
    const request = session.buildRequest();

    request.spec.total_area_m2 = 999;
    request.spec.features!.push({ feature: "solar" });

    expect(session.spec.total_area_m2).toBe(75);
    expect(session.spec.features).toHaveLength(2);
  });

  it("only carries region, flags and overrides once they are set", () => {
    const { session } = sessionWith(() => ({ status: 200, body: {} }));
    expect(session.buildRequest()).toEqual({ spec: SPEC });

    session.setRegion("northern");
    session.setFlags({ include_utility_fee: true });
    session.setOverride("cement_bag_50kg", "105");

    const request = session.buildRequest();
    expect(request.region).toBe("northern");
    expect(request.flags).toEqual({ include_utility_fee: true });
    expect(request.overrides).toEqual({ cement_bag_50kg: "105" });

    session.clearOverride("cement_bag_50kg");
    expect(session.buildRequest().overrides).toBeUndefined();
  });
});

describe("refresh", () => {
  it("commits the response together with the request that caused it", async () => {
    const body = loadFixture<GapResponse>("gap_a");
    const { session } = sessionWith(() => ({ status: 200, body }));

    const result = await session.refresh();

    expect(session.status).toBe("ready");
    expect(result!.estimate.summary.total_ghs).toBe(523585);
    expect(result!.gap.gap_vs_low_pct).toBe(99);
    expect(result!.request.spec.total_area_m2).toBe(75);
    expect(result!.pricebookVersion).toBe(body.pricebook_version);
  });

  it("drops a stale response that lands after a newer one", async () => {
    const stale = deferred<StubReply>();
    const fresh = deferred<StubReply>();
    const replies = [stale.promise, fresh.promise];
    const { session } = sessionWith(() => replies.shift()!);

    const oldRefresh = session.refresh();
    session.setSpec({ total_area_m2: 120, bedrooms: 3, bathrooms: 2 });
    const newRefresh = session.refresh();

    fresh.resolve({ status: 200, body: loadFixture<GapResponse>("gap_b") });
    await newRefresh;
    expect(session.result!.estimate.summary.total_ghs).toBe(786634);

    // The out-of-order arrival for the old inputs must change nothing.
    stale.resolve({ status: 200, body: loadFixture<GapResponse>("gap_a") });
    await oldRefresh;

    expect(session.result!.estimate.summary.total_ghs).toBe(786634);
    expect(session.result!.request.spec.total_area_m2).toBe(120);
    expect(session.status).toBe("ready");
  });

  it("keeps inputs and the last good figures when the service is down", async () => {
    let up = true;
    const body = loadFixture<GapResponse>("gap_a");
    const { session } = sessionWith(() => {
      if (!up) throw new TypeError("connect ECONNREFUSED");
      return { status: 200, body };
    });

    await session.refresh();
    up = false;
    session.setSpec({ total_area_m2: 200 });
    await session.refresh();

    expect(session.status).toBe("unreachable");
    expect(session.lastError).toContain("unreachable");
    expect(session.spec.total_area_m2).toBe(200);
    expect(session.result!.estimate.summary.total_ghs).toBe(523585);
    expect(session.result!.request.spec.total_area_m2).toBe(75);
  });

  it("surfaces a rejection with the offending field", async () => {
    const { session } = sessionWith(() => ({
      status: 400,
      body: {
        error: { type: "ValidationError", message: "must be positive", field: "spec.total_area_m2" },
      },
    }));

    await session.refresh();

    expect(session.status).toBe("rejected");
    expect(session.lastError).toBe("must be positive (spec.total_area_m2)");
    expect(session.result).toBeNull();
  });

  it("ignores a failure from a request that was already superseded", async () => {
    const failing = deferred<StubReply>();
    const fine = deferred<StubReply>();
    const replies = [failing.promise, fine.promise];
    const { session } = sessionWith(() => replies.shift()!);

    const oldRefresh = session.refresh();
    const newRefresh = session.refresh();

    fine.resolve({ status: 200, body: loadFixture<GapResponse>("gap_a") });
    await newRefresh;
    failing.reject(new TypeError("cable pulled"));
    await oldRefresh;

    expect(session.status).toBe("ready");
    expect(session.lastError).toBeNull();
  });
});

describe("pinned scenarios", () => {
  it("pins an immutable snapshot of inputs plus figures", async () => {
    const bodies = [loadFixture<GapResponse>("gap_a"), loadFixture<GapResponse>("gap_b")];
    let i = 0;
    const { session } = sessionWith(() => ({ status: 200, body: bodies[i++]! }));

    await session.refresh();
    const pinnedScenario = session.pin("Case A");

    session.setSpec({ total_area_m2: 120 });
    await session.refresh();

    expect(session.result!.estimate.summary.total_ghs).toBe(786634);
    expect(pinnedScenario.result.estimate.summary.total_ghs).toBe(523585);
    expect(pinnedScenario.result.request.spec.total_area_m2).toBe(75);
    expect(session.pinned().map((s) => s.label)).toEqual(["Case A"]);
  });

  it("refuses to pin before any estimate arrived", () => {
    const { session } = sessionWith(() => ({ status: 200, body: {} }));
    expect(() => session.pin("empty")).toThrow(/nothing to pin/);
  });

  it("unpin removes a column", async () => {
    const body = loadFixture<GapResponse>("gap_a");
    const { session } = sessionWith(() => ({ status: 200, body }));
    await session.refresh();
    session.pin("one");
    session.pin("two");

    session.unpin("one");

    expect(session.pinned().map((s) => s.label)).toEqual(["two"]);
  });
});

describe("pricebook overlay", () => {
  it("rides along with requests but never writes to the store by itself", async () => {
    const body = loadFixture<GapResponse>("gap_a");
    const { session, fetchFn } = sessionWith(() => ({ status: 200, body }));

    session.setOverride("cement_bag_50kg", "105");
    await session.refresh();
    await session.refresh();

    expect(fetchFn.calls).toHaveLength(2);
    for (const call of fetchFn.calls) {
      expect(call.method).toBe("POST");
      expect((call.body as { overrides: unknown }).overrides).toEqual({
        cement_bag_50kg: "105",
      });
    }
  });

  it("writes the store only on an explicit save, then drops the overlay", async () => {
    const gapBody = loadFixture<GapResponse>("gap_a");
    const { session, fetchFn } = sessionWith((call) =>
      call.method === "PUT"
        ? { status: 200, body: { pricebook_version: "4", overrides: { sand_trip: "1400" } } }
        : { status: 200, body: gapBody },
    );

    session.setOverride("sand_trip", "1400");
    const version = await session.saveOverrides("3");

    expect(version).toBe("4");
    expect(session.overrides).toEqual({});
    const put = fetchFn.calls.find((c) => c.method === "PUT")!;
    expect(put.url).toBe(`${BASE}/v1/pricebook/overrides`);
    expect(put.body).toEqual({
      overrides: { sand_trip: "1400" },
      expected_version: "3",
    });

    expect(session.buildRequest().overrides).toBeUndefined();
  });
});

describe("worked cases", () => {
  it("loads a published case into the editor", async () => {
    const body = loadFixture<unknown>("case_a");
    const { session } = sessionWith(() => ({ status: 200, body }));

    await session.loadCase("A");

    expect(session.spec.total_area_m2).toBe(75);
    expect(session.spec.bedrooms).toBe(2);
    expect(session.spec.features).toHaveLength(4);
    expect(session.region).toBe("greater_accra");
    expect(session.flags.pin_cement_total_bags).toBe(847);
    expect(session.flags.include_utility_fee).toBe(false);
  });
});
