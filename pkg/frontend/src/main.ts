/** Browser entry point. Everything interesting lives in the modules
 * this file wires together; here it is just DOM plumbing.
 */

import { ApiClient } from "./api";
import { debounce } from "./requests";
import { WhatIfSession } from "./state";
import { renderApp } from "./ui";
import type { FeatureDoc, RegionDoc, SpecDoc } from "./types";
import { compareView, estimateView, gapView } from "./viewmodel";

const DEFAULT_SPEC: SpecDoc = {
  total_area_m2: 75,
  storeys: 1,
  bedrooms: 2,
  bathrooms: 1,
  style: "modern",
  finish: "standard",
  features: [
    { feature: "septic" },
    { feature: "hvac" },
    { feature: "tiles", grade: "standard" },
    { feature: "paint", grade: "standard" },
  ],
};

function toggleFeature(spec: SpecDoc, name: string, on: boolean): FeatureDoc[] {
  const current = spec.features ?? [];
  if (on) {
    if (current.some((f) => f.feature === name)) return current;
    const added: FeatureDoc = { feature: name };
    if (name === "tiles" || name === "paint") added.grade = spec.finish ?? "standard";
    if (name === "compound_wall") added.perimeter_m = 60;
    return [...current, added];
  }
  return current.filter((f) => f.feature !== name);
}

export function start(root: HTMLElement, baseUrl: string): void {
  const api = new ApiClient(baseUrl, (url, init) => fetch(url, init));
  const session = new WhatIfSession(api, DEFAULT_SPEC);
  let regions: RegionDoc[] = [];

  const render = () => {
    const result = session.result;
    root.innerHTML = renderApp(
      session,
      regions,
      result ? estimateView(result.estimate) : null,
      result ? gapView(result.gap) : null,
      compareView(session.pinned()),
    );
  };

  const refresh = () => {
    render(); // show the loading banner straight away
    void session.refresh().then(render);
  };
  const scheduleRefresh = debounce(refresh, 250);

  // Delegated so listeners survive innerHTML swaps.
  root.addEventListener("input", (event) => {
    const el = event.target as HTMLInputElement | HTMLSelectElement;
    const field = el.dataset.field;
    const feature = el.dataset.feature;
    if (feature !== undefined) {
      session.setSpec({
        features: toggleFeature(session.spec, feature, (el as HTMLInputElement).checked),
      });
    } else if (field === "region") {
      session.setRegion(el.value);
    } else if (field === "style" || field === "finish") {
      session.setSpec({ [field]: el.value });
    } else if (field !== undefined) {
      const value = Number(el.value);
      if (Number.isFinite(value) && value > 0) session.setSpec({ [field]: value });
    } else {
      return;
    }
    scheduleRefresh();
  });

  const toolbar = document.createElement("div");
  toolbar.className = "toolbar";
  toolbar.innerHTML = `<button data-action="pin">Pin scenario</button>
<button data-action="case-a">Load case A</button>
<button data-action="case-b">Load case B</button>
<button data-action="case-c">Load case C</button>`;
  root.before(toolbar);
  toolbar.addEventListener("click", (event) => {
    const action = (event.target as HTMLElement).dataset.action;
    if (action === "pin" && session.result !== null) {
      session.pin(`Scenario ${session.pinned().length + 1}`);
      render();
    } else if (action?.startsWith("case-")) {
      void session
        .loadCase(action.slice("case-".length).toUpperCase())
        .then(refresh, () => render());
    }
  });

  void api
    .regions()
    .then((list) => {
      regions = list;
    })
    .catch(() => {
      regions = [];
    })
    .then(refresh);
}

declare const window: { document: Document; location: { origin: string } } | undefined;

if (typeof window !== "undefined" && window) {
  const root = window.document.getElementById("app");
  // data-api-base lets the page talk to a service on another origin.
  if (root) start(root, root.dataset.apiBase ?? window.location.origin);
}
