/** HTML renderers. Plain template strings over the view models so the
 * output can be asserted in tests without a DOM; main.ts swaps the
 * resulting markup into the page.
 */

import type { SessionStatus } from "./state";
import type { RegionDoc, SpecDoc } from "./types";
import type { CompareView, EstimateView, GapView } from "./viewmodel";

/** The slice of session state the page needs; the session satisfies it. */
export interface AppState {
  status: SessionStatus;
  lastError: string | null;
  spec: SpecDoc;
  region: string | undefined;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const STYLES = [
  "traditional", "modern", "luxury", "open_concept", "loft_studio",
  "townhouse", "mediterranean", "farmhouse", "tiny_home", "cottage",
  "barndominium", "craftsman",
];
const FINISHES = ["basic", "standard", "luxury"];
const FEATURES = [
  "septic", "hvac", "tiles", "paint", "compound_wall", "solar",
  "kitchen", "security", "ceiling", "external_works", "smart_home",
];

function numberField(name: string, label: string, value: number, step: string, min: string): string {
  return `<label class="field">${escapeHtml(label)}
    <input type="number" data-field="${name}" value="${value}" step="${step}" min="${min}">
  </label>`;
}

function selectField(name: string, label: string, options: string[], value: string): string {
  const opts = options
    .map((opt) => `<option value="${opt}"${opt === value ? " selected" : ""}>${escapeHtml(opt)}</option>`)
    .join("");
  return `<label class="field">${escapeHtml(label)}
    <select data-field="${name}">${opts}</select>
  </label>`;
}

/** Input panel reflecting the current spec. Values render from state on
 * every pass, so a failed request never loses what was typed.
 */
export function renderEditor(spec: SpecDoc, region: string | undefined, regions: RegionDoc[]): string {
  const selected = new Set((spec.features ?? []).map((f) => f.feature));
  const featureBoxes = FEATURES.map(
    (name) => `<label class="feature">
      <input type="checkbox" data-feature="${name}"${selected.has(name) ? " checked" : ""}> ${name}
    </label>`,
  ).join("");
  const regionIds = regions.map((r) => r.id);
  return `<form class="editor" data-role="editor">
  ${numberField("total_area_m2", "Floor area (m2)", spec.total_area_m2, "5", "10")}
  ${numberField("bedrooms", "Bedrooms", spec.bedrooms, "1", "1")}
  ${numberField("bathrooms", "Bathrooms", spec.bathrooms, "1", "1")}
  ${numberField("storeys", "Storeys", spec.storeys, "1", "1")}
  ${selectField("style", "Style", STYLES, spec.style ?? "modern")}
  ${selectField("finish", "Finish", FINISHES, spec.finish ?? "standard")}
  ${selectField("region", "Region", regionIds, region ?? "greater_accra")}
  <fieldset class="features"><legend>Features</legend>${featureBoxes}</fieldset>
</form>`;
}

export function renderBanner(status: SessionStatus, message: string | null): string {
  if (status === "unreachable") {
    return `<div class="banner banner-error" data-role="banner">
  Estimation service unreachable. Inputs kept; figures below are the last ones received.
</div>`;
  }
  if (status === "rejected") {
    return `<div class="banner banner-warn" data-role="banner">
  Request rejected: ${escapeHtml(message ?? "invalid input")}
</div>`;
  }
  if (status === "loading") {
    return `<div class="banner banner-info" data-role="banner">Estimating...</div>`;
  }
  return "";
}

export function renderEstimate(view: EstimateView): string {
  const rows = view.lines
    .map((line) => {
      const classes = [
        line.omitted ? "omitted" : "",
        line.informational ? "informational" : "",
        line.postTotal ? "post-total" : "",
      ]
        .filter(Boolean)
        .join(" ");
      return `<tr${classes ? ` class="${classes}"` : ""}>
    <td>${escapeHtml(line.description)}${line.omitted ? " *" : ""}</td>
    <td class="num">${line.quantityText}</td>
    <td>${escapeHtml(line.unit)}</td>
    <td class="num">${line.unitPriceText}</td>
    <td class="num">${line.costText}</td>
  </tr>`;
    })
    .join("\n");
  const cats = view.categories
    .map((c) => `<tr><td>${escapeHtml(c.category)}</td><td class="num">${c.subtotalText}</td></tr>`)
    .join("\n");
  return `<section class="estimate" data-role="estimate" data-pricebook-version="${escapeHtml(view.pricebookVersion)}">
<table class="lines">
  <thead><tr><th>Item</th><th>Qty</th><th>Unit</th><th>Unit price (GHS)</th><th>Cost (GHS)</th></tr></thead>
  <tbody>
${rows}
  </tbody>
</table>
<table class="categories"><tbody>
${cats}
</tbody></table>
<dl class="summary">
  <dt>Variable works</dt><dd>${view.variableText}</dd>
  <dt>Contingency</dt><dd>${view.contingencyText}</dd>
  <dt>Fixed fees</dt><dd>${view.feesText}</dd>
  <dt>Total</dt><dd class="total">${view.totalText}</dd>
  <dt>Rate per m2</dt><dd class="rate">${view.rateText}</dd>
</dl>
<p class="footnote">Lines marked * are typically omitted from informal flat-rate quotes.
Priced with pricebook v${escapeHtml(view.pricebookVersion)}.</p>
</section>`;
}

export function renderGap(view: GapView): string {
  const omitted = view.omitted
    .map((o) => `<li>${escapeHtml(o.description)}: ${o.costText}</li>`)
    .join("\n");
  return `<section class="gap" data-role="gap">
<p class="band">Informal quotes for this floor area: <strong>${view.bandText}</strong></p>
<p class="marker" data-position="${view.position}">This estimate: <strong>${view.totalText}</strong> (${view.position})</p>
<p class="badges">
  <span class="badge">${view.vsLowBadge} vs low</span>
  <span class="badge">${view.vsHighBadge} vs high</span>
</p>
<h3>What the flat rate leaves out</h3>
<ol class="omitted">
${omitted}
</ol>
<p class="omitted-total">Omitted together: ${view.omittedTotalText}</p>
</section>`;
}

export function renderCompare(view: CompareView): string {
  if (view.labels.length === 0) {
    return `<section class="compare" data-role="compare"><p>Pin a scenario to compare.</p></section>`;
  }
  const head = view.labels.map((label) => `<th>${escapeHtml(label)}</th>`).join("");
  const rows = view.rows
    .map((r) => {
      const cells = r.cells.map((cell) => `<td class="num">${escapeHtml(cell)}</td>`).join("");
      return `<tr${r.differs ? ` class="diff"` : ""}><th>${escapeHtml(r.label)}</th>${cells}</tr>`;
    })
    .join("\n");
  return `<section class="compare" data-role="compare">
<table>
  <thead><tr><th></th>${head}</tr></thead>
  <tbody>
${rows}
  </tbody>
</table>
</section>`;
}

/** One-shot page assembly used by the browser entry point. */
export function renderApp(
  state: AppState,
  regions: RegionDoc[],
  estimate: EstimateView | null,
  gap: GapView | null,
  compare: CompareView,
): string {
  return [
    renderBanner(state.status, state.lastError),
    renderEditor(state.spec, state.region, regions),
    estimate ? renderEstimate(estimate) : "",
    gap ? renderGap(gap) : "",
    renderCompare(compare),
  ]
    .filter(Boolean)
    .join("\n");
}
