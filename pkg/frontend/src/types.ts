/** Wire types for the estimation service, mirrored from its JSON documents.
 *
 * Money figures arrive as integers (whole GHS) or pre-formatted strings.
 * They stay that way on this side: the client renders what the service
 * computed and never derives a money figure of its own.
 */

export interface FeatureDoc {
  feature: string;
  grade?: string;
  perimeter_m?: number;
  ceiling_type?: string;
  post_total?: boolean;
}

export interface SpecDoc {
  total_area_m2: number;
  storeys: number;
  bedrooms: number;
  bathrooms: number;
  style?: string;
  finish?: string;
  region?: string;
  features?: FeatureDoc[];
}

export interface FlagsDoc {
  w_cut?: number;
  price_roof_accessories?: boolean;
  include_utility_fee?: boolean;
  pin_cement_total_bags?: number | null;
  pin_sand_trips?: number | null;
  pin_paint_cost?: number | null;
  pin_fan_count?: number | null;
}

export interface LayoutDoc {
  scale: number;
  walls: { a: number; b: number }[];
  windows?: { w_m: number; h_m: number }[];
  doors?: { x?: number; y?: number }[];
  rooms?: { kind: string; area_m2: number }[];
}

export interface EstimateRequest {
  spec: SpecDoc;
  layout?: LayoutDoc;
  region?: string;
  flags?: FlagsDoc;
  overrides?: Record<string, number | string>;
}

export interface LineDoc {
  item_id: string;
  description: string;
  category: string;
  quantity: number | null;
  unit: string;
  unit_price: string | null;
  cost_ghs: number | null;
  omitted_in_informal: boolean;
  informational: boolean;
  post_total: boolean;
}

export interface EstimateSummaryDoc {
  variable_subtotal_ghs: number;
  contingency_ghs: number;
  fixed_fees_ghs: number;
  post_total_ghs: number;
  total_ghs: number;
  rate_per_m2: string;
  area_m2: number;
}

export interface EstimateDoc {
  schema: string;
  engine_version: string;
  pricebook_version: string;
  mode: string;
  region: string;
  spec: SpecDoc;
  flags: FlagsDoc;
  lines: LineDoc[];
  category_subtotals_ghs: Record<string, number>;
  summary: EstimateSummaryDoc;
}

export interface OmittedLineDoc {
  item_id: string;
  description: string;
  cost_ghs: number;
}

export interface GapDoc {
  schema: string;
  estimate_total_ghs: number;
  area_m2: number;
  informal_low_ghs: number;
  informal_high_ghs: number;
  gap_vs_low_pct: number;
  gap_vs_high_pct: number;
  gap_vs_low: string;
  gap_vs_high: string;
  omitted_lines: OmittedLineDoc[];
  omitted_total_ghs: number;
}

export interface EstimateResponse {
  engine_version: string;
  pricebook_version: string;
  estimate: EstimateDoc;
}

export interface GapResponse extends EstimateResponse {
  gap: GapDoc;
}

export interface RegionDoc {
  id: string;
  manufactured_factor: string;
  local_factor: string;
}

export interface PricebookDoc {
  version: string;
  labour_rate_per_m2: string;
  defaults: Record<string, string>;
  overrides: Record<string, string>;
  features: Record<string, string>;
  informal_band: { low_per_m2: string; high_per_m2: string };
  gap_omitted_items: string[];
}

export interface CaseDoc {
  case_id: string;
  title: string;
  request: { spec: SpecDoc; region: string; flags: FlagsDoc };
  optional_extras: FeatureDoc[];
  expected: unknown[];
}

export interface ErrorBody {
  error: {
    type: string;
    message: string;
    field?: string;
    current_version?: string;
  };
}
