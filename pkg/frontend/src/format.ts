/** Display formatting. Strictly string-shaping: these helpers regroup
 * digits the service already produced and never compute a new value.
 */

/** 1234567 or "1234567.89" -> "1,234,567" / "1,234,567.89". */
export function groupDigits(value: number | string): string {
  const text = String(value);
  const neg = text.startsWith("-");
  const bare = neg ? text.slice(1) : text;
  const [whole, frac] = bare.split(".");
  const grouped = (whole ?? "").replace(/\B(?=(\d{3})+(?!\d))/g, ",");
  const out = frac === undefined ? grouped : `${grouped}.${frac}`;
  return neg ? `-${out}` : out;
}

/** Whole-GHS cell text; null means the service sent no figure. */
export function money(value: number | null | undefined): string {
  if (value === null || value === undefined) return "";
  return groupDigits(value);
}

/** Signed percent badge from a service-computed integer. */
export function signedPct(pct: number): string {
  return pct >= 0 ? `+${pct}%` : `${pct}%`;
}

/** Quantity cell: the service number verbatim, blank when absent. */
export function quantity(value: number | null): string {
  return value === null ? "" : String(value);
}
