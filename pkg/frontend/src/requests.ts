/** Request sequencing for the live what-if loop.
 *
 * Every outbound request takes a monotonically increasing version; a
 * response is only allowed to land if no newer request has started
 * since. Responses arriving out of order are dropped, so the display
 * can never mix one input's totals with another's.
 */

export class RequestGate {
  private version = 0;

  /** Tag a new outbound request; supersedes everything before it. */
  next(): number {
    this.version += 1;
    return this.version;
  }

  /** May a response tagged `version` still be displayed? */
  isCurrent(version: number): boolean {
    return version === this.version;
  }
}

export type Cancel = () => void;

/** Trailing-edge debounce; fires once the input has settled. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
  timers: {
    set: (cb: () => void, ms: number) => ReturnType<typeof setTimeout>;
    clear: (handle: ReturnType<typeof setTimeout>) => void;
  } = { set: setTimeout, clear: clearTimeout },
): ((...args: A) => void) & { cancel: Cancel } {
  let handle: ReturnType<typeof setTimeout> | undefined;
  const debounced = (...args: A) => {
    if (handle !== undefined) timers.clear(handle);
    handle = timers.set(() => {
      handle = undefined;
      fn(...args);
    }, waitMs);
  };
  debounced.cancel = () => {
    if (handle !== undefined) timers.clear(handle);
    handle = undefined;
  };
  return debounced;
}
