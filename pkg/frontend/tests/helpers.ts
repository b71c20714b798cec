import { readFileSync } from "node:fs";

import type { FetchLike, HttpResponse } from "../src/api";

/** Fresh parse per call so one test's mutations cannot leak into another. */
export function loadFixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf8")) as T;
}

export interface RecordedCall {
  url: string;
  method: string;
  headers?: Record<string, string>;
  body?: unknown;
}

export type StubReply = { status: number; body: unknown };

/** In-memory fetch double recording every call it serves. */
export function fakeFetch(
  handler: (call: RecordedCall) => StubReply | Promise<StubReply>,
): FetchLike & { calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fn = async (
    url: string,
    init?: { method?: string; headers?: Record<string, string>; body?: string },
  ): Promise<HttpResponse> => {
    const call: RecordedCall = {
      url,
      method: init?.method ?? "GET",
      headers: init?.headers,
      body: init?.body === undefined ? undefined : JSON.parse(init.body),
    };
    calls.push(call);
    const reply = await handler(call);
    return { status: reply.status, json: async () => reply.body };
  };
  return Object.assign(fn, { calls });
}

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (reason: unknown) => void;
}

/** Promise whose settlement the test controls, for ordering games. */
export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (reason: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}
