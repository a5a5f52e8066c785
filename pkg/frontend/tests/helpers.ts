// Shared test helpers: fixture loading and a recording fetch stub.

import { readFileSync } from "node:fs";
import { join } from "node:path";

export function loadFixture<T>(name: string): T {
  const path = join(process.cwd(), "tests", "fixtures", name);
  return JSON.parse(readFileSync(path, "utf-8")) as T;
}

export interface RecordedCall {
  method: string;
  url: string;
  body: unknown;
}

export interface Route {
  method: string;
  path: RegExp | string;
  reply: (call: RecordedCall) => unknown;
  status?: number;
}

export function makeFetchStub(routes: Route[]) {
  const calls: RecordedCall[] = [];
  const fetchImpl = async (
    url: string,
    init?: RequestInit,
  ): Promise<Response> => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    const call: RecordedCall = { method, url, body };
    calls.push(call);
    for (const route of routes) {
      const matches =
        typeof route.path === "string"
          ? url === route.path
          : route.path.test(url);
      if (matches && route.method === method) {
        return new Response(JSON.stringify(route.reply(call)), {
          status: route.status ?? 200,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    return new Response(
      JSON.stringify({ code: "NoRoute", detail: `no stub for ${method} ${url}` }),
      { status: 500 },
    );
  };
  return { calls, fetchImpl };
}

export function panel(): HTMLElement {
  return document.createElement("div");
}
