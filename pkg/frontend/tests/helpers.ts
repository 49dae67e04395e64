import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { Transport } from "../src/client.js";

export function fixtureText(name: string): string {
  const path = fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));
  return readFileSync(path, "utf-8");
}

export function fixtureJson<T = unknown>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export interface Route {
  status: number;
  fixture: string;
}

/**
 * Transport that replays recorded response bytes.  A route maps
 * "METHOD /path" to one or more replies; repeated calls walk the list
 * and the last entry sticks.
 */
export function replayTransport(routes: Record<string, Route | Route[]>): Transport {
  const remaining = new Map<string, Route[]>(
    Object.entries(routes).map(([key, value]) => [
      key,
      Array.isArray(value) ? [...value] : [value],
    ]),
  );
  return async (method, path) => {
    const key = `${method} ${path}`;
    const queue = remaining.get(key);
    if (!queue || queue.length === 0) {
      throw new Error(`no recorded reply for ${key}`);
    }
    const route = queue.length > 1 ? queue.shift()! : queue[0]!;
    return { status: route.status, text: fixtureText(route.fixture) };
  };
}
