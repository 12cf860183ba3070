/**
 * Replay transport for contract tests.
 *
 * Fixtures under tests/fixtures/ are verbatim recordings of server
 * responses ({status, body}). The fetcher serves them per route in FIFO
 * order and can assert on the request body it receives, so a test replays
 * a recorded exchange exactly and fails if the client deviates from it.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import type { ApiResponse, Fetcher } from "../src/api.js";

const FIXTURE_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function loadFixture(name: string): ApiResponse {
  const raw = readFileSync(join(FIXTURE_DIR, `${name}.json`), "utf-8");
  return JSON.parse(raw) as ApiResponse;
}

interface Scripted {
  response: ApiResponse;
  expectBody?: (body: unknown) => void;
}

export class FixtureFetcher {
  private routes = new Map<string, Scripted[]>();
  readonly requests: { method: string; path: string; body?: unknown }[] = [];

  on(
    method: string,
    path: string,
    fixtureName: string,
    expectBody?: (body: unknown) => void,
  ): this {
    const key = `${method} ${path}`;
    const queue = this.routes.get(key) ?? [];
    queue.push({ response: loadFixture(fixtureName), expectBody });
    this.routes.set(key, queue);
    return this;
  }

  fetcher(): Fetcher {
    return async (method, path, body) => {
      this.requests.push({ method, path, body });
      const queue = this.routes.get(`${method} ${path}`);
      const scripted = queue?.shift();
      if (!scripted) {
        throw new Error(`unexpected request: ${method} ${path}`);
      }
      scripted.expectBody?.(body);
      return scripted.response;
    };
  }

  assertDrained(): void {
    for (const [key, queue] of this.routes) {
      if (queue.length > 0) {
        throw new Error(`${queue.length} scripted response(s) left for ${key}`);
      }
    }
  }
}
