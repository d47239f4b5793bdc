// Thin fetch wrapper around the calculation service. Server-side
// diagnostics are surfaced verbatim through ApiError.

import type { ApiErrorBody, Scenario, TableResponse } from "./types.js";

export type FetchLike = (url: string, init: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody | null;

  constructor(status: number, body: ApiErrorBody | null, fallback: string) {
    const detail = body?.diagnostics
      ?.map((d) => `${d.path || "<document>"}: ${d.message} [${d.kind}]`)
      .join("\n");
    super(detail || body?.error || fallback);
    this.status = status;
    this.body = body;
  }
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base: string, fetchImpl: FetchLike = (url, init) => fetch(url, init)) {
    this.base = base.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  async post(command: string, scenario: Scenario): Promise<TableResponse> {
    const reply = await this.fetchImpl(`${this.base}/v1/${command}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(scenario),
    });
    if (!reply.ok) {
      let body: ApiErrorBody | null = null;
      try {
        body = (await reply.json()) as ApiErrorBody;
      } catch {
        body = null;
      }
      throw new ApiError(reply.status, body, `service replied ${reply.status}`);
    }
    return (await reply.json()) as TableResponse;
  }

  async health(): Promise<{ status: string; version: string }> {
    const reply = await this.fetchImpl(`${this.base}/v1/health`, { method: "GET" });
    if (!reply.ok) {
      throw new ApiError(reply.status, null, `service replied ${reply.status}`);
    }
    return (await reply.json()) as { status: string; version: string };
  }
}
