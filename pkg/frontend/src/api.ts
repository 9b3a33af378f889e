import {
  ApiError,
  CreateResponse,
  ExportResponse,
  MatrixDoc,
  RelationsResponse,
  Snapshot,
  StateResponse,
} from "./types.js";

// The transport is injectable so contract tests can replay recorded
// service traffic instead of hitting the network.
export interface Transport {
  request(method: string, path: string, body?: unknown): Promise<unknown>;
}

export class HttpTransport implements Transport {
  constructor(private base: string) {}

  async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const res = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await res.json().catch(() => null);
    if (!res.ok) {
      throw new ApiError(res.status, payload);
    }
    return payload;
  }
}

export interface FixtureEntry {
  method: string;
  path: string;
  body?: unknown;
  status: number;
  response: unknown;
}

function deepEqual(a: unknown, b: unknown): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}

// Replays a recorded request/response script strictly in order; any
// deviation from the recorded requests is a contract violation.
export class FixtureTransport implements Transport {
  private cursor = 0;

  constructor(private entries: FixtureEntry[]) {}

  get exhausted(): boolean {
    return this.cursor >= this.entries.length;
  }

  async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const entry = this.entries[this.cursor];
    if (!entry) {
      throw new Error(`unexpected request ${method} ${path}: fixture exhausted`);
    }
    this.cursor += 1;
    if (entry.method !== method || entry.path !== path || !deepEqual(entry.body, body)) {
      throw new Error(
        `request mismatch: got ${method} ${path} ${JSON.stringify(body)}, ` +
          `fixture expects ${entry.method} ${entry.path} ${JSON.stringify(entry.body)}`,
      );
    }
    if (entry.status >= 400) {
      throw new ApiError(entry.status, entry.response);
    }
    return entry.response;
  }
}

export class SessionClient {
  constructor(private transport: Transport) {}

  createSession(matrix: MatrixDoc): Promise<CreateResponse> {
    return this.transport.request("POST", "/sessions", matrix) as Promise<CreateResponse>;
  }

  getState(id: string): Promise<StateResponse> {
    return this.transport.request("GET", `/sessions/${id}`) as Promise<StateResponse>;
  }

  mutate(id: string, vertex: number, eps: number, node?: number): Promise<Snapshot> {
    const body: Record<string, number> = { vertex, eps };
    if (node !== undefined) {
      body.node = node;
    }
    return this.transport.request("POST", `/sessions/${id}/mutate`, body) as Promise<Snapshot>;
  }

  moveCursor(id: string, node: number): Promise<Snapshot> {
    return this.transport.request("POST", `/sessions/${id}/cursor`, {
      node,
    }) as Promise<Snapshot>;
  }

  relations(id: string, full = false): Promise<RelationsResponse> {
    const q = full ? "?full=true" : "";
    return this.transport.request(
      "GET",
      `/sessions/${id}/relations${q}`,
    ) as Promise<RelationsResponse>;
  }

  exportTree(id: string): Promise<ExportResponse> {
    return this.transport.request("GET", `/sessions/${id}/export`) as Promise<ExportResponse>;
  }
}
