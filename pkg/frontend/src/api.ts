// Typed client for the switching-game session API.  Integers beyond 53
// bits travel as strings; keys are compared by their canonical triple.

export type WireInt = number | string;

export interface LineInfo {
  key: WireInt[];
  points: number[];
}

export interface SessionState {
  id: string;
  n: number;
  points: WireInt[][];
  weights: number[];
  lines: LineInfo[];
  discrepancy: number;
  switch_count: number;
  created_at: number;
}

export interface SwitchDelta {
  flipped: number[];
  discrepancy: number;
  switch_count: number;
}

export interface UndoDelta {
  undone_line: WireInt[];
  flipped: number[];
  discrepancy: number;
  switch_count: number;
}

export interface Hint {
  suggestion: WireInt[] | null;
  projected_final: number;
  bound_kind: string;
  switches: WireInt[][];
}

export interface OracleInfo {
  value: number | null;
  cap_exceeded: boolean;
  cap: number;
}

export interface GeneratorSpec {
  kind: string;
  n?: number;
  rows?: number;
  cols?: number;
  k?: number;
  seed?: number;
  weight_mode?: string;
}

export function lineKeyId(key: WireInt[]): string {
  return key.map(String).join(",");
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        (body as { code?: string }).code ?? "error",
        (body as { message?: string }).message ?? response.statusText,
      );
    }
    return body as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/healthz");
  }

  createFromGenerator(generator: GeneratorSpec): Promise<SessionState> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ generator }),
    });
  }

  createFromInstance(points: WireInt[][], weights: number[]): Promise<SessionState> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ instance: { points, weights } }),
    });
  }

  getState(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}`);
  }

  applySwitch(id: string, key: WireInt[]): Promise<SwitchDelta> {
    return this.request(`/sessions/${id}/switch`, {
      method: "POST",
      body: JSON.stringify({ line: key }),
    });
  }

  undo(id: string): Promise<UndoDelta> {
    return this.request(`/sessions/${id}/undo`, { method: "POST" });
  }

  hint(id: string, solver: string): Promise<Hint> {
    return this.request(`/sessions/${id}/hint`, {
      method: "POST",
      body: JSON.stringify({ solver }),
    });
  }

  oracle(id: string): Promise<OracleInfo> {
    return this.request(`/sessions/${id}/oracle`);
  }
}
