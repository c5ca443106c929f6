import type { MapDocument, MapListing, RunReport, ScenarioRequest } from "./types.js";

export class ApiError extends Error {
  status: number;
  findings: string[];

  constructor(status: number, message: string, findings: string[] = []) {
    super(message);
    this.status = status;
    this.findings = findings;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  if (!resp.ok) {
    let message = `${resp.status} ${resp.statusText}`;
    let findings: string[] = [];
    try {
      const body = await resp.json();
      if (body.error) message = body.error;
      if (Array.isArray(body.findings)) findings = body.findings;
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(resp.status, message, findings);
  }
  return (await resp.json()) as T;
}

export class Api {
  constructor(private base: string = "") {}

  async listMaps(): Promise<MapListing[]> {
    const body = await request<{ maps: MapListing[] }>(`${this.base}/api/maps`);
    return body.maps;
  }

  getMap(id: string): Promise<MapDocument> {
    return request(`${this.base}/api/maps/${encodeURIComponent(id)}`);
  }

  infer(id: string, scenario: ScenarioRequest): Promise<RunReport> {
    return request(`${this.base}/api/maps/${encodeURIComponent(id)}/infer`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(scenario),
    });
  }
}
