export type Activation = "0" | "1" | "I";

export interface NodeInfo {
  label: string;
  description?: string;
}

export interface MapListing {
  id: string;
  kind: "cognitive" | "relational";
  variant: string;
  node_count: number;
  domain_count?: number;
  range_count?: number;
  bundled: boolean;
  metadata: Record<string, string>;
}

export type Edge = [string, string, string];

export interface MapDocument {
  format_version: string;
  kind: "cognitive" | "relational";
  nodes?: NodeInfo[];
  domain_nodes?: NodeInfo[];
  range_nodes?: NodeInfo[];
  edges: Edge[];
  metadata: Record<string, string>;
}

export interface RunReport {
  outcome: "fixed_point" | "limit_cycle" | "not_converged";
  iterations: number;
  period: number | null;
  side?: string;
  activations: Record<string, Activation>;
  trajectory?: Record<string, Activation>[];
}

export type Side = "domain" | "range";

export interface ScenarioRequest {
  on: string[];
  clamp: "auto" | "none" | string[];
  side?: Side;
  threshold?: number;
  max_iters?: number;
}

export function mapNodeLabels(doc: MapDocument): string[] {
  if (doc.kind === "cognitive") {
    return (doc.nodes ?? []).map((n) => n.label);
  }
  return [...(doc.domain_nodes ?? []), ...(doc.range_nodes ?? [])].map((n) => n.label);
}

export function sideLabels(doc: MapDocument, side: Side): string[] {
  const nodes = side === "domain" ? doc.domain_nodes : doc.range_nodes;
  return (nodes ?? []).map((n) => n.label);
}
