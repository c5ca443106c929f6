import { layoutCognitive, layoutRelational } from "./layout.js";
import type { Activation, MapDocument, RunReport } from "./types.js";
import { mapNodeLabels } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface GraphOptions {
  seedKey: string;
  width?: number;
  height?: number;
  onNodeClick?: (label: string) => void;
}

function parseWeightKind(weight: string): { negative: boolean; indeterminate: boolean } {
  return { negative: weight.startsWith("-") && !weight.startsWith("-I"), indeterminate: weight.includes("I") };
}

function activationClass(value: Activation | undefined): string {
  if (value === "1") return "act-on";
  if (value === "I") return "act-indet";
  return "act-off";
}

/**
 * Draw the map as an SVG directed graph inside `container`.
 * Every node group carries data-label; activation styling is applied by
 * swapping act-* classes, so the rendering layer never invents results.
 */
export function renderGraph(container: HTMLElement, doc: MapDocument, opts: GraphOptions): void {
  const width = opts.width ?? 860;
  const height = opts.height ?? 560;
  const docRef = container.ownerDocument;
  container.textContent = "";

  const svg = docRef.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "graph");

  const defs = docRef.createElementNS(SVG_NS, "defs");
  defs.innerHTML = `
    <marker id="arrow" viewBox="0 0 10 10" refX="22" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse">
      <path d="M 0 0 L 10 5 L 0 10 z" class="arrow-head"></path>
    </marker>
    <pattern id="hatch" patternUnits="userSpaceOnUse" width="6" height="6" patternTransform="rotate(45)">
      <rect width="6" height="6" fill="#f6e05e"></rect>
      <line x1="0" y1="0" x2="0" y2="6" stroke="#744210" stroke-width="2"></line>
    </pattern>`;
  svg.appendChild(defs);

  const points =
    doc.kind === "cognitive"
      ? layoutCognitive(mapNodeLabels(doc), doc.edges, opts.seedKey, width, height)
      : layoutRelational(
          (doc.domain_nodes ?? []).map((n) => n.label),
          (doc.range_nodes ?? []).map((n) => n.label),
          width,
          height,
        );

  const edgeLayer = docRef.createElementNS(SVG_NS, "g");
  for (const [src, dst, weight] of doc.edges) {
    const a = points.get(src);
    const b = points.get(dst);
    if (!a || !b) continue;
    const line = docRef.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    const kind = parseWeightKind(weight);
    const classes = ["edge"];
    if (kind.negative) classes.push("edge-neg");
    if (kind.indeterminate) classes.push("edge-indet");
    line.setAttribute("class", classes.join(" "));
    line.setAttribute("marker-end", "url(#arrow)");
    const title = docRef.createElementNS(SVG_NS, "title");
    title.textContent = `${src} → ${dst}: ${weight}`;
    line.appendChild(title);
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const nodeLayer = docRef.createElementNS(SVG_NS, "g");
  const describe = new Map<string, string | undefined>();
  for (const n of [...(doc.nodes ?? []), ...(doc.domain_nodes ?? []), ...(doc.range_nodes ?? [])]) {
    describe.set(n.label, n.description);
  }
  for (const [label, p] of points) {
    const group = docRef.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "node act-off");
    group.setAttribute("data-label", label);
    group.setAttribute("transform", `translate(${p.x},${p.y})`);
    const circle = docRef.createElementNS(SVG_NS, "circle");
    circle.setAttribute("r", "14");
    const clampRing = docRef.createElementNS(SVG_NS, "circle");
    clampRing.setAttribute("r", "19");
    clampRing.setAttribute("class", "clamp-ring");
    const text = docRef.createElementNS(SVG_NS, "text");
    text.setAttribute("y", "30");
    text.textContent = label.length > 26 ? `${label.slice(0, 24)}…` : label;
    const title = docRef.createElementNS(SVG_NS, "title");
    title.textContent = describe.get(label) ? `${label}: ${describe.get(label)}` : label;
    group.append(clampRing, circle, text, title);
    if (opts.onNodeClick) {
      group.addEventListener("click", () => opts.onNodeClick!(label));
    }
    nodeLayer.appendChild(group);
  }
  svg.appendChild(nodeLayer);
  container.appendChild(svg);
}

function setNodeClass(group: Element, activation: Activation | undefined, clamped: boolean): void {
  group.classList.remove("act-on", "act-off", "act-indet");
  group.classList.add(activationClass(activation));
  group.classList.toggle("clamped", clamped);
}

/** Color nodes for the scenario being edited (before any run). */
export function showPending(container: HTMLElement, on: Set<string>, clamped: Set<string>): void {
  for (const group of container.querySelectorAll(".node[data-label]")) {
    const label = group.getAttribute("data-label")!;
    setNodeClass(group, on.has(label) ? "1" : "0", clamped.has(label));
  }
}

function outcomeText(report: RunReport): string {
  if (report.outcome === "fixed_point") return "fixed point";
  if (report.outcome === "limit_cycle") return `limit cycle (period ${report.period})`;
  return `no convergence in ${report.iterations} iterations`;
}

/**
 * Apply a RunReport: badge text, node activation styles and the
 * iteration-by-iteration trajectory table. Values come verbatim from the
 * report; nothing is recomputed client-side.
 */
export function applyReport(root: HTMLElement, report: RunReport): void {
  const badge = root.querySelector<HTMLElement>("#outcome-badge");
  if (badge) {
    badge.textContent = outcomeText(report);
    badge.dataset.outcome = report.outcome;
    badge.hidden = false;
  }

  const graph = root.querySelector<HTMLElement>("#graph");
  if (graph) {
    for (const group of graph.querySelectorAll(".node[data-label]")) {
      const label = group.getAttribute("data-label")!;
      setNodeClass(group, report.activations[label], group.classList.contains("clamped"));
    }
  }

  const panel = root.querySelector<HTMLElement>("#trajectory");
  if (panel && report.trajectory) {
    const docRef = root.ownerDocument;
    panel.textContent = "";
    const labels = Object.keys(report.activations);
    const table = docRef.createElement("table");
    const head = docRef.createElement("tr");
    head.innerHTML = "<th>t</th>" + labels.map((l) => `<th title="${l}">${l}</th>`).join("");
    table.appendChild(head);
    report.trajectory.forEach((state, t) => {
      const row = docRef.createElement("tr");
      const cells = labels
        .map((l) => `<td class="${activationClass(state[l])}">${state[l] ?? "0"}</td>`)
        .join("");
      row.innerHTML = `<td>t${t}</td>${cells}`;
      table.appendChild(row);
    });
    panel.appendChild(table);
  }
}
