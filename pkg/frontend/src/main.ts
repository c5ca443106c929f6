import { Api, ApiError } from "./api.js";
import { applyReport, renderGraph, showPending } from "./render.js";
import { SessionState } from "./state.js";
import type { MapDocument, MapListing, Side } from "./types.js";
import { mapNodeLabels, sideLabels } from "./types.js";

const api = new Api("");
const session = new SessionState();
let currentDoc: MapDocument | null = null;
let running = false;

const el = {
  picker: document.querySelector<HTMLSelectElement>("#map-picker")!,
  sideBox: document.querySelector<HTMLElement>("#side-box")!,
  graph: document.querySelector<HTMLElement>("#graph")!,
  run: document.querySelector<HTMLButtonElement>("#run")!,
  threshold: document.querySelector<HTMLInputElement>("#threshold")!,
  maxIters: document.querySelector<HTMLInputElement>("#max-iters")!,
  banner: document.querySelector<HTMLElement>("#banner")!,
  bannerText: document.querySelector<HTMLElement>("#banner-text")!,
  bannerClose: document.querySelector<HTMLButtonElement>("#banner-close")!,
  clampPanel: document.querySelector<HTMLElement>("#clamp-panel")!,
  history: document.querySelector<HTMLElement>("#history")!,
  badge: document.querySelector<HTMLElement>("#outcome-badge")!,
  trajectory: document.querySelector<HTMLElement>("#trajectory")!,
};

function showError(message: string, findings: string[] = []): void {
  el.bannerText.textContent = findings.length ? `${message}: ${findings.join("; ")}` : message;
  el.banner.hidden = false;
}

el.bannerClose.addEventListener("click", () => {
  el.banner.hidden = true;
});

function clickableLabels(): string[] {
  if (!currentDoc) return [];
  if (currentDoc.kind === "cognitive") return mapNodeLabels(currentDoc);
  return sideLabels(currentDoc, session.pending.side);
}

function refreshPendingView(): void {
  showPending(el.graph, session.pending.on, session.pending.clamped);
  renderClampPanel();
  el.badge.hidden = session.lastReport === null;
}

function renderClampPanel(): void {
  el.clampPanel.textContent = "";
  const on = [...session.pending.on];
  if (on.length === 0) {
    el.clampPanel.textContent = "click nodes to switch them ON";
    return;
  }
  for (const label of on) {
    const row = document.createElement("label");
    row.className = "clamp-row";
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = session.pending.clamped.has(label);
    box.addEventListener("change", () => {
      session.toggleClamp(label);
      refreshPendingView();
    });
    row.append(box, document.createTextNode(` hold ${label} at 1`));
    el.clampPanel.appendChild(row);
  }
}

function renderHistory(): void {
  el.history.textContent = "";
  session.history.forEach((entry, i) => {
    const item = document.createElement("button");
    item.className = "history-entry";
    const outcome =
      entry.report.outcome === "limit_cycle"
        ? `limit cycle (period ${entry.report.period})`
        : entry.report.outcome.replace("_", " ");
    item.textContent = `#${i + 1} ${entry.mapId}: on ${entry.scenario.on.join(", ") || "(none)"} → ${outcome}`;
    item.addEventListener("click", () => {
      void reloadHistory(i);
    });
    el.history.prepend(item);
  });
}

async function reloadHistory(index: number): Promise<void> {
  const entry = session.loadHistory(index);
  if (!entry) return;
  if (entry.mapId !== session.mapId) {
    el.picker.value = entry.mapId;
    await selectMap(entry.mapId, { keepPending: true });
  }
  syncSideWidget();
  drawGraph();
  refreshPendingView();
  applyReport(document.body, entry.report);
}

function syncSideWidget(): void {
  for (const input of el.sideBox.querySelectorAll<HTMLInputElement>("input[name=side]")) {
    input.checked = input.value === session.pending.side;
  }
}

function drawGraph(): void {
  if (!currentDoc || !session.mapId) return;
  renderGraph(el.graph, currentDoc, {
    seedKey: session.mapId,
    onNodeClick: (label) => {
      if (!clickableLabels().includes(label)) {
        showError(`start nodes live on the ${session.pending.side} side; use the side selector`);
        return;
      }
      session.toggleNode(label);
      refreshPendingView();
    },
  });
  refreshPendingView();
}

async function selectMap(mapId: string, opts: { keepPending?: boolean } = {}): Promise<void> {
  try {
    const doc = await api.getMap(mapId);
    currentDoc = doc;
    if (!opts.keepPending) session.selectMap(mapId);
    else session.mapId = mapId;
    session.restrictToLabels(mapNodeLabels(doc));
    el.sideBox.hidden = doc.kind !== "relational";
    el.trajectory.textContent = "";
    el.badge.hidden = true;
    syncSideWidget();
    drawGraph();
  } catch (err) {
    if (err instanceof ApiError) showError(err.message, err.findings);
    else showError(String(err));
  }
}

async function run(): Promise<void> {
  if (!session.mapId || !currentDoc || running) return;
  running = true;
  el.run.disabled = true;
  try {
    session.pending.threshold = Number(el.threshold.value) || 1;
    session.pending.maxIters = Number(el.maxIters.value) || 1000;
    const scenario = session.toRequest(currentDoc.kind === "relational");
    const report = await api.infer(session.mapId, scenario);
    session.record(scenario, report);
    applyReport(document.body, report);
    renderHistory();
  } catch (err) {
    if (err instanceof ApiError) showError(err.message, err.findings);
    else showError(String(err));
  } finally {
    running = false;
    el.run.disabled = false;
  }
}

el.run.addEventListener("click", () => {
  void run();
});

for (const input of el.sideBox.querySelectorAll<HTMLInputElement>("input[name=side]")) {
  input.addEventListener("change", () => {
    session.setSide(input.value as Side);
    drawGraph();
  });
}

el.picker.addEventListener("change", () => {
  void selectMap(el.picker.value);
});

async function boot(): Promise<void> {
  try {
    const maps: MapListing[] = await api.listMaps();
    el.picker.textContent = "";
    for (const entry of maps) {
      const option = document.createElement("option");
      option.value = entry.id;
      option.textContent = `${entry.id} (${entry.variant}, ${entry.node_count} nodes)`;
      el.picker.appendChild(option);
    }
    if (maps.length > 0) await selectMap(maps[0].id);
  } catch (err) {
    if (err instanceof ApiError) showError(err.message, err.findings);
    else showError(String(err));
  }
}

void boot();
