/** Browser entry point: wires the view models to a small DOM app. */

import { ApiClient, browserFetcher } from "./api.js";
import { ReviewQueue } from "./candidates.js";
import { pointCount, toChartSeries } from "./history.js";
import { countNodes, flattenTree } from "./tree.js";

const METRICS = ["rr", "ir", "ar", "cr", "cohesion"];

function el(tag: string, text?: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (className !== undefined) node.className = className;
  return node;
}

async function renderTree(api: ApiClient, host: HTMLElement): Promise<void> {
  const data = await api.getTree();
  host.replaceChildren(el("h2", `Class tree (${countNodes(data.roots)} nodes)`));
  for (const row of flattenTree(data.roots)) {
    const line = el("div", row.label, "tree-row");
    line.style.paddingLeft = `${row.depth * 1.25}rem`;
    line.title = row.iri;
    host.appendChild(line);
  }
}

async function renderMetrics(api: ApiClient, host: HTMLElement): Promise<void> {
  const data = await api.getMetrics();
  host.replaceChildren(el("h2", `Metrics (revision ${data.revision})`));
  for (const name of METRICS) {
    const value = (data.report as Record<string, unknown>)[name];
    host.appendChild(el("div", `${name}: ${value ?? "undefined"}`, "metric-row"));
  }
}

async function renderHistory(
  api: ApiClient,
  metric: string,
  canvas: HTMLCanvasElement,
): Promise<void> {
  const data = await api.getHistory(metric);
  const series = toChartSeries(data.points);
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const n = pointCount(series);
  if (n === 0) return;
  const values = series.y.map((v) => v ?? 0);
  const max = Math.max(...values, 1);
  ctx.beginPath();
  values.forEach((v, i) => {
    const x = n === 1 ? canvas.width / 2 : (i / (n - 1)) * (canvas.width - 10) + 5;
    const y = canvas.height - 5 - (v / max) * (canvas.height - 10);
    i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
  });
  ctx.stroke();
}

async function renderQueue(queue: ReviewQueue, host: HTMLElement, onChange: () => void) {
  await queue.refresh();
  host.replaceChildren(el("h2", `Candidates (${queue.candidates.length})`));
  for (const cand of queue.candidates) {
    const row = el("div", undefined, "candidate-row");
    row.appendChild(el("span", `${cand.surface} → ${cand.concept ?? "?"} [${cand.rule}]`));
    const accept = el("button", "accept") as HTMLButtonElement;
    accept.onclick = async () => {
      const result = await queue.acceptWithRetry(cand.id);
      if (result.outcome === "conflict") {
        row.appendChild(el("span", " (conflict — workspace changed, reloaded)", "warn"));
      }
      onChange();
    };
    const reject = el("button", "reject") as HTMLButtonElement;
    reject.onclick = async () => {
      await queue.reject(cand.id);
      onChange();
    };
    row.append(accept, reject);
    host.appendChild(row);
  }
}

export async function startApp(root: HTMLElement, baseUrl: string): Promise<void> {
  const api = new ApiClient(browserFetcher(baseUrl));
  const queue = new ReviewQueue(api);

  const treeHost = el("section");
  const metricsHost = el("section");
  const queueHost = el("section");
  const historyHost = el("section");
  historyHost.appendChild(el("h2", "Class richness history"));
  const canvas = document.createElement("canvas");
  canvas.width = 480;
  canvas.height = 160;
  historyHost.appendChild(canvas);
  root.replaceChildren(treeHost, metricsHost, queueHost, historyHost);

  const redraw = async () => {
    await renderTree(api, treeHost);
    await renderMetrics(api, metricsHost);
    await renderHistory(api, "cr", canvas);
    await renderQueue(queue, queueHost, () => void redraw());
  };
  await redraw();
}
