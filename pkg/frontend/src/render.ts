import { RenderModel } from "./viewmodel.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderCallbacks {
  onVertexClick(vertex: number): void;
  onNodeSelect(node: number): void;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  return node;
}

// Thin DOM painter over the render model; all numbers shown come from
// the model, which mirrors the server.
export function paint(
  root: HTMLElement,
  model: RenderModel,
  callbacks: RenderCallbacks,
): void {
  root.textContent = "";

  const svg = el("svg", {
    width: "640",
    height: "420",
    viewBox: "0 0 640 420",
    class: "diagram",
  });
  const defs = el("defs", {});
  const marker = el("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "24",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#445" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const byId = new Map(model.nodes.map((n) => [n.id, n]));
  const edgeLines = new Map<string, SVGLineElement>();
  for (const e of model.edges) {
    const a = byId.get(e.tail)!;
    const b = byId.get(e.head)!;
    const line = el("line", {
      x1: String(a.x),
      y1: String(a.y),
      x2: String(b.x),
      y2: String(b.y),
      stroke: "#445",
      "stroke-width": "1.6",
      "marker-end": "url(#arrow)",
    });
    edgeLines.set(`${e.tail}-${e.head}`, line);
    svg.appendChild(line);
    if (e.label !== null) {
      const text = el("text", {
        x: String((a.x + b.x) / 2 + 6),
        y: String((a.y + b.y) / 2 - 6),
        class: "edge-weight",
      });
      text.textContent = e.label;
      svg.appendChild(text);
    }
  }

  for (const n of model.nodes) {
    const g = el("g", { class: "vertex", cursor: "pointer" });
    const circle = el("circle", {
      cx: String(n.x),
      cy: String(n.y),
      r: "16",
      fill: "#eef2ff",
      stroke: "#445",
      "stroke-width": "1.5",
    });
    const label = el("text", {
      x: String(n.x),
      y: String(n.y + 5),
      "text-anchor": "middle",
      class: "vertex-label",
    });
    label.textContent = n.label;
    g.appendChild(circle);
    g.appendChild(label);
    g.addEventListener("click", () => callbacks.onVertexClick(n.id));
    svg.appendChild(g);
  }
  root.appendChild(svg);

  const panel = document.createElement("div");
  panel.className = "panels";

  const relBox = document.createElement("div");
  relBox.className = "relations";
  relBox.innerHTML = "<h3>Relations</h3>";
  const relTable = document.createElement("table");
  for (const cyc of model.cycles) {
    const row = document.createElement("tr");
    row.className = "cycle-row";
    const wordCell = document.createElement("td");
    wordCell.textContent = `cycle (${cyc.vertices.join(" → ")})`;
    const badge = document.createElement("td");
    badge.className = "badge";
    badge.textContent = cyc.badge;
    const check = document.createElement("td");
    check.textContent = cyc.verified;
    row.append(wordCell, badge, check);
    const keys = cyc.vertices.map((v, t) => {
      const w = cyc.vertices[(t + 1) % cyc.vertices.length];
      return `${v}-${w}`;
    });
    row.addEventListener("mouseenter", () => {
      for (const key of keys) {
        edgeLines.get(key)?.setAttribute("stroke", "#d33");
      }
    });
    row.addEventListener("mouseleave", () => {
      for (const key of keys) {
        edgeLines.get(key)?.setAttribute("stroke", "#445");
      }
    });
    relTable.appendChild(row);
  }
  for (const rel of model.relations.filter((r) => r.kind !== "cycle")) {
    const row = document.createElement("tr");
    const word = document.createElement("td");
    word.textContent = `${rel.kind} [${rel.word.join(" ")}]`;
    const badge = document.createElement("td");
    badge.textContent = rel.m === "inf" ? `∞ (x=${rel.x})` : `m=${rel.m}`;
    const check = document.createElement("td");
    check.textContent = rel.verified;
    row.append(word, badge, check);
    relTable.appendChild(row);
  }
  relBox.appendChild(relTable);

  const historyBox = document.createElement("div");
  historyBox.className = "history";
  historyBox.innerHTML = "<h3>History</h3>";
  const list = document.createElement("ul");
  for (const h of model.history) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.textContent =
      h.parent === null
        ? `seed (node ${h.node})`
        : `node ${h.node}: μ${h.vertex} (ε=${h.eps}) from ${h.parent}`;
    if (h.current) {
      button.classList.add("current");
    }
    button.addEventListener("click", () => callbacks.onNodeSelect(h.node));
    item.appendChild(button);
    list.appendChild(item);
  }
  historyBox.appendChild(list);

  const statusBox = document.createElement("div");
  statusBox.className = "status";
  statusBox.textContent = [
    model.acyclic ? "acyclic" : "has oriented cycles",
    model.allWeightsGe4 ? "all weights ≥ 4" : "",
    ...model.warnings,
  ]
    .filter(Boolean)
    .join(" · ");

  panel.append(relBox, historyBox, statusBox);
  root.appendChild(panel);
}
