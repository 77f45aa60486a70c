import init, { orbit_json, reduced_graph_json, sharp_map_json } from "./pkg/funcdyn_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function el(name, attrs, text) {
  const e = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

function showError(target, v) {
  target.textContent = v.error;
  target.className = "error";
}

function showOrbit() {
  const out = $("orbit");
  const v = JSON.parse(orbit_json(+$("q").value, $("map").value, $("start").value, +$("steps").value));
  if (v.error) return showError(out, v);
  out.className = "";
  const o = v.orbit;
  out.textContent =
    `map    ${v.map.literal}\nbad    [${v.map.bad_places.join(", ")}]\n` +
    `tail   [${o.transient.join(", ")}]\ncycle  [${o.cycle.join(", ")}]\nstatus ${JSON.stringify(o.status)}`;
}

// Nodes on a circle; periodic nodes on an inner ring, tail nodes outside.
function drawGraph(g) {
  const svg = $("graph");
  svg.replaceChildren();
  const defs = el("defs", {});
  const marker = el("marker", { id: "arrow", viewBox: "0 0 10 10", refX: 18, refY: 5, markerWidth: 6, markerHeight: 6, orient: "auto" });
  marker.append(el("path", { d: "M0,0 L10,5 L0,10 z", fill: "#555" }));
  defs.append(marker);
  svg.append(defs);

  const n = g.nodes.length;
  const index = new Map(g.nodes.map((name, i) => [name, i]));
  const pos = g.nodes.map((_, i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    const r = g.tail_depths[i] === 0 ? 150 : 150 + 40 * Math.min(g.tail_depths[i], 2);
    return [r * Math.cos(a), r * Math.sin(a)];
  });
  g.successors.forEach((s, i) => {
    const [x1, y1] = pos[i];
    const [x2, y2] = pos[index.get(s)];
    if (i === index.get(s)) {
      svg.append(el("circle", { cx: x1, cy: y1 - 14, r: 10, fill: "none", stroke: "#555" }));
    } else {
      svg.append(el("line", { x1, y1, x2, y2, stroke: "#555", "marker-end": "url(#arrow)" }));
    }
  });
  g.nodes.forEach((name, i) => {
    const [x, y] = pos[i];
    svg.append(el("circle", { cx: x, cy: y, r: 9, fill: g.tail_depths[i] === 0 ? "#9cf" : "#eee", stroke: "#333" }));
    svg.append(el("text", { x, y: y + 4, "text-anchor": "middle", "font-size": 10 }, name));
  });
}

function showGraph() {
  const info = $("graph-info");
  const v = JSON.parse(reduced_graph_json(+$("q").value, $("map").value, $("place").value));
  if (v.error) {
    $("graph").replaceChildren();
    return showError(info, v);
  }
  info.className = "";
  info.textContent = `${v.map.literal} mod ${v.place} = ${v.reduction}; cycle lengths ${v.graph.cycle_lengths.join(", ")}`;
  drawGraph(v.graph);
}

function loadSharp() {
  const v = JSON.parse(sharp_map_json(+$("q").value));
  if (v.error) return showError($("orbit"), v);
  $("map").value = v.map.literal;
  $("start").value = "0";
  showOrbit();
  showGraph();
}

await init();
$("run-orbit").onclick = showOrbit;
$("run-graph").onclick = showGraph;
$("sharp").onclick = loadSharp;
showOrbit();
showGraph();
