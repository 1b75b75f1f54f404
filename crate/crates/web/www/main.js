import init, { betti_table, lattice_json, shuffle_demo } from "./pkg/synor_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
let focusedChain = $("left");

function show(out, f) {
  out.classList.remove("error");
  try {
    out.textContent = f();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
  }
}

function svgNode(tag, attrs, text) {
  const el = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  if (text !== undefined) el.textContent = text;
  return el;
}

// Rank = length of the longest chain from the bottom.
function ranks(n, covers) {
  const up = Array.from({ length: n }, () => []);
  const indeg = new Array(n).fill(0);
  for (const [a, b] of covers) { up[a].push(b); indeg[b]++; }
  const rank = new Array(n).fill(0);
  const queue = [...Array(n).keys()].filter((x) => indeg[x] === 0);
  while (queue.length) {
    const x = queue.shift();
    for (const y of up[x]) {
      rank[y] = Math.max(rank[y], rank[x] + 1);
      if (--indeg[y] === 0) queue.push(y);
    }
  }
  return rank;
}

function drawHasse(data) {
  const svg = $("hasse");
  svg.replaceChildren();
  const rank = ranks(data.n, data.covers);
  const height = Math.max(...rank);
  const levels = Array.from({ length: height + 1 }, () => []);
  rank.forEach((r, x) => levels[r].push(x));
  const widest = Math.max(...levels.map((l) => l.length));
  const width = Math.max(800, widest * 90);
  const rowGap = 70;
  svg.setAttribute("viewBox", `0 0 ${width} ${(height + 1) * rowGap + 20}`);
  const pos = [];
  levels.forEach((level, r) => {
    level.forEach((x, k) => {
      pos[x] = [((k + 1) * width) / (level.length + 1), (height - r) * rowGap + 30];
    });
  });
  for (const [a, b] of data.covers) {
    svg.append(svgNode("line", { x1: pos[a][0], y1: pos[a][1], x2: pos[b][0], y2: pos[b][1] }));
  }
  const synorOf = new Map();
  for (const s of data.synors) {
    const marks = synorOf.get(s.element) ?? [];
    marks.push(s.multiplicity > 1 ? `${s.i}x${s.multiplicity}` : `${s.i}`);
    synorOf.set(s.element, marks);
  }
  data.labels.forEach((label, x) => {
    const [cx, cy] = pos[x];
    const g = svgNode("g", {});
    g.append(svgNode("circle", { cx, cy, r: 6, class: synorOf.has(x) ? "synor" : "" }));
    const text = svgNode("text", { x: cx + 9, y: cy - 6 }, label);
    if (synorOf.has(x)) {
      text.append(svgNode("tspan", { dy: -5, "font-size": 9 }, synorOf.get(x).join(",")));
    }
    g.append(text);
    g.addEventListener("click", () => {
      const cur = focusedChain.value.trim();
      focusedChain.value = cur ? `${cur}>${label}` : label;
    });
    svg.append(g);
  });
}

await init();

for (const id of ["left", "right"]) {
  $(id).addEventListener("focus", () => { focusedChain = $(id); });
}

$("betti").addEventListener("click", () => {
  show($("betti-out"), () => betti_table($("ideal").value, $("field").value));
});

$("lattice").addEventListener("click", () => {
  show($("lattice-out"), () => {
    const data = JSON.parse(lattice_json($("ideal").value, $("field").value));
    drawHasse(data);
    return `${data.n} elements, ${data.synors.length} synor elements, Betti totals ${data.totals.join(" ")}`;
  });
});

$("shuffle").addEventListener("click", () => {
  show($("shuffle-out"), () =>
    shuffle_demo($("ideal").value, $("left").value, $("right").value, $("field").value));
});

$("betti").click();
