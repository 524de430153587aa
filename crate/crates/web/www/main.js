import init, { family_window, circle_prefix, detect } from "./pkg/clawnet_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function params() {
  return {
    kind: $("kind").value,
    k: Number($("k").value),
    depth: Number($("depth").value),
    seed: Number($("seed").value),
  };
}

function guarded(f) {
  return () => {
    $("error").textContent = "";
    try {
      f();
    } catch (e) {
      $("error").textContent = String(e);
    }
  };
}

function line(svg, a, b, cls) {
  const l = document.createElementNS(SVG, "line");
  l.setAttribute("x1", a.x);
  l.setAttribute("y1", a.y);
  l.setAttribute("x2", b.x);
  l.setAttribute("y2", b.y);
  l.setAttribute("class", cls);
  svg.appendChild(l);
}

// cells run left to right, slots top to bottom
function draw(win, cycleEdges) {
  const svg = $("canvas");
  svg.innerHTML = "";
  const cells = win.vertices.map((v) => v.cell);
  const lo = Math.min(...cells);
  const hi = Math.max(...cells);
  const slots = Math.max(...win.vertices.map((v) => v.slot)) + 1;
  const w = svg.width.baseVal.value;
  const h = svg.height.baseVal.value;
  const dx = (w - 60) / Math.max(1, hi - lo);
  const dy = (h - 60) / Math.max(1, slots - 1);
  const pos = new Map();
  for (const v of win.vertices) {
    pos.set(v.id, { x: 30 + (v.cell - lo) * dx, y: 30 + v.slot * dy });
  }
  for (const [a, b] of win.edges) line(svg, pos.get(a), pos.get(b), "edge");
  for (const e of cycleEdges) {
    if (pos.has(e.u) && pos.has(e.v)) line(svg, pos.get(e.u), pos.get(e.v), "cycle");
  }
  for (const v of win.vertices) {
    const c = document.createElementNS(SVG, "circle");
    const p = pos.get(v.id);
    c.setAttribute("cx", p.x);
    c.setAttribute("cy", p.y);
    c.setAttribute("r", 4);
    c.setAttribute("class", "vertex");
    const t = document.createElementNS(SVG, "title");
    t.textContent = `vertex ${v.id}, distance ${v.dist}`;
    c.appendChild(t);
    svg.appendChild(c);
  }
}

function list(ul, items) {
  ul.innerHTML = "";
  for (const [text, ok] of items) {
    const li = document.createElement("li");
    li.textContent = text;
    li.className = ok ? "pass" : "fail";
    ul.appendChild(li);
  }
}

function showWindow() {
  const p = params();
  draw(JSON.parse(family_window(p.kind, p.k, p.depth)), []);
  list($("checks"), []);
}

function showCircle() {
  const p = params();
  const cert = JSON.parse(circle_prefix(p.kind, p.k, p.depth, p.seed));
  draw(JSON.parse(family_window(p.kind, p.k, p.depth)), cert.edges);
  list(
    $("checks"),
    cert.checks.map((c) => [`${c.passed ? "PASS" : "FAIL"} ${c.name}: ${c.detail}`, c.passed]),
  );
}

function runDetect() {
  const out = JSON.parse(detect($("edges").value, $("pattern").value));
  list(
    $("hits"),
    out.results.map((r) =>
      r.found ? [`${r.pattern}: induced on ${r.vertices.join(" ")}`, false] : [`${r.pattern}-free`, true],
    ),
  );
}

await init();
$("show").onclick = guarded(showWindow);
$("circle").onclick = guarded(showCircle);
$("detect").onclick = guarded(runDetect);
guarded(showWindow)();
