import init, { group_summary, find, experiment } from "./pkg/roth_demo.js";

const $ = (id) => document.getElementById(id);

function fail(out, e) {
  out.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = e instanceof Error ? e.message : String(e);
  out.append(p);
}

function inspect() {
  const out = $("group-out");
  try {
    const g = JSON.parse(group_summary($("group").value));
    out.innerHTML = "";
    const p = document.createElement("p");
    p.textContent = `${g.name}: order ${g.order}, ${g.abelian ? "abelian" : "non-abelian"}, ` +
      `exponent ${g.exponent}, center of order ${g.center_size}, ${g.subgroups.length} subgroups ` +
      `(click one to use it as H)`;
    const list = document.createElement("div");
    list.className = "subgroups";
    for (const h of g.subgroups) {
      const s = document.createElement("span");
      s.textContent = `{${h.elements.join(",")}}`;
      s.title = `order ${h.order}${h.abelian ? ", abelian" : ""}`;
      s.onclick = () => { $("subgroup").value = h.elements.join(","); };
      list.append(s);
    }
    out.append(p, list);
  } catch (e) {
    fail(out, e);
  }
}

function board(order, rows, members, witness) {
  const key = (p) => p.join(",");
  const inSet = new Set(members.map(key));
  const hits = new Set((witness ? witness.points : []).map(key));
  const el = document.createElement("div");
  el.className = "board";
  el.style.gridTemplateColumns = `repeat(${order}, 14px)`;
  for (let a = 0; a < rows; a++) {
    for (let b = 0; b < order; b++) {
      const p = rows === 1 ? [b] : [a, b];
      const cell = document.createElement("div");
      if (hits.has(key(p))) cell.className = "hit";
      else if (inSet.has(key(p))) cell.className = "in";
      cell.title = `(${p.join(",")})`;
      el.append(cell);
    }
  }
  return el;
}

function search() {
  const out = $("search-out");
  try {
    const r = JSON.parse(find($("group").value, $("subgroup").value, $("kind").value,
      $("method").value, Number($("density").value), Number($("seed").value)));
    out.innerHTML = "";
    const p = document.createElement("p");
    const rows = r.members.length && r.members[0].length === 1 ? 1 : r.order;
    if (r.found) {
      const pts = r.witness.points.map((q) => `(${q.join(",")})`).join(" ");
      const d = r.witness.parameter === undefined ? "" : ` with d = ${r.witness.parameter}`;
      p.textContent = `${r.members.length} points; found ${r.kind}${d}: ${pts}`;
    } else {
      p.textContent = `${r.members.length} points; no ${r.kind} configuration found`;
    }
    out.append(p, board(r.order, rows, r.members, r.witness));
    if (r.trace) {
      const pre = document.createElement("pre");
      pre.textContent = r.trace.stages.map((s) =>
        `${s.name.padEnd(24)} ${String(s.count).padStart(7)}${s.note ? "  " + s.note : ""}`).join("\n") +
        `\noutcome: ${r.trace.outcome.status} at ${r.trace.outcome.stage}`;
      out.append(pre);
    }
  } catch (e) {
    fail(out, e);
  }
}

function run() {
  const out = $("exp-out");
  try {
    const r = JSON.parse(experiment($("group").value, $("subgroup").value, $("kind").value,
      $("densities").value, Number($("trials").value), Number($("seed").value)));
    out.innerHTML = "";
    const p = document.createElement("p");
    p.textContent = `${r.kind} on ${r.group}: fraction of ${r.trials} random sets containing a configuration`;
    const bars = document.createElement("div");
    bars.className = "bars";
    r.densities.forEach((d, i) => {
      const bar = document.createElement("div");
      bar.style.height = `${Math.max(1, 150 * r.hit_fraction[i])}px`;
      bar.innerHTML = `<b>${r.hit_fraction[i].toFixed(2)}</b><span>${d}</span>`;
      bars.append(bar);
    });
    out.append(p, bars);
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("inspect").onclick = inspect;
$("search").onclick = search;
$("run").onclick = run;
inspect();
