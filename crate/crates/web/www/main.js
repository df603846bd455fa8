import init, { queryOrder, turboTrace, listBler } from "./pkg/grand_turbo_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function report(el, err) {
  el.textContent = String(err);
  el.className = "error";
}

// Minimal line plot: series = [{ label, points: [[x, y], ...] }].
function plot(canvas, series, { logY = false, xLabel = "", yLabel = "" } = {}) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 48;
  ctx.clearRect(0, 0, w, h);
  const ty = (y) => (logY ? Math.log10(y) : y);
  const pts = series.flatMap((s) => s.points).filter(([, y]) => !logY || y > 0);
  if (pts.length === 0) {
    ctx.fillText("no nonzero points", pad, h / 2);
    return;
  }
  const xs = pts.map(([x]) => x), ys = pts.map(([, y]) => ty(y));
  let [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) { x0 -= 1; x1 += 1; }
  if (logY) { y0 = Math.floor(y0); y1 = Math.ceil(y1); }
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const sx = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((ty(y) - y0) / (y1 - y0)) * (h - 2 * pad);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#222";
  ctx.fillText(xLabel, w / 2, h - 12);
  ctx.fillText(yLabel, 4, pad - 12);
  ctx.fillText(x0.toFixed(2), pad, h - pad + 14);
  ctx.fillText(x1.toFixed(2), w - pad - 24, h - pad + 14);
  ctx.fillText(logY ? `1e${y1}` : y1.toFixed(2), 4, pad + 4);
  ctx.fillText(logY ? `1e${y0}` : y0.toFixed(2), 4, h - pad);
  series.forEach((s, i) => {
    const hue = (i * 67) % 360;
    ctx.strokeStyle = ctx.fillStyle = `hsl(${hue}, 65%, 40%)`;
    ctx.beginPath();
    s.points.filter(([, y]) => !logY || y > 0).forEach(([x, y], j) => {
      j === 0 ? ctx.moveTo(sx(x), sy(y)) : ctx.lineTo(sx(x), sy(y));
    });
    ctx.stroke();
    ctx.fillText(s.label, w - pad - 90, pad + 14 + 14 * i);
  });
}

function showOrder() {
  const out = $("qo-out");
  try {
    const v = JSON.parse(queryOrder(num("qo-n"), num("qo-c"), num("qo-count")));
    out.className = "";
    out.textContent = v.patterns
      .map((p, i) => `${String(i).padStart(4)}  w_T=${String(p.w_t).padStart(3)}  w_H=${p.w_h}  {${p.ranks.join(", ")}}`)
      .join("\n");
  } catch (e) {
    report(out, e);
  }
}

function showTrace() {
  const note = $("tt-note");
  try {
    const v = JSON.parse(turboTrace(num("tt-ebn0"), $("tt-kind").value, num("tt-param"),
      num("tt-iters"), num("tt-frames"), 1));
    const series = v.stages.map((s) => ({
      label: `update ${s.stage} (${s.axis})`,
      points: s.profile.map((y, r) => [r + 1, y]),
    }));
    plot($("tt-plot"), series, { xLabel: "rank", yLabel: "mean |soft input|" });
    note.className = "";
    note.textContent = `${v.code}, ${v.frames} frames, BER ${v.ber.toExponential(2)}`;
  } catch (e) {
    report(note, e);
  }
}

function showBler() {
  const note = $("lb-note");
  try {
    const v = JSON.parse(listBler($("lb-code").value, $("lb-kind").value, num("lb-param"),
      num("lb-start"), num("lb-stop"), num("lb-step"), num("lb-frames"), 1));
    plot($("lb-plot"), [{ label: "BLER", points: v.points.map((p) => [p.eb_n0_db, p.bler]) }],
      { logY: true, xLabel: "Eb/N0 (dB)", yLabel: "BLER" });
    note.className = "";
    note.textContent = v.points
      .map((p) => `${p.eb_n0_db} dB: ${p.block_errors}/${p.frames}, ${p.mean_queries.toFixed(1)} queries`)
      .join("; ");
  } catch (e) {
    report(note, e);
  }
}

init().then(() => {
  $("status").textContent = "Ready. Runs happen in this tab and block it while they work.";
  $("qo-run").onclick = showOrder;
  $("tt-run").onclick = showTrace;
  $("lb-run").onclick = showBler;
  showOrder();
}, (e) => report($("status"), e));
