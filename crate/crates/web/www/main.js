import init, { minmaxWidth, conway, maxminWidth } from "./pkg/convex_division_web.js";

const $ = (id) => document.getElementById(id);

const presets = {
  square: () => [[0, 0], [1, 0], [1, 1], [0, 1]],
  triangle: () => [[0, 0], [1, 0], [0.5, Math.sqrt(3) / 2]],
  rectangle: () => [[0, 0], [4, 0], [4, 1], [0, 1]],
  random: () => {
    const k = 3 + Math.floor(Math.random() * 8);
    const angles = Array.from({ length: k }, () => Math.random() * 2 * Math.PI).sort((a, b) => a - b);
    const a = 0.6 + Math.random(), b = 0.6 + Math.random();
    return angles.map((t) => [+(a * Math.cos(t)).toFixed(4), +(b * Math.sin(t)).toFixed(4)]);
  },
};

function show(run) {
  $("message").textContent = "";
  try {
    const answer = JSON.parse(run($("vertices").value, Number($("n").value)));
    $("drawing").innerHTML = answer.svg;
    const pieces = answer.perSubsetValues.map((v) => v.toFixed(6)).join(", ");
    $("summary").textContent = `value ${answer.value.toFixed(9)}; pieces: ${pieces}`;
  } catch (e) {
    $("message").textContent = e.message ?? String(e);
  }
}

await init();
for (const button of document.querySelectorAll("[data-preset]")) {
  button.addEventListener("click", () => {
    $("vertices").value = JSON.stringify(presets[button.dataset.preset]());
  });
}
$("minmax-width").addEventListener("click", () => show(minmaxWidth));
$("conway").addEventListener("click", () => show(conway));
$("maxmin-width").addEventListener("click", () => show((v) => maxminWidth(v)));
