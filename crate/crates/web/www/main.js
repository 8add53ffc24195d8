import init, { evaluate, weyl_expansion, verify_suite } from "./pkg/opalg_web.js";

const $ = (id) => document.getElementById(id);

function show(id, fn) {
  const out = $(id);
  try {
    out.textContent = fn();
    out.classList.remove("error");
  } catch (e) {
    out.textContent = e.message ?? String(e);
    out.classList.add("error");
  }
}

function bind(formId, outputId, fn) {
  $(formId).addEventListener("submit", (ev) => {
    ev.preventDefault();
    show(outputId, fn);
  });
}

await init();

bind("eval-form", "eval-output", () => evaluate($("eval-input").value, $("eval-format").value));

bind("expand-form", "expand-output", () => {
  const r = JSON.parse(weyl_expansion(+$("expand-n").value, +$("expand-m").value, $("expand-deriv").value));
  const lines = [
    `${r.monomial}: ${r.count} arrangements, weight ${r.weight} each`,
    ...r.words,
  ];
  if (r.normal_form) lines.push("", `normal form: ${r.normal_form}`);
  return lines.join("\n");
});

bind("verify-form", "verify-output", () =>
  verify_suite($("verify-suite").value, +$("verify-degree").value, +$("verify-cases").value, +$("verify-seed").value),
);
