// Metrics panel: paste a gold-standard id list, then watch agreement
// update as decisions come in.

import { clear, htmlEl } from "../dom";
import type { WorkbenchState } from "../store";

export interface MetricsHandlers {
  onSetGold?: (included: string[]) => void;
}

export function parseGoldText(text: string): string[] {
  return text
    .split(/\r?\n/)
    .map((line) => line.split("#", 1)[0]!.trim())
    .filter((line) => line.length > 0);
}

const ROWS: Array<[keyof import("../types").Metrics, string]> = [
  ["n_studies", "studies"],
  ["included", "included"],
  ["excluded", "excluded"],
  ["undecided", "undecided"],
  ["correct", "correct"],
  ["incorrect", "incorrect"],
  ["false_negatives", "false negatives"],
  ["false_positives", "false positives"],
  ["elapsed_minutes", "elapsed (min)"],
];

export function renderMetrics(
  container: HTMLElement,
  state: WorkbenchState,
  handlers: MetricsHandlers = {},
): void {
  clear(container);
  container.appendChild(htmlEl("h4", {}, "Gold standard"));
  const input = htmlEl("textarea", {
    rows: "4",
    placeholder: "one included study id per line",
  }) as HTMLTextAreaElement;
  container.appendChild(input);
  const apply = htmlEl("button", { class: "apply-gold" }, "score against gold");
  apply.addEventListener("click", () => handlers.onSetGold?.(parseGoldText(input.value)));
  container.appendChild(apply);

  if (!state.metrics) return;
  const table = htmlEl("table", { class: "metrics" });
  for (const [key, label] of ROWS) {
    const row = htmlEl("tr", { "data-metric": key });
    row.appendChild(htmlEl("td", {}, label));
    const value = state.metrics[key];
    row.appendChild(
      htmlEl("td", {}, key === "elapsed_minutes" ? value.toFixed(1) : String(value)),
    );
    table.appendChild(row);
  }
  container.appendChild(table);
}
