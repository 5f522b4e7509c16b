// Study table: the workhorse review surface.  Each row shows status and
// citation count and carries include/exclude/undecide buttons; clicking a
// row focuses the study in the detail panel.

import { STATUS_COLORS } from "../colors";
import { clear, htmlEl } from "../dom";
import type { WorkbenchState } from "../store";
import type { StudyStatus } from "../types";

export interface TableHandlers {
  onDecide?: (studyId: string, status: StudyStatus) => void;
  onFocus?: (studyId: string) => void;
  onToggleSelect?: (studyId: string) => void;
}

const DECISIONS: Array<[StudyStatus, string]> = [
  ["included", "include"],
  ["excluded", "exclude"],
  ["undecided", "undecide"],
];

export function renderTable(
  container: HTMLElement,
  state: WorkbenchState,
  handlers: TableHandlers = {},
): void {
  clear(container);
  const table = htmlEl("table", { class: "study-table" });
  const head = htmlEl("tr");
  for (const label of ["", "id", "title", "cited", "status", "decision"]) {
    head.appendChild(htmlEl("th", {}, label));
  }
  table.appendChild(head);

  const selected = new Set(state.selection);
  for (const study of state.studies) {
    const status = state.statuses[study.id] ?? study.status;
    const row = htmlEl("tr", {
      "data-study": study.id,
      class: selected.has(study.id) ? "selected" : "",
    });

    const checkbox = htmlEl("input", { type: "checkbox" }) as HTMLInputElement;
    checkbox.checked = selected.has(study.id);
    checkbox.addEventListener("change", () => handlers.onToggleSelect?.(study.id));
    row.appendChild(htmlEl("td")).appendChild(checkbox);

    row.appendChild(htmlEl("td", { class: "mono" }, study.id));
    const titleCell = htmlEl("td", { class: "title" }, study.title);
    titleCell.addEventListener("click", () => handlers.onFocus?.(study.id));
    row.appendChild(titleCell);
    row.appendChild(htmlEl("td", {}, String(study.cited_count)));

    const chip = htmlEl("td", { class: "status" }, status);
    chip.style.color = STATUS_COLORS[status];
    row.appendChild(chip);

    const actions = htmlEl("td", { class: "actions" });
    for (const [value, label] of DECISIONS) {
      const button = htmlEl("button", { "data-decide": value }, label);
      button.disabled = status === value;
      button.addEventListener("click", () => handlers.onDecide?.(study.id, value));
      actions.appendChild(button);
    }
    row.appendChild(actions);
    table.appendChild(row);
  }
  container.appendChild(table);
}
