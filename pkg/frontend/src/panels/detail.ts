// Detail panel for the focused study: full text fields, bibliography, and
// the same decision buttons as the table.

import { STATUS_COLORS } from "../colors";
import { clear, htmlEl } from "../dom";
import type { WorkbenchState } from "../store";
import type { StudyStatus } from "../types";

export interface DetailHandlers {
  onDecide?: (studyId: string, status: StudyStatus) => void;
  onClose?: () => void;
}

export function renderDetail(
  container: HTMLElement,
  state: WorkbenchState,
  handlers: DetailHandlers = {},
): void {
  clear(container);
  const study = state.focused;
  if (!study) {
    container.appendChild(
      htmlEl("p", { class: "placeholder" }, "Select a study to see its content."),
    );
    return;
  }

  const header = htmlEl("div", { class: "detail-header" });
  header.appendChild(htmlEl("h3", {}, study.title));
  const close = htmlEl("button", { class: "close" }, "×");
  close.addEventListener("click", () => handlers.onClose?.());
  header.appendChild(close);
  container.appendChild(header);

  const status = state.statuses[study.id] ?? study.status;
  const badge = htmlEl("span", { class: "status-badge" }, status);
  badge.style.color = STATUS_COLORS[status];
  container.appendChild(badge);
  container.appendChild(
    htmlEl("p", { class: "meta" }, `${study.id} · cited by ${study.cited_count} in corpus`),
  );
  container.appendChild(htmlEl("p", { class: "abstract" }, study.abstract || "(no abstract)"));
  if (study.keywords.length) {
    container.appendChild(htmlEl("p", { class: "keywords" }, study.keywords.join(", ")));
  }

  const buttons = htmlEl("div", { class: "actions" });
  for (const value of ["included", "excluded", "undecided"] as StudyStatus[]) {
    const button = htmlEl("button", { "data-decide": value }, value);
    button.disabled = status === value;
    button.addEventListener("click", () => handlers.onDecide?.(study.id, value));
    buttons.appendChild(button);
  }
  container.appendChild(buttons);

  if (study.references.length) {
    container.appendChild(htmlEl("h4", {}, `References (${study.references.length})`));
    const list = htmlEl("ol", { class: "references" });
    for (const ref of study.references) {
      list.appendChild(htmlEl("li", {}, ref));
    }
    container.appendChild(list);
  }
}
