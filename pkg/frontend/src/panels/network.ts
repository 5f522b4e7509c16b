// Citation-network panel: spring-layout positions from the server, direct
// citations in dark blue, shared-reference edges in light blue with width
// by count.  Studies without citation ties sit in a strip along the bottom.

import { DEFAULT_STROKE, HIGHLIGHT_STROKE, STATUS_COLORS } from "../colors";
import { clear, svgEl } from "../dom";
import { toPixels, type PanelSize } from "../transform";
import type { WorkbenchState } from "../store";
import type { StudyStatus } from "../types";

export interface NetworkHandlers {
  onPointClick?: (studyId: string, event: MouseEvent) => void;
}

const ISOLATED_STRIP = 30;

export function renderNetwork(
  world: SVGGElement,
  state: WorkbenchState,
  size: PanelSize,
  handlers: NetworkHandlers = {},
): void {
  clear(world);
  const view = state.network;
  if (!view) return;

  const selected = new Set(state.selection);
  const simSize = {
    ...size,
    height: size.height - (view.isolated.length ? ISOLATED_STRIP : 0),
  };
  const pos = new Map<string, [number, number]>();
  for (const node of view.nodes) {
    pos.set(node.id, toPixels(node.x, node.y, simSize));
  }

  for (const edge of view.shared_edges) {
    const a = pos.get(edge.source);
    const b = pos.get(edge.target);
    if (!a || !b) continue;
    const line = svgEl("line", {
      x1: a[0], y1: a[1], x2: b[0], y2: b[1],
      stroke: "#9ecae1",
      "stroke-width": 0.8 + 0.6 * Math.min(edge.weight, 4),
      "data-shared": `${edge.source}->${edge.target}`,
    });
    line.appendChild(svgEl("title")).textContent =
      `${edge.source} and ${edge.target} share ${edge.weight} reference(s)`;
    world.appendChild(line);
  }
  for (const edge of view.cite_edges) {
    const a = pos.get(edge.source);
    const b = pos.get(edge.target);
    if (!a || !b) continue;
    world.appendChild(
      svgEl("line", {
        x1: a[0], y1: a[1], x2: b[0], y2: b[1],
        stroke: "#08519c",
        "stroke-width": 1.4,
        "data-cite": `${edge.source}->${edge.target}`,
      }),
    );
  }

  const drawNode = (sid: string, cx: number, cy: number, status: StudyStatus, isolated: boolean) => {
    const emphasized = selected.has(sid);
    const circle = svgEl("circle", {
      cx,
      cy,
      r: isolated ? 4.8 : 6,
      fill: STATUS_COLORS[state.statuses[sid] ?? status],
      stroke: emphasized ? HIGHLIGHT_STROKE : DEFAULT_STROKE,
      "stroke-width": emphasized ? 2.5 : 0.8,
      "data-study": sid,
    });
    if (isolated) circle.setAttribute("stroke-dasharray", "2,1");
    circle.appendChild(svgEl("title")).textContent = isolated
      ? `${sid} (no citation links)`
      : sid;
    if (handlers.onPointClick) {
      circle.addEventListener("click", (ev) =>
        handlers.onPointClick!(sid, ev as MouseEvent),
      );
    }
    world.appendChild(circle);
  };

  for (const node of view.nodes) {
    const [cx, cy] = pos.get(node.id)!;
    drawNode(node.id, cx, cy, node.status, false);
  }

  if (view.isolated.length) {
    const usable = size.width - 2 * size.margin;
    const step = view.isolated.length > 1 ? usable / (view.isolated.length - 1) : 0;
    const y = size.height - ISOLATED_STRIP / 2;
    view.isolated.forEach((sid, i) => {
      const x = view.isolated.length > 1 ? size.margin + i * step : size.width / 2;
      drawNode(sid, x, y, view.isolated_status[sid] ?? "undecided", true);
    });
  }
}
