// Document-map panel: one circle per study in the shared unit-square
// coordinates.  Fill encodes the active overlay; selection and the knn
// neighborhood get highlight strokes.

import { clusterColor, DEFAULT_STROKE, HIGHLIGHT_STROKE, shadeColor, STATUS_COLORS } from "../colors";
import { svgEl } from "../dom";
import { clear } from "../dom";
import { toPixels, type PanelSize } from "../transform";
import type { WorkbenchState } from "../store";
import type { MapPoint } from "../types";

export interface ScatterHandlers {
  onPointClick?: (studyId: string, event: MouseEvent) => void;
}

function fillFor(point: MapPoint, state: WorkbenchState): string {
  const overlay = state.map?.overlay;
  if (state.overlay === "expression" && overlay && overlay.name === "expression") {
    return shadeColor(overlay.shade[point.id] ?? 0);
  }
  if (state.overlay === "clusters") {
    return clusterColor(point.cluster);
  }
  // default view doubles as the status overlay: review state is the thing
  // a screener needs visible at all times
  return STATUS_COLORS[state.statuses[point.id] ?? point.status];
}

export function renderScatter(
  world: SVGGElement,
  state: WorkbenchState,
  size: PanelSize,
  handlers: ScatterHandlers = {},
): void {
  clear(world);
  if (!state.map) return;

  const selected = new Set(state.selection);
  const overlay = state.map.overlay;
  const neighborhood = new Set<string>();
  if (state.overlay === "knn" && overlay && overlay.name === "knn") {
    neighborhood.add(overlay.focus);
    for (const sid of overlay.neighbors) neighborhood.add(sid);
  }

  for (const point of state.map.points) {
    const [cx, cy] = toPixels(point.x, point.y, size);
    const emphasized = selected.has(point.id) || neighborhood.has(point.id);
    const circle = svgEl("circle", {
      cx,
      cy,
      r: point.is_control ? 6.25 : 5,
      fill: fillFor(point, state),
      stroke: emphasized ? HIGHLIGHT_STROKE : DEFAULT_STROKE,
      "stroke-width": emphasized ? 2.5 : 0.8,
      "data-study": point.id,
    });
    circle.appendChild(svgEl("title")).textContent = point.id;
    if (handlers.onPointClick) {
      circle.addEventListener("click", (ev) =>
        handlers.onPointClick!(point.id, ev as MouseEvent),
      );
    }
    world.appendChild(circle);
  }

  if (state.overlay === "clusters" && state.map.clusters.length) {
    drawTopicLabels(world, state, size);
  }
}

function drawTopicLabels(world: SVGGElement, state: WorkbenchState, size: PanelSize): void {
  const byCluster = new Map<number, Array<[number, number]>>();
  for (const point of state.map!.points) {
    const list = byCluster.get(point.cluster) ?? [];
    list.push(toPixels(point.x, point.y, size));
    byCluster.set(point.cluster, list);
  }
  for (const entry of state.map!.clusters) {
    const members = byCluster.get(entry.cluster);
    if (!members || members.length === 0) continue;
    const cx = members.reduce((acc, p) => acc + p[0], 0) / members.length;
    const cy = members.reduce((acc, p) => acc + p[1], 0) / members.length;
    const label = svgEl("text", {
      x: cx,
      y: cy - 12,
      "text-anchor": "middle",
      "font-size": 11,
      "font-family": "sans-serif",
      fill: clusterColor(entry.cluster),
      "paint-order": "stroke",
      stroke: "white",
      "stroke-width": 3,
      class: "topic-label",
    });
    label.textContent = entry.topics.join(", ");
    world.appendChild(label);
  }
}
