// Bundled-citations panel: the document map's points with citation edges
// routed through the cluster hierarchy drawn underneath them.

import { DEFAULT_STROKE, HIGHLIGHT_STROKE, STATUS_COLORS } from "../colors";
import { clear, svgEl } from "../dom";
import { toPixels, type PanelSize } from "../transform";
import type { WorkbenchState } from "../store";

export interface BundleHandlers {
  onPointClick?: (studyId: string, event: MouseEvent) => void;
}

export function renderBundles(
  world: SVGGElement,
  state: WorkbenchState,
  size: PanelSize,
  handlers: BundleHandlers = {},
): void {
  clear(world);
  if (!state.bundles) return;

  const selected = new Set(state.selection);

  // edges first so nodes draw on top
  for (const edge of state.bundles.edges) {
    const d = edge.points
      .map((p, i) => {
        const [x, y] = toPixels(p.x, p.y, size);
        return `${i === 0 ? "M" : "L"} ${x} ${y}`;
      })
      .join(" ");
    const touched = selected.has(edge.source) || selected.has(edge.target);
    const path = svgEl("path", {
      d,
      fill: "none",
      stroke: touched ? HIGHLIGHT_STROKE : "#6baed6",
      "stroke-width": touched ? 2 : 1.2,
      "stroke-opacity": touched ? 0.95 : 0.6,
      "data-edge": `${edge.source}->${edge.target}`,
    });
    path.appendChild(svgEl("title")).textContent = `${edge.source} cites ${edge.target}`;
    world.appendChild(path);
  }

  for (const point of state.bundles.points) {
    const [cx, cy] = toPixels(point.x, point.y, size);
    const emphasized = selected.has(point.id);
    const circle = svgEl("circle", {
      cx,
      cy,
      r: 4,
      fill: STATUS_COLORS[state.statuses[point.id] ?? point.status],
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
}
