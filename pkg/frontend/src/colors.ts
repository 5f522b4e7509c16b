// Color assignments match the server's static SVG export so screenshots
// and live views agree.

import type { StudyStatus } from "./types";

export const STATUS_COLORS: Record<StudyStatus, string> = {
  included: "#2ca02c",
  excluded: "#d62728",
  undecided: "#7f7f7f",
};

export const CLUSTER_PALETTE = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#aec7e8",
];

export const HIGHLIGHT_STROKE = "#ff7f0e";
export const DEFAULT_STROKE = "#333333";

export function clusterColor(cluster: number): string {
  const color = CLUSTER_PALETTE[((cluster % CLUSTER_PALETTE.length) + CLUSTER_PALETTE.length) % CLUSTER_PALETTE.length];
  return color ?? CLUSTER_PALETTE[0]!;
}

/** 0 = absent = black, 1 = corpus max = white. */
export function shadeColor(shade: number): string {
  const level = Math.round(255 * Math.min(1, Math.max(0, shade)));
  const hex = level.toString(16).padStart(2, "0");
  return `#${hex}${hex}${hex}`;
}
