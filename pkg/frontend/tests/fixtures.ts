// A small fixed corpus the fake server serves up.  Eight studies: six
// connected through citations/shared references, s06 isolated, s07 a
// control point.

import type {
  BundledEdge,
  MapPoint,
  NetworkEdge,
  SharedEdge,
  StudyDetail,
} from "../src/types";

export const STUDY_IDS = ["s00", "s01", "s02", "s03", "s04", "s05", "s06", "s07"];

export const MAP_POINTS: MapPoint[] = STUDY_IDS.map((id, i) => ({
  id,
  x: (i % 4) / 3,
  y: Math.floor(i / 4) / 1,
  is_control: id === "s07",
  status: "undecided",
  cluster: i % 3,
}));

export const CLUSTERS = [
  { cluster: 0, topics: ["mining", "commits"] },
  { cluster: 1, topics: ["testing"] },
  { cluster: 2, topics: ["search", "ranking"] },
];

function straightEdge(source: string, target: string): BundledEdge {
  const a = MAP_POINTS.find((p) => p.id === source)!;
  const b = MAP_POINTS.find((p) => p.id === target)!;
  return {
    source,
    target,
    points: [
      { x: a.x, y: a.y, t: 0 },
      { x: (a.x + b.x) / 2 + 0.05, y: (a.y + b.y) / 2 + 0.05, t: 0.5 },
      { x: b.x, y: b.y, t: 1 },
    ],
  };
}

export const BUNDLE_EDGES: BundledEdge[] = [
  straightEdge("s00", "s02"),
  straightEdge("s01", "s02"),
  straightEdge("s04", "s05"),
];

export const CITE_EDGES: NetworkEdge[] = BUNDLE_EDGES.map(({ source, target }) => ({
  source,
  target,
}));

export const SHARED_EDGES: SharedEdge[] = [
  { source: "s00", target: "s01", weight: 2 },
  { source: "s03", target: "s04", weight: 1 },
];

export const ISOLATED = ["s06"];

export const NETWORK_NODES = STUDY_IDS.filter((id) => !ISOLATED.includes(id)).map(
  (id, i) => ({
    id,
    x: (i % 4) / 3,
    y: i / 7,
    status: "undecided" as const,
  }),
);

export const STUDIES: StudyDetail[] = STUDY_IDS.map((id, i) => ({
  id,
  title: `Study ${i} on topic ${i % 3}`,
  abstract: `Abstract text for study ${i}.`,
  keywords: [`kw${i % 3}`, "review"],
  status: "undecided",
  cited_count: CITE_EDGES.filter((e) => e.target === id).length,
  references: [`Ref A volume ${i}`, `Ref B volume ${i}`],
}));

// word occurrences for the expression overlay; s03 is the corpus max
export const EXPRESSION_COUNTS: Record<string, number> = {
  s00: 0, s01: 1, s02: 2, s03: 4, s04: 2, s05: 0, s06: 1, s07: 0,
};

export const SAMPLE_BIBTEX = STUDIES.map(
  (s) =>
    `@article{${s.id},\n  title = {${s.title}},\n  abstract = {${s.abstract}},\n  keywords = {${s.keywords.join(", ")}}\n}`,
).join("\n\n");
