"""Static SVG for the three views.  Positions come in normalized to the
unit square and are mapped into a margin-padded canvas; colors encode the
active overlay (status, cluster, expression shade)."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .bundles import BundleLayout
from .network import NetworkLayout
from .projection import DocumentMapLayout, normalize_unit_square
from .session import Status

__all__ = ["render_map_svg", "render_bundles_svg", "render_network_svg"]

STATUS_COLORS = {
    Status.INCLUDED: "#2ca02c",
    Status.EXCLUDED: "#d62728",
    Status.UNDECIDED: "#7f7f7f",
}
DEFAULT_FILL = "#4682b4"
CLUSTER_PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#aec7e8",
]
GRADIENT_LIGHT = "#9ecae1"
GRADIENT_DARK = "#08306b"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _scale(
    positions: dict[str, tuple[float, float]], width: int, height: int, margin: int
) -> dict[str, tuple[float, float]]:
    unit = normalize_unit_square(positions)
    w, h = width - 2 * margin, height - 2 * margin
    return {
        sid: (margin + x * w, margin + (1.0 - y) * h) for sid, (x, y) in unit.items()
    }


def _shade_color(s: float) -> str:
    """0 (absent) -> black, 1 (corpus max) -> white."""
    level = round(255 * max(0.0, min(1.0, s)))
    return f"#{level:02x}{level:02x}{level:02x}"


def _fill_for(
    sid: str,
    statuses: dict[str, Status] | None,
    clusters: dict[str, int] | None,
    shade: dict[str, float] | None,
) -> str:
    if shade is not None:
        return _shade_color(shade.get(sid, 0.0))
    if statuses is not None:
        return STATUS_COLORS[statuses.get(sid, Status.UNDECIDED)]
    if clusters is not None:
        return CLUSTER_PALETTE[clusters.get(sid, 0) % len(CLUSTER_PALETTE)]
    return DEFAULT_FILL


def _document(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def render_map_svg(
    layout: DocumentMapLayout,
    *,
    statuses: dict[str, Status] | None = None,
    clusters: dict[str, int] | None = None,
    topics: dict[int, list[str]] | None = None,
    shade: dict[str, float] | None = None,
    highlight: set[str] | None = None,
    width: int = 800,
    height: int = 600,
    margin: int = 40,
    radius: float = 5.0,
) -> str:
    scaled = _scale(layout.positions, width, height, margin)
    body = ['<rect width="100%" height="100%" fill="white"/>']
    controls = set(layout.control_ids)
    for sid, (x, y) in scaled.items():
        fill = _fill_for(sid, statuses, clusters, shade)
        stroke = "#ff7f0e" if highlight and sid in highlight else "#333333"
        stroke_w = "2.5" if highlight and sid in highlight else "0.8"
        r = radius * 1.25 if sid in controls else radius
        body.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="{fill}" '
            f'stroke="{stroke}" stroke-width="{stroke_w}">'
            f"<title>{escape(sid)}</title></circle>"
        )
    if clusters is not None and topics:
        body.extend(_topic_boxes(scaled, clusters, topics))
    return _document(width, height, body)


def _topic_boxes(
    scaled: dict[str, tuple[float, float]],
    clusters: dict[str, int],
    topics: dict[int, list[str]],
) -> list[str]:
    out = []
    for c in sorted(topics):
        members = [scaled[sid] for sid, lbl in clusters.items() if lbl == c and sid in scaled]
        if not members:
            continue
        cx = sum(p[0] for p in members) / len(members)
        cy = sum(p[1] for p in members) / len(members)
        label = ", ".join(topics[c])
        out.append(
            f'<g class="topic-box"><rect x="{_fmt(cx - 60)}" y="{_fmt(cy - 22)}" '
            f'width="120" height="16" fill="white" fill-opacity="0.8" '
            f'stroke="{CLUSTER_PALETTE[c % len(CLUSTER_PALETTE)]}"/>'
            f'<text x="{_fmt(cx)}" y="{_fmt(cy - 10)}" text-anchor="middle" '
            f'font-size="10" font-family="sans-serif">{escape(label)}</text></g>'
        )
    return out


def render_bundles_svg(
    map_layout: DocumentMapLayout,
    bundles: BundleLayout,
    *,
    statuses: dict[str, Status] | None = None,
    width: int = 800,
    height: int = 600,
    margin: int = 40,
    radius: float = 4.0,
) -> str:
    scaled = _scale(map_layout.positions, width, height, margin)
    xs = [p[0] for p in map_layout.positions.values()]
    ys = [p[1] for p in map_layout.positions.values()]
    lo_x, span_x = (min(xs), max(xs) - min(xs)) if xs else (0.0, 0.0)
    lo_y, span_y = (min(ys), max(ys) - min(ys)) if ys else (0.0, 0.0)

    def rescale(pt: tuple[float, float]) -> tuple[float, float]:
        # bundle points live in map coordinates; apply the map's transform
        ux = (pt[0] - lo_x) / span_x if span_x > 0 else 0.5
        uy = (pt[1] - lo_y) / span_y if span_y > 0 else 0.5
        return (
            margin + ux * (width - 2 * margin),
            margin + (1.0 - uy) * (height - 2 * margin),
        )

    defs = ["<defs>"]
    paths = []
    for i, edge in enumerate(bundles.edges):
        pts = [rescale(p) for p in edge.points]
        gid = f"bg{i:04d}"
        x1, y1 = pts[0]
        x2, y2 = pts[-1]
        defs.append(
            f'<linearGradient id="{gid}" gradientUnits="userSpaceOnUse" '
            f'x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}">'
            f'<stop offset="0" stop-color="{GRADIENT_LIGHT}"/>'
            f'<stop offset="1" stop-color="{GRADIENT_DARK}"/></linearGradient>'
        )
        d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts)
        paths.append(
            f'<path d="{d}" fill="none" stroke="url(#{gid})" stroke-width="1.2" '
            f'stroke-opacity="0.75"><title>{escape(edge.source)} cites '
            f"{escape(edge.target)}</title></path>"
        )
    defs.append("</defs>")

    body = ['<rect width="100%" height="100%" fill="white"/>', *defs, *paths]
    for sid, (x, y) in scaled.items():
        fill = _fill_for(sid, statuses, None, None)
        body.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="{fill}" '
            f'stroke="#333333" stroke-width="0.8">'
            f"<title>{escape(sid)}</title></circle>"
        )
    return _document(width, height, body)


def render_network_svg(
    layout: NetworkLayout,
    *,
    statuses: dict[str, Status] | None = None,
    width: int = 800,
    height: int = 600,
    margin: int = 40,
    radius: float = 6.0,
) -> str:
    strip = 30  # isolated studies sit in a row under the simulated area
    sim_height = height - (strip if layout.isolated else 0)
    scaled = _scale(layout.positions, width, sim_height, margin)

    body = ['<rect width="100%" height="100%" fill="white"/>']
    for (a, b), w in layout.graph.shared_edges.items():
        if a in scaled and b in scaled:
            (x1, y1), (x2, y2) = scaled[a], scaled[b]
            body.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                f'stroke="#9ecae1" stroke-width="{_fmt(0.8 + 0.6 * min(w, 4))}">'
                f"<title>{escape(a)} and {escape(b)} share {w} reference(s)</title></line>"
            )
    for a, b in layout.graph.cite_edges:
        if a in scaled and b in scaled:
            (x1, y1), (x2, y2) = scaled[a], scaled[b]
            body.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                f'stroke="#08519c" stroke-width="1.4">'
                f"<title>{escape(a)} cites {escape(b)}</title></line>"
            )
    for sid, (x, y) in scaled.items():
        fill = _fill_for(sid, statuses, None, None)
        body.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="{fill}" '
            f'stroke="#333333" stroke-width="0.8">'
            f"<title>{escape(sid)}</title></circle>"
        )
    if layout.isolated:
        step = (width - 2 * margin) / max(1, len(layout.isolated) - 1)
        y = height - strip / 2
        for i, sid in enumerate(layout.isolated):
            x = margin + (i * step if len(layout.isolated) > 1 else (width - 2 * margin) / 2)
            fill = _fill_for(sid, statuses, None, None)
            body.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius * 0.8)}" '
                f'fill="{fill}" stroke="#333333" stroke-width="0.8" stroke-dasharray="2,1">'
                f"<title>{escape(sid)} (no citation links)</title></circle>"
            )
    return _document(width, height, body)
