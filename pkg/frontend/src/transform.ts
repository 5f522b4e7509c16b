// View-box math shared by the three SVG panels.  Server coordinates live
// in the unit square with y pointing up; screens want pixels with y down.

export interface PanelSize {
  width: number;
  height: number;
  margin: number;
}

export interface Camera {
  scale: number;
  tx: number;
  ty: number;
}

export const MIN_SCALE = 0.5;
export const MAX_SCALE = 40;

export function identityCamera(): Camera {
  return { scale: 1, tx: 0, ty: 0 };
}

/** Unit-square (y up) -> base pixel coordinates (y down), margin-padded. */
export function toPixels(x: number, y: number, size: PanelSize): [number, number] {
  const w = size.width - 2 * size.margin;
  const h = size.height - 2 * size.margin;
  return [size.margin + x * w, size.margin + (1 - y) * h];
}

/** Inverse of toPixels, for hit-testing against server coordinates. */
export function toUnit(px: number, py: number, size: PanelSize): [number, number] {
  const w = size.width - 2 * size.margin;
  const h = size.height - 2 * size.margin;
  return [(px - size.margin) / w, 1 - (py - size.margin) / h];
}

export function applyCamera(px: number, py: number, cam: Camera): [number, number] {
  return [px * cam.scale + cam.tx, py * cam.scale + cam.ty];
}

/**
 * Zoom by `factor` keeping the screen point (cx, cy) fixed.  The pixel
 * under the cursor maps to itself, so zooming feels anchored.
 */
export function zoomAround(cam: Camera, factor: number, cx: number, cy: number): Camera {
  const scale = clampScale(cam.scale * factor);
  const applied = scale / cam.scale;
  return {
    scale,
    tx: cx - (cx - cam.tx) * applied,
    ty: cy - (cy - cam.ty) * applied,
  };
}

export function pan(cam: Camera, dx: number, dy: number): Camera {
  return { scale: cam.scale, tx: cam.tx + dx, ty: cam.ty + dy };
}

function clampScale(scale: number): number {
  return Math.min(MAX_SCALE, Math.max(MIN_SCALE, scale));
}

export function cameraTransform(cam: Camera): string {
  return `translate(${cam.tx} ${cam.ty}) scale(${cam.scale})`;
}
