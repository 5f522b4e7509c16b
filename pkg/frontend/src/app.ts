// Assembles the workbench: three zoomable SVG panels over one store, plus
// table, detail and metrics.  All coordination flows through the store —
// panels never talk to each other directly.

import { ApiClient } from "./api";
import { clear, htmlEl, svgEl } from "./dom";
import { renderBundles } from "./panels/bundles";
import { renderDetail } from "./panels/detail";
import { renderMetrics } from "./panels/metrics";
import { renderNetwork } from "./panels/network";
import { renderScatter } from "./panels/scatter";
import { renderTable } from "./panels/table";
import { WorkbenchStore, type WorkbenchState } from "./store";
import {
  cameraTransform,
  identityCamera,
  pan,
  zoomAround,
  type Camera,
  type PanelSize,
} from "./transform";
import type { OverlayName, StudyStatus } from "./types";

export const PANEL_SIZE: PanelSize = { width: 520, height: 420, margin: 30 };

/** A zoom/pan wrapper around one SVG view; rendering happens in `world`. */
export class ZoomablePanel {
  readonly svg: SVGSVGElement;
  readonly world: SVGGElement;
  private camera: Camera = identityCamera();
  private dragging: { x: number; y: number } | null = null;

  constructor(readonly title: string, size: PanelSize = PANEL_SIZE) {
    this.svg = svgEl("svg", {
      width: size.width,
      height: size.height,
      viewBox: `0 0 ${size.width} ${size.height}`,
      class: "panel-svg",
    });
    this.world = svgEl("g", { "data-role": "world" });
    this.svg.appendChild(this.world);
    this.svg.addEventListener("wheel", (ev) => this.onWheel(ev as WheelEvent));
    this.svg.addEventListener("mousedown", (ev) => {
      this.dragging = { x: ev.clientX, y: ev.clientY };
    });
    this.svg.addEventListener("mousemove", (ev) => {
      if (!this.dragging) return;
      this.camera = pan(this.camera, ev.clientX - this.dragging.x, ev.clientY - this.dragging.y);
      this.dragging = { x: ev.clientX, y: ev.clientY };
      this.applyCamera();
    });
    for (const done of ["mouseup", "mouseleave"]) {
      this.svg.addEventListener(done, () => {
        this.dragging = null;
      });
    }
  }

  private onWheel(ev: WheelEvent): void {
    ev.preventDefault();
    const rect = this.svg.getBoundingClientRect();
    const factor = Math.exp(-ev.deltaY / 200);
    this.camera = zoomAround(this.camera, factor, ev.clientX - rect.left, ev.clientY - rect.top);
    this.applyCamera();
  }

  resetCamera(): void {
    this.camera = identityCamera();
    this.applyCamera();
  }

  private applyCamera(): void {
    this.world.setAttribute("transform", cameraTransform(this.camera));
  }
}

export class App {
  readonly store: WorkbenchStore;
  private readonly mapPanel = new ZoomablePanel("document map");
  private readonly bundlePanel = new ZoomablePanel("citation bundles");
  private readonly networkPanel = new ZoomablePanel("citation network");
  private tableBox!: HTMLElement;
  private detailBox!: HTMLElement;
  private metricsBox!: HTMLElement;
  private statusBar!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    api: ApiClient = new ApiClient(""),
  ) {
    this.store = new WorkbenchStore(api);
    this.buildLayout();
    this.store.subscribe((state) => this.render(state));
    this.render(this.store.getState());
  }

  private buildLayout(): void {
    clear(this.root);
    const corpusForm = htmlEl("div", { class: "corpus-form" });
    const input = htmlEl("textarea", {
      id: "bibtex-input",
      rows: "6",
      placeholder: "Paste a BibTeX corpus...",
    }) as HTMLTextAreaElement;
    const open = htmlEl("button", { id: "open-project" }, "open corpus");
    open.addEventListener("click", () => void this.store.openProject(input.value));
    corpusForm.append(input, open);
    this.root.appendChild(corpusForm);

    this.statusBar = htmlEl("div", { class: "status-bar" });
    this.root.appendChild(this.statusBar);

    const overlayBar = htmlEl("div", { class: "overlay-bar" });
    const overlaySelect = htmlEl("select", { id: "overlay-select" }) as HTMLSelectElement;
    for (const name of ["none", "clusters", "expression", "knn"] as OverlayName[]) {
      overlaySelect.appendChild(htmlEl("option", { value: name }, name));
    }
    const expressionInput = htmlEl("input", {
      id: "expression-input",
      placeholder: "expression, e.g. model checking",
    }) as HTMLInputElement;
    const applyOverlay = () =>
      void this.store.setOverlay(
        overlaySelect.value as OverlayName,
        expressionInput.value.trim(),
      );
    overlaySelect.addEventListener("change", applyOverlay);
    expressionInput.addEventListener("change", applyOverlay);
    overlayBar.append(htmlEl("label", {}, "overlay:"), overlaySelect, expressionInput);
    this.root.appendChild(overlayBar);

    const panels = htmlEl("div", { class: "panels" });
    for (const panel of [this.mapPanel, this.bundlePanel, this.networkPanel]) {
      const box = htmlEl("div", { class: "panel" });
      box.appendChild(htmlEl("h4", {}, panel.title));
      box.appendChild(panel.svg as unknown as HTMLElement);
      panels.appendChild(box);
    }
    this.root.appendChild(panels);

    const lower = htmlEl("div", { class: "lower" });
    this.tableBox = htmlEl("div", { class: "table-box" });
    this.detailBox = htmlEl("div", { class: "detail-box" });
    this.metricsBox = htmlEl("div", { class: "metrics-box" });
    lower.append(this.tableBox, this.detailBox, this.metricsBox);
    this.root.appendChild(lower);
  }

  private render(state: WorkbenchState): void {
    this.statusBar.textContent = this.statusLine(state);
    const onPointClick = (studyId: string) => {
      void this.store.toggleSelected(studyId);
      void this.store.focus(studyId);
    };
    renderScatter(this.mapPanel.world, state, PANEL_SIZE, { onPointClick });
    renderBundles(this.bundlePanel.world, state, PANEL_SIZE, { onPointClick });
    renderNetwork(this.networkPanel.world, state, PANEL_SIZE, { onPointClick });
    renderTable(this.tableBox, state, {
      onDecide: (sid: string, status: StudyStatus) => void this.store.decide(sid, status),
      onFocus: (sid: string) => void this.store.focus(sid),
      onToggleSelect: (sid: string) => void this.store.toggleSelected(sid),
    });
    renderDetail(this.detailBox, state, {
      onDecide: (sid: string, status: StudyStatus) => void this.store.decide(sid, status),
      onClose: () => void this.store.focus(null),
    });
    renderMetrics(this.metricsBox, state, {
      onSetGold: (included: string[]) => void this.store.setGold(included),
    });
  }

  private statusLine(state: WorkbenchState): string {
    if (state.error) return `error: ${state.error}`;
    if (state.busy) return "working...";
    if (!state.projectId) return "no corpus loaded";
    const decided = Object.values(state.statuses).filter((s) => s !== "undecided").length;
    const parts = [
      `project ${state.projectId}`,
      `${state.nStudies} studies`,
      `${decided} decided`,
      `${state.selection.length} selected`,
    ];
    if (state.warnings.length) parts.push(`${state.warnings.length} warning(s)`);
    return parts.join(" · ");
  }
}
