// Shared workbench state: one source of truth for statuses, selection and
// focus, so a decision made in any panel is visible in every other panel.

import { ApiClient, ApiError } from "./api";
import type {
  BundlesView,
  MapView,
  Metrics,
  NetworkView,
  OverlayName,
  ProjectConfig,
  StudyDetail,
  StudyStatus,
  StudySummary,
} from "./types";

export interface WorkbenchState {
  projectId: string | null;
  nStudies: number;
  statuses: Record<string, StudyStatus>;
  selection: string[];
  focused: StudyDetail | null;
  overlay: OverlayName;
  expression: string;
  map: MapView | null;
  bundles: BundlesView | null;
  network: NetworkView | null;
  studies: StudySummary[];
  metrics: Metrics | null;
  warnings: string[];
  error: string | null;
  busy: boolean;
}

export type Listener = (state: WorkbenchState) => void;

function emptyState(): WorkbenchState {
  return {
    projectId: null,
    nStudies: 0,
    statuses: {},
    selection: [],
    focused: null,
    overlay: "none",
    expression: "",
    map: null,
    bundles: null,
    network: null,
    studies: [],
    metrics: null,
    warnings: [],
    error: null,
    busy: false,
  };
}

export class WorkbenchStore {
  private state: WorkbenchState = emptyState();
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  getState(): WorkbenchState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(patch: Partial<WorkbenchState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  private fail(err: unknown): void {
    const message = err instanceof ApiError ? err.detail : String(err);
    this.set({ error: message, busy: false });
  }

  private requireProject(): string {
    const pid = this.state.projectId;
    if (!pid) throw new Error("no project open");
    return pid;
  }

  async openProject(bibtex: string, config?: ProjectConfig): Promise<void> {
    this.set({ ...emptyState(), busy: true });
    try {
      const created = await this.api.createProject(bibtex, config);
      this.set({
        projectId: created.project_id,
        nStudies: created.n_studies,
        warnings: created.warnings,
      });
      await this.refreshAll();
      this.set({ busy: false, error: null });
    } catch (err) {
      this.fail(err);
    }
  }

  /** Re-pull every view plus table and session state from the server. */
  async refreshAll(): Promise<void> {
    const pid = this.requireProject();
    const [map, bundles, network, studies, session] = await Promise.all([
      this.api.getView(pid, "map", this.viewQuery()),
      this.api.getView(pid, "bundles"),
      this.api.getView(pid, "network"),
      this.api.getStudies(pid),
      this.api.getSession(pid),
    ]);
    this.set({
      map,
      bundles,
      network,
      studies: studies.studies,
      statuses: session.statuses,
      selection: session.selection,
    });
  }

  private viewQuery() {
    if (this.state.overlay === "expression" && this.state.expression) {
      return { overlay: this.state.overlay, expression: this.state.expression };
    }
    if (this.state.overlay === "knn" && this.state.focused) {
      return { overlay: this.state.overlay, focus: this.state.focused.id };
    }
    if (this.state.overlay === "status" || this.state.overlay === "clusters") {
      return { overlay: this.state.overlay };
    }
    return {};
  }

  /**
   * Record a decision.  The server's log is authoritative; the local
   * status table is patched from its response rather than refetched.
   */
  async decide(studyId: string, status: StudyStatus): Promise<void> {
    try {
      const pid = this.requireProject();
      const decision = await this.api.decide(pid, studyId, status);
      this.set({
        statuses: { ...this.state.statuses, [decision.study_id]: decision.status },
        studies: this.state.studies.map((s) =>
          s.id === decision.study_id ? { ...s, status: decision.status } : s,
        ),
        error: null,
      });
      if (this.state.focused?.id === studyId) {
        this.set({ focused: { ...this.state.focused, status } });
      }
      if (this.state.metrics) await this.loadMetrics();
    } catch (err) {
      this.fail(err);
    }
  }

  /** Replace the shared selection (round-trips through the server). */
  async select(studyIds: string[]): Promise<void> {
    try {
      const pid = this.requireProject();
      const result = await this.api.setSelection(pid, studyIds);
      this.set({ selection: result.selection, error: null });
    } catch (err) {
      this.fail(err);
    }
  }

  async toggleSelected(studyId: string): Promise<void> {
    const current = this.state.selection;
    const next = current.includes(studyId)
      ? current.filter((sid) => sid !== studyId)
      : [...current, studyId];
    await this.select(next);
  }

  async focus(studyId: string | null): Promise<void> {
    if (studyId === null) {
      this.set({ focused: null });
      return;
    }
    try {
      const pid = this.requireProject();
      const detail = await this.api.getStudy(pid, studyId);
      this.set({ focused: detail, error: null });
      if (this.state.overlay === "knn") await this.reloadMap();
    } catch (err) {
      this.fail(err);
    }
  }

  async setOverlay(overlay: OverlayName, expression = ""): Promise<void> {
    this.set({ overlay, expression });
    if (overlay === "knn" && !this.state.focused) return; // wait for a focus
    if (overlay === "expression" && !expression) return;
    await this.reloadMap();
  }

  private async reloadMap(): Promise<void> {
    try {
      const pid = this.requireProject();
      const map = await this.api.getView(pid, "map", this.viewQuery());
      this.set({ map, error: null });
    } catch (err) {
      this.fail(err);
    }
  }

  async setGold(included: string[]): Promise<void> {
    try {
      const pid = this.requireProject();
      await this.api.setGold(pid, included);
      await this.loadMetrics();
    } catch (err) {
      this.fail(err);
    }
  }

  async loadMetrics(): Promise<void> {
    try {
      const pid = this.requireProject();
      const metrics = await this.api.getMetrics(pid);
      this.set({ metrics, error: null });
    } catch (err) {
      this.fail(err);
    }
  }

  statusOf(studyId: string): StudyStatus {
    return this.state.statuses[studyId] ?? "undecided";
  }
}
