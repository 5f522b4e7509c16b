// Typed client for the review service.  Every call maps 1:1 onto a
// documented route; nothing here invents state the server doesn't have.

import type {
  AnyView,
  BundlesView,
  Decision,
  MapView,
  Metrics,
  NetworkView,
  OverlayName,
  ProjectConfig,
  ProjectCreated,
  SessionState,
  StudyDetail,
  StudySummary,
  ViewKind,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export interface ViewQuery {
  overlay?: OverlayName;
  expression?: string;
  focus?: string;
  k?: number;
}

async function failFrom(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && body.detail !== undefined) {
      detail = Array.isArray(body.detail) ? body.detail.join("; ") : String(body.detail);
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, detail);
}

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    public readonly baseUrl: string = "",
    fetchFn?: FetchLike,
  ) {
    // bind so an injected window.fetch keeps its receiver
    const f = fetchFn ?? globalThis.fetch;
    if (!f) throw new Error("no fetch implementation available");
    this.fetchFn = (url, init) => f(url, init);
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) await failFrom(response);
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown, method = "POST"): Promise<T> {
    return this.request<T>(path, {
      method,
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createProject(
    bibtex: string,
    config?: ProjectConfig,
    startedAt?: number,
  ): Promise<ProjectCreated> {
    const payload: Record<string, unknown> = { bibtex };
    if (config) payload.config = config;
    if (startedAt !== undefined) payload.started_at = startedAt;
    return this.post<ProjectCreated>("/projects", payload);
  }

  private viewPath(pid: string, kind: ViewKind, query: ViewQuery = {}): string {
    const params = new URLSearchParams();
    if (query.overlay && query.overlay !== "none") params.set("overlay", query.overlay);
    if (query.expression !== undefined) params.set("expression", query.expression);
    if (query.focus !== undefined) params.set("focus", query.focus);
    if (query.k !== undefined) params.set("k", String(query.k));
    const qs = params.toString();
    return `/projects/${pid}/views/${kind}${qs ? "?" + qs : ""}`;
  }

  getView(pid: string, kind: "map", query?: ViewQuery): Promise<MapView>;
  getView(pid: string, kind: "bundles", query?: ViewQuery): Promise<BundlesView>;
  getView(pid: string, kind: "network", query?: ViewQuery): Promise<NetworkView>;
  getView(pid: string, kind: ViewKind, query?: ViewQuery): Promise<AnyView>;
  getView(pid: string, kind: ViewKind, query: ViewQuery = {}): Promise<AnyView> {
    return this.request<AnyView>(this.viewPath(pid, kind, query));
  }

  async getViewSvg(pid: string, kind: ViewKind, query: ViewQuery = {}): Promise<string> {
    const params = this.viewPath(pid, kind, query);
    const sep = params.includes("?") ? "&" : "?";
    const response = await this.fetchFn(this.baseUrl + params + sep + "format=svg");
    if (!response.ok) await failFrom(response);
    return response.text();
  }

  decide(
    pid: string,
    studyId: string,
    status: "included" | "excluded" | "undecided",
    at?: number,
    note = "",
  ): Promise<Decision> {
    return this.post<Decision>(`/projects/${pid}/session/decisions`, {
      study_id: studyId,
      status,
      at: at ?? null,
      note,
    });
  }

  setSelection(pid: string, studyIds: string[]): Promise<{ selection: string[] }> {
    return this.post(`/projects/${pid}/session/selection`, { study_ids: studyIds });
  }

  setGold(pid: string, included: string[]): Promise<{ count: number }> {
    return this.post(`/projects/${pid}/gold`, { included }, "PUT");
  }

  getMetrics(pid: string): Promise<Metrics> {
    return this.request<Metrics>(`/projects/${pid}/session/metrics`);
  }

  getSession(pid: string): Promise<SessionState> {
    return this.request<SessionState>(`/projects/${pid}/session`);
  }

  getStudies(pid: string): Promise<{ studies: StudySummary[] }> {
    return this.request(`/projects/${pid}/studies`);
  }

  getStudy(pid: string, studyId: string): Promise<StudyDetail> {
    return this.request<StudyDetail>(`/projects/${pid}/studies/${studyId}`);
  }
}
