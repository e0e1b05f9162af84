// Thin client for the labeling/transition service.

import type {
  ActionJson,
  InteractResponseJson,
  SessionCreatedJson,
  ViewJson,
} from "./types";

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class SessionClient {
  private sessionId: string | null = null;

  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = fetch.bind(globalThis),
  ) {}

  get id(): string | null {
    return this.sessionId;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      const body = await resp.text();
      throw new ServiceError(resp.status, `${resp.status} ${path}: ${body}`);
    }
    return (await resp.json()) as T;
  }

  async createSession(
    datasetId: string,
    style?: string,
    view?: Partial<ViewJson> & { time_of_interest?: string },
  ): Promise<SessionCreatedJson> {
    const body: Record<string, unknown> = { dataset_id: datasetId };
    if (style) body.style = style;
    if (view) body.view = view;
    const doc = await this.request<SessionCreatedJson>("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    this.sessionId = doc.session_id;
    return doc;
  }

  async interact(action: ActionJson): Promise<InteractResponseJson> {
    if (!this.sessionId) throw new Error("no session");
    return this.request<InteractResponseJson>(
      `/sessions/${this.sessionId}/interact`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ action }),
      },
    );
  }

  async state(): Promise<{ view: ViewJson; labeling: Record<string, unknown> }> {
    if (!this.sessionId) throw new Error("no session");
    return this.request(`/sessions/${this.sessionId}/state`);
  }
}
