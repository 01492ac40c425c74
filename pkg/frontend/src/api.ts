/** Typed client for the scribble JSON API. */

import type { MonologueView, SessionView, ErrorBody } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly field?: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (cause) {
      throw new ApiError(0, "Unreachable", `service unreachable: ${cause}`);
    }
    if (!response.ok) {
      let detail: ErrorBody = { code: "Unknown", message: response.statusText };
      try {
        detail = (await response.json()) as ErrorBody;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail.code, detail.message, detail.field);
    }
    return (await response.json()) as T;
  }

  private async requestText(path: string): Promise<string> {
    const response = await this.fetchImpl(this.baseUrl + path, { method: "GET" });
    if (!response.ok) {
      const detail = (await response.json()) as ErrorBody;
      throw new ApiError(response.status, detail.code, detail.message, detail.field);
    }
    return response.text();
  }

  createDialogue(input: {
    keywords: string;
    genre: string;
    creativity: number;
  }): Promise<SessionView> {
    return this.request("POST", "/api/dialogues", input);
  }

  getDialogue(id: string): Promise<SessionView> {
    return this.request("GET", `/api/dialogues/${id}`);
  }

  continueDialogue(id: string, text: string): Promise<SessionView> {
    return this.request("POST", `/api/dialogues/${id}/continue`, { text });
  }

  finalizeDialogue(id: string): Promise<SessionView> {
    return this.request("POST", `/api/dialogues/${id}/finalize`);
  }

  fetchDialogueExport(id: string): Promise<string> {
    return this.requestText(`/api/dialogues/${id}/export`);
  }

  createMonologue(input: {
    sentence: string;
    emotions: string;
    creativity: number;
  }): Promise<MonologueView> {
    return this.request("POST", "/api/monologues", input);
  }

  swapEmotion(id: string, emotion: string): Promise<MonologueView> {
    return this.request("POST", `/api/monologues/${id}/swap-emotion`, { emotion });
  }

  fetchMonologueExport(id: string): Promise<string> {
    return this.requestText(`/api/monologues/${id}/export`);
  }
}
