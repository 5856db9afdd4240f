// Thin typed client. The transport is injectable so contract tests can run
// against recorded fixtures without a server.

import type {
  Article,
  AspectName,
  Choice,
  Meta,
  NetworkPayload,
  QueryPayload,
  TargetPayload,
  UploadPayload,
} from "./types.js";

export interface Transport {
  (url: string, init?: { method?: string; body?: string; headers?: Record<string, string> }): Promise<{
    ok: boolean;
    status: number;
    json(): Promise<unknown>;
  }>;
}

export class ApiRequestError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

export interface Tracking {
  keyword?: string;
  author?: string;
}

export class ApiClient {
  constructor(
    private transport: Transport,
    private base = "",
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.transport(this.base + path);
    return this.unwrap<T>(response);
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.transport(this.base + path, {
      method: "POST",
      body: JSON.stringify(body),
      headers: { "content-type": "application/json" },
    });
    return this.unwrap<T>(response);
  }

  private async unwrap<T>(response: {
    ok: boolean;
    status: number;
    json(): Promise<unknown>;
  }): Promise<T> {
    const data = (await response.json()) as T & { error?: { code: string; message: string } };
    if (!response.ok) {
      const error = data?.error ?? { code: "HttpError", message: `status ${response.status}` };
      throw new ApiRequestError(error.code, error.message, response.status);
    }
    return data;
  }

  meta(): Promise<Meta> {
    return this.get("/api/meta");
  }

  article(id: string): Promise<Article> {
    return this.get(`/api/article/${encodeURIComponent(id)}`);
  }

  query(criteria: Record<AspectName, Choice>, tracking: Tracking | null): Promise<QueryPayload> {
    const body: Record<string, unknown> = { criteria };
    if (tracking && (tracking.keyword || tracking.author)) {
      body.tracking = tracking;
    }
    return this.post("/api/query", body);
  }

  network(criteria: Record<AspectName, Choice>, members: string[]): Promise<NetworkPayload> {
    return this.post("/api/network", { criteria, members });
  }

  target(criteria: Record<AspectName, Choice>, id: string): Promise<TargetPayload> {
    return this.post("/api/target", { criteria, id });
  }

  uploadAbstract(text: string): Promise<UploadPayload> {
    return this.post("/api/upload-abstract", { text });
  }

  search(keyword: string | null, author: string | null): Promise<{ tracked: string[]; count: number }> {
    const params = new URLSearchParams();
    if (keyword) params.set("keyword", keyword);
    if (author) params.set("author", author);
    return this.get(`/api/search?${params.toString()}`);
  }
}
