import type {
  AnnotationRecord,
  GlossaryEntry,
  NerResult,
  PunctuateResult,
  RenderMode,
  StreamDelta,
  TargetLanguage,
  Task,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

/** Thin client for the gateway HTTP API; the only way the UI reaches the backend. */
export class GatewayClient {
  private token: string | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "content-type": "application/json" };
    if (this.token) headers["authorization"] = `Bearer ${this.token}`;
    return headers;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      ...init,
      headers: { ...this.headers(), ...(init?.headers as Record<string, string>) },
    });
    const body = await response.json();
    if (!response.ok) {
      const error = body?.error ?? { code: "internal_error", message: "request failed" };
      throw new ApiError(error.code, error.message, response.status);
    }
    return body as T;
  }

  async register(email: string, password: string, displayName = ""): Promise<string> {
    const body = await this.request<{ token: string }>("/api/auth/register", {
      method: "POST",
      body: JSON.stringify({ email, password, display_name: displayName }),
    });
    this.token = body.token;
    return body.token;
  }

  async login(email: string, password: string): Promise<string> {
    const body = await this.request<{ token: string }>("/api/auth/login", {
      method: "POST",
      body: JSON.stringify({ email, password }),
    });
    this.token = body.token;
    return body.token;
  }

  punctuate(text: string, mode: RenderMode, backend?: string): Promise<PunctuateResult> {
    return this.request("/api/punctuate", {
      method: "POST",
      body: JSON.stringify({ text, mode, backend }),
    });
  }

  ner(text: string, backend?: string): Promise<NerResult> {
    return this.request("/api/ner", {
      method: "POST",
      body: JSON.stringify({ text, backend }),
    });
  }

  async glossary(text: string): Promise<GlossaryEntry[]> {
    const body = await this.request<{ entries: GlossaryEntry[] }>(
      `/api/glossary?text=${encodeURIComponent(text)}`,
    );
    return body.entries;
  }

  /**
   * Stream translation deltas as an async iterable of NDJSON events.
   * Aborting the signal cancels the request mid-stream.
   */
  async *translate(
    text: string,
    target: TargetLanguage,
    signal?: AbortSignal,
  ): AsyncGenerator<StreamDelta> {
    const response = await this.fetchImpl(this.baseUrl + "/api/translate", {
      method: "POST",
      headers: this.headers(),
      body: JSON.stringify({ text, target }),
      signal,
    });
    if (!response.ok) {
      const body = await response.json();
      const error = body?.error ?? { code: "internal_error", message: "request failed" };
      throw new ApiError(error.code, error.message, response.status);
    }
    yield* parseNdjson(response, signal);
  }

  createAnnotation(
    task: Task,
    inputText: string,
    modelOutput: unknown,
    params: Record<string, unknown> = {},
  ): Promise<AnnotationRecord> {
    return this.request("/api/annotations", {
      method: "POST",
      body: JSON.stringify({
        task,
        input_text: inputText,
        model_output: modelOutput,
        params,
      }),
    });
  }

  async listAnnotations(): Promise<AnnotationRecord[]> {
    const body = await this.request<{ records: AnnotationRecord[] }>("/api/annotations");
    return body.records;
  }

  editAnnotation(id: string, editedOutput: unknown): Promise<AnnotationRecord> {
    return this.request(`/api/annotations/${id}`, {
      method: "PATCH",
      body: JSON.stringify({ edited_output: editedOutput }),
    });
  }
}

export async function* parseNdjson(
  response: Response,
  signal?: AbortSignal,
): AsyncGenerator<StreamDelta> {
  const reader = response.body?.getReader();
  if (!reader) throw new Error("response has no readable body");
  const decoder = new TextDecoder();
  let buffered = "";
  try {
    while (true) {
      if (signal?.aborted) return;
      const { done, value } = await reader.read();
      if (done) break;
      buffered += decoder.decode(value, { stream: true });
      let newline;
      while ((newline = buffered.indexOf("\n")) >= 0) {
        const line = buffered.slice(0, newline).trim();
        buffered = buffered.slice(newline + 1);
        if (line) yield JSON.parse(line) as StreamDelta;
      }
    }
    if (buffered.trim()) yield JSON.parse(buffered) as StreamDelta;
  } finally {
    reader.releaseLock();
  }
}
