/**
 * HTTP client for the session service.
 *
 * Every mutating call carries a client-generated event id. The server
 * remembers the response per id, so retrying after a lost response
 * replays the stored answer instead of double-applying — the client
 * therefore retries ONLY network failures (the request may or may not
 * have landed) and never retries an HTTP error (the server answered).
 */

import type {
  CreateSessionResponse,
  GuessAck,
  GuessForm,
  PredictionResponse,
  ReportDoc,
  StateDoc,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

export interface ApiOptions {
  base?: string;
  fetchFn?: typeof fetch;
  /** retries per call after the first attempt */
  retries?: number;
  retryDelayMs?: number;
  makeEventId?: () => string;
}

let counter = 0;

function defaultEventId(): string {
  if (typeof crypto !== "undefined" && crypto.randomUUID) {
    return crypto.randomUUID();
  }
  counter += 1;
  return `evt-${Date.now()}-${counter}`;
}

const sleep = (ms: number) => new Promise((r) => setTimeout(r, ms));

export class SessionApi {
  private base: string;
  private fetchFn: typeof fetch;
  private retries: number;
  private retryDelayMs: number;
  readonly makeEventId: () => string;

  constructor(options: ApiOptions = {}) {
    this.base = options.base ?? "";
    this.fetchFn = options.fetchFn ?? fetch.bind(globalThis);
    this.retries = options.retries ?? 3;
    this.retryDelayMs = options.retryDelayMs ?? 250;
    this.makeEventId = options.makeEventId ?? defaultEventId;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    let lastFailure: unknown;
    for (let attempt = 0; attempt <= this.retries; attempt++) {
      if (attempt > 0) await sleep(this.retryDelayMs * attempt);
      let response: Response;
      try {
        response = await this.fetchFn(this.base + path, {
          method,
          headers: body === undefined ? {} : { "content-type": "application/json" },
          body: body === undefined ? undefined : JSON.stringify(body),
        });
      } catch (failure) {
        lastFailure = failure; // network-level: retry with the same body (same event_id)
        continue;
      }
      if (!response.ok) {
        const doc = await response.json().catch(() => ({}));
        throw new ApiError(
          response.status,
          (doc as { error?: string }).error ?? "HttpError",
          (doc as { detail?: string }).detail ?? response.statusText,
        );
      }
      return (await response.json()) as T;
    }
    throw lastFailure instanceof Error
      ? lastFailure
      : new Error("request failed after retries");
  }

  createSession(body: {
    condition?: string;
    student_type?: string;
    seed?: number;
  } = {}): Promise<CreateSessionResponse> {
    return this.request("POST", "/sessions", body);
  }

  submitPrediction(
    sessionId: string,
    prediction: string,
    eventId?: string,
  ): Promise<PredictionResponse> {
    return this.request("POST", `/sessions/${sessionId}/prediction`, {
      prediction,
      event_id: eventId ?? this.makeEventId(),
    });
  }

  submitGuess(
    sessionId: string,
    guess: GuessForm,
    eventId?: string,
  ): Promise<GuessAck> {
    return this.request("POST", `/sessions/${sessionId}/guess`, {
      predicate: guess.predicate,
      slope: guess.slope,
      intercept: guess.intercept,
      event_id: eventId ?? this.makeEventId(),
    });
  }

  state(sessionId: string): Promise<StateDoc> {
    return this.request("GET", `/sessions/${sessionId}/state`);
  }

  report(sessionId: string): Promise<ReportDoc> {
    return this.request("GET", `/sessions/${sessionId}/report`);
  }
}
