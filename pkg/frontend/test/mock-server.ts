/**
 * In-memory stand-in for the session service, faithful to its HTTP
 * contract: same routes, same status codes, same error bodies, same
 * event-id replay semantics (dedupe is checked before anything else,
 * including expiry). A controllable clock and injectable failures let
 * tests exercise expiry and duplicate-send scenarios deterministically.
 */

import type { SocketLike } from "../src/channel";

const DURATION_MS = 600_000;

const PREDICATES = new Set([
  "prime",
  "positive",
  "even",
  "odd",
  ...Array.from({ length: 18 }, (_, i) => `divisible_${i + 3}`),
  ...Array.from({ length: 20 }, (_, i) => `greater_${i + 1}`),
]);

/** condition greater_2_a3_b8: undefined when x > 2, else 3x+8 */
function truth(x: number): number | null {
  return x > 2 ? null : 3 * x + 8;
}

const HINT =
  "Dr. Smith is pretty sure that:\n" +
  "1) wug is undefined when inputs are greater than 4\n" +
  "2) When wug is defined, b = 8";

const QUESTION_SCRIPT = [1, 3, -2, 10, 0, 5, -20, 4, 2, -1, 6, -5];

interface StoredResponse {
  status: number;
  body: unknown;
}

export interface InjectedFailure {
  match: "guess" | "prediction";
  /** reject-before: never reaches the server; drop-response: applied, reply lost */
  mode: "reject-before" | "drop-response";
}

interface TranscriptTurn {
  role: "teacher" | "participant";
  text: string;
  at: number;
}

export class FakeSocket implements SocketLike {
  onmessage: ((event: { data: string }) => void) | null = null;
  onclose: (() => void) | null = null;
  onerror: ((event: unknown) => void) | null = null;
  closed = false;

  close(): void {
    this.closed = true;
    this.onclose?.();
  }
}

function jsonResponse(status: number, body: unknown): Response {
  const shim = {
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    json: () => Promise.resolve(body),
  };
  return shim as unknown as Response;
}

export class MockServer {
  now = 1_000_000;
  createdAt = 0;
  sessionId = "mock-session-1";
  status: "active" | "expired" | "completed" = "active";
  transcript: TranscriptTurn[] = [];
  guesses: {
    predicate: string | null;
    slope: number | null;
    intercept: number | null;
    at: number;
  }[] = [];
  predictions: { input: number; predicted: string; correct: boolean }[] = [];
  failures: InjectedFailure[] = [];
  requestLog: string[] = [];
  private responses = new Map<string, StoredResponse>();
  private questionCursor = 0;
  private pendingInput: number | null = null;
  private lastAt = 0;
  private sockets: FakeSocket[] = [];
  private created = false;

  readonly fetchFn: typeof fetch = (input, init) =>
    this.handle(String(input), init);

  readonly socketFactory = (_url: string): SocketLike => {
    const socket = new FakeSocket();
    this.sockets.push(socket);
    return socket;
  };

  advance(ms: number): void {
    this.now += ms;
  }

  /** push a payload to every connected channel, like the real fan-out */
  push(payload: Record<string, unknown>): void {
    const doc = JSON.stringify({ ...payload, remaining_ms: this.remaining() });
    for (const socket of this.sockets) {
      if (!socket.closed) socket.onmessage?.({ data: doc });
    }
  }

  remaining(): number {
    if (this.status !== "active") return 0;
    return Math.max(0, this.createdAt + DURATION_MS - this.now);
  }

  private expired(): boolean {
    return this.now - this.createdAt >= DURATION_MS;
  }

  private stamp(): number {
    const at = Math.max(this.now, this.lastAt + 1);
    this.lastAt = at;
    return at;
  }

  private error(status: number, code: string, detail: string): Response {
    return jsonResponse(status, { error: code, detail });
  }

  private async handle(url: string, init?: RequestInit): Promise<Response> {
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    this.requestLog.push(`${method} ${path}`);
    const body = init?.body ? JSON.parse(String(init.body)) : {};

    if (method === "POST" && path === "/sessions") return this.create(body);
    const match = path.match(/^\/sessions\/([^/]+)(?:\/(\w+))?$/);
    if (!match) return this.error(404, "UnknownSession", `no route ${path}`);
    const [, sessionId, tail] = match;
    if (sessionId !== this.sessionId || !this.created) {
      return this.error(404, "UnknownSession", `no session '${sessionId}'`);
    }
    if (method === "POST" && tail === "prediction") {
      return this.guarded("prediction", body, () => this.prediction(body));
    }
    if (method === "POST" && tail === "guess") {
      return this.guarded("guess", body, () => this.guess(body));
    }
    if (method === "GET" && tail === "state") return jsonResponse(200, this.state());
    if (method === "GET" && tail === "report") return this.report();
    return this.error(404, "UnknownSession", `no route ${method} ${path}`);
  }

  /** event-id replay first, then injected failures, then the handler */
  private guarded(
    kind: "guess" | "prediction",
    body: { event_id?: string | null },
    apply: () => Response,
  ): Response {
    const eventId = body.event_id ?? undefined;
    if (eventId && this.responses.has(eventId)) {
      const stored = this.responses.get(eventId)!;
      return jsonResponse(stored.status, stored.body);
    }
    const planned = this.failures.findIndex((f) => f.match === kind);
    if (planned >= 0) {
      const [failure] = this.failures.splice(planned, 1);
      if (failure.mode === "reject-before") {
        throw new TypeError("network lost before the server saw it");
      }
      apply(); // applied server-side; the reply never makes it back
      throw new TypeError("network lost carrying the response back");
    }
    return apply();
  }

  private remember(eventId: string | null | undefined, status: number, body: unknown): Response {
    if (eventId) this.responses.set(eventId, { status, body });
    return jsonResponse(status, body);
  }

  private create(body: { condition?: string }): Response {
    this.created = true;
    this.createdAt = this.now;
    this.lastAt = this.now;
    this.pendingInput = QUESTION_SCRIPT[this.questionCursor++];
    const question = `What is wug(${this.pendingInput})?`;
    this.transcript.push({ role: "teacher", text: question, at: this.now });
    void body;
    return jsonResponse(201, {
      session: this.sessionId,
      hint: HINT,
      question,
      remaining_ms: this.remaining(),
    });
  }

  private prediction(body: { prediction?: unknown; event_id?: string | null }): Response {
    if (this.status === "active" && this.expired()) this.status = "expired";
    if (this.status !== "active") {
      return this.error(409, "SessionExpired", `session is ${this.status}`);
    }
    if (this.pendingInput === null) {
      return this.error(409, "NoOutstandingQuestion", "no examples left");
    }
    const raw = String(body.prediction ?? "").trim().toLowerCase();
    let predicted: number | null;
    if (raw === "undefined") predicted = null;
    else if (/^-?\d+$/.test(raw)) predicted = Number(raw);
    else return this.error(422, "UnparseablePrediction", `cannot read ${raw}`);

    const x = this.pendingInput;
    const label = truth(x);
    const correct = predicted === label;
    const at = this.stamp();
    const next =
      this.questionCursor < QUESTION_SCRIPT.length
        ? QUESTION_SCRIPT[this.questionCursor++]
        : null;
    let reply = `That's ${correct ? "correct" : "incorrect"}. wug(${x})=${
      label === null ? "undefined" : label
    }.`;
    if (next !== null) reply += ` What is wug(${next})?`;
    this.transcript.push({
      role: "participant",
      text: `wug(${x})=${predicted === null ? "undefined" : predicted}`,
      at,
    });
    this.transcript.push({ role: "teacher", text: reply, at });
    this.predictions.push({ input: x, predicted: raw, correct });
    this.pendingInput = next;
    const response = {
      input: x,
      label,
      correct,
      next_question: next,
      reply,
    };
    this.push({ kind: "prediction", event_id: body.event_id ?? null, at, ...response });
    return this.remember(body.event_id, 200, response);
  }

  private guess(body: {
    predicate?: string | null;
    slope?: number | null;
    intercept?: number | null;
    event_id?: string | null;
  }): Response {
    if (this.status === "active" && this.expired()) this.status = "expired";
    if (this.status !== "active") {
      return this.error(409, "SessionExpired", `session is ${this.status}`);
    }
    const predicate = body.predicate ?? null;
    const slope = body.slope ?? null;
    const intercept = body.intercept ?? null;
    if (predicate === null && slope === null && intercept === null) {
      return this.error(422, "EmptyGuess", "a guess needs at least one component");
    }
    if (predicate !== null && !PREDICATES.has(predicate)) {
      return this.error(422, "InvalidGuess", `unknown predicate '${predicate}'`);
    }
    const at = this.stamp();
    this.guesses.push({ predicate, slope, intercept, at });
    const response = { accepted: true, at };
    this.push({ kind: "guess", event_id: body.event_id ?? null, at, accepted: true });
    return this.remember(body.event_id, 200, response);
  }

  /** the GET /state document, as a test convenience */
  stateDoc(): Record<string, unknown> {
    return this.state();
  }

  private state(): Record<string, unknown> {
    if (this.status === "active" && this.expired()) this.status = "expired";
    return {
      session: this.sessionId,
      status: this.status,
      hint: HINT,
      transcript: [...this.transcript],
      guesses: [...this.guesses],
      pending_input: this.pendingInput,
      remaining_ms: this.remaining(),
    };
  }

  private report(): Response {
    if (this.status === "active" && this.expired()) this.status = "expired";
    if (this.status === "active") {
      return this.error(409, "SessionError", "session is still active");
    }
    this.status = "completed";
    const correct = this.predictions.filter((p) => p.correct).length;
    const accuracy = this.predictions.length
      ? correct / this.predictions.length
      : 0;
    const hold = this.guesses.length ? 1.5 : 0; // placeholder credit, shape only
    return jsonResponse(200, {
      session: this.sessionId,
      status: this.status,
      bonus: {
        guess_hold_credit: hold,
        prediction_credit: accuracy,
        total: hold + accuracy,
        base_pay: 4,
      },
      metrics: {
        predictions: this.predictions.length,
        prediction_accuracy: accuracy,
        guesses: this.guesses.length,
        final_correctness: 0,
        mean_correctness: 0,
      },
    });
  }
}
