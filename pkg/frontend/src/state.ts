/**
 * Client-side session state and reconciliation.
 *
 * Two sources feed the store: HTTP responses to this client's own sends,
 * and the WebSocket channel (which also echoes those sends back). Events
 * are deduplicated by their client event id, and teacher text is only
 * ever taken from server payloads — the client never fabricates a
 * teacher turn. A channel "state" snapshot is authoritative: the message
 * list is rebuilt in the server's transcript order.
 */

import type {
  ChannelEvent,
  CreateSessionResponse,
  GuessAck,
  GuessDoc,
  GuessForm,
  PredictionResponse,
  StateDoc,
  TranscriptTurn,
} from "./types";

export interface Message {
  role: "teacher" | "participant";
  text: string;
  /** true while an optimistic send awaits its server ack */
  pending: boolean;
  eventId?: string;
}

export interface SessionView {
  sessionId: string | null;
  hint: string;
  messages: Message[];
  guesses: GuessDoc[];
  pendingGuesses: { eventId: string; form: GuessForm }[];
  remainingMs: number;
  expired: boolean;
  questionOpen: boolean;
  /** the input the teacher is currently asking about, if any */
  pendingInputNumber: number | null;
}

type Listener = (view: SessionView) => void;

export class SessionStore {
  private view: SessionView = {
    sessionId: null,
    hint: "",
    messages: [],
    guesses: [],
    pendingGuesses: [],
    remainingMs: 0,
    expired: false,
    questionOpen: false,
    pendingInputNumber: null,
  };
  private listeners: Listener[] = [];
  private seenEventIds = new Set<string>();

  get current(): SessionView {
    return this.view;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    listener(this.view);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.view);
  }

  private patch(changes: Partial<SessionView>): void {
    this.view = { ...this.view, ...changes };
    this.emit();
  }

  seed(created: CreateSessionResponse): void {
    const asked = created.question.match(/wug\((-?\d+)\)/);
    this.patch({
      sessionId: created.session,
      hint: created.hint,
      messages: [{ role: "teacher", text: created.question, pending: false }],
      remainingMs: created.remaining_ms,
      expired: created.remaining_ms <= 0,
      questionOpen: true,
      pendingInputNumber: asked ? Number(asked[1]) : null,
    });
  }

  /** Optimistic participant turn; reconciled by resolvePrediction. */
  beginPrediction(text: string, eventId: string): void {
    this.seenEventIds.add(eventId);
    this.patch({
      messages: [
        ...this.view.messages,
        { role: "participant", text, pending: true, eventId },
      ],
    });
  }

  resolvePrediction(eventId: string, response: PredictionResponse): void {
    const messages = this.view.messages.map((m) =>
      m.eventId === eventId ? { ...m, pending: false } : m,
    );
    messages.push({ role: "teacher", text: response.reply, pending: false, eventId });
    this.patch({
      messages,
      questionOpen: response.next_question !== null,
      pendingInputNumber: response.next_question,
    });
  }

  /** Roll the optimistic turn back (rejected send, e.g. session expired). */
  abandonPrediction(eventId: string): void {
    this.patch({
      messages: this.view.messages.filter((m) => m.eventId !== eventId),
    });
  }

  beginGuess(form: GuessForm, eventId: string): void {
    this.seenEventIds.add(eventId);
    this.patch({
      pendingGuesses: [...this.view.pendingGuesses, { eventId, form }],
    });
  }

  resolveGuess(eventId: string, ack: GuessAck): void {
    const pending = this.view.pendingGuesses.find((p) => p.eventId === eventId);
    if (!pending) return;
    this.patch({
      pendingGuesses: this.view.pendingGuesses.filter((p) => p.eventId !== eventId),
      guesses: [
        ...this.view.guesses,
        {
          predicate: pending.form.predicate,
          slope: pending.form.slope,
          intercept: pending.form.intercept,
          at: ack.at,
        },
      ],
    });
  }

  abandonGuess(eventId: string): void {
    this.patch({
      pendingGuesses: this.view.pendingGuesses.filter((p) => p.eventId !== eventId),
    });
  }

  syncRemaining(remainingMs: number): void {
    const expired = remainingMs <= 0;
    if (remainingMs === this.view.remainingMs && expired === this.view.expired) return;
    this.patch({ remainingMs, expired: this.view.expired || expired });
  }

  markExpired(): void {
    if (!this.view.expired) this.patch({ expired: true, remainingMs: 0 });
  }

  applyChannel(event: ChannelEvent): void {
    if (typeof event.remaining_ms === "number") {
      this.syncRemaining(event.remaining_ms);
    }
    switch (event.kind) {
      case "state":
        this.applySnapshot(event as unknown as StateDoc);
        return;
      case "expired":
      case "completed":
        this.markExpired();
        return;
      case "prediction": {
        // our own send, already reconciled from the HTTP response
        if (event.event_id && this.seenEventIds.has(event.event_id)) return;
        const reply = event.reply;
        if (typeof reply === "string") {
          const next = event.next_question;
          this.patch({
            messages: [
              ...this.view.messages,
              { role: "teacher", text: reply, pending: false },
            ],
            questionOpen: next !== null,
            pendingInputNumber: typeof next === "number" ? next : null,
          });
        }
        return;
      }
      case "guess":
        // correctness never travels the channel; nothing to show beyond
        // the history we already hold from the ack
        return;
      case "created":
        return;
    }
  }

  /** Rebuild from a server snapshot; server transcript order wins. */
  applySnapshot(state: StateDoc): void {
    this.patch({
      sessionId: state.session,
      hint: state.hint,
      messages: state.transcript.map((turn: TranscriptTurn) => ({
        role: turn.role,
        text: turn.text,
        pending: false,
      })),
      guesses: [...state.guesses],
      remainingMs: state.remaining_ms,
      expired: state.status !== "active" || state.remaining_ms <= 0,
      questionOpen: state.pending_input !== null,
      pendingInputNumber: state.pending_input,
    });
  }
}

export function describeGuess(guess: GuessForm | GuessDoc): string {
  const parts: string[] = [];
  if (guess.predicate !== null) parts.push(`undefined when ${guess.predicate}`);
  if (guess.slope !== null) parts.push(`a = ${guess.slope}`);
  if (guess.intercept !== null) parts.push(`b = ${guess.intercept}`);
  return parts.join(", ");
}
