/**
 * Wire types for the session service HTTP + WebSocket API.
 *
 * These mirror the server's JSON exactly; the client adds nothing and
 * never re-derives server-owned fields (verdicts, timestamps, remaining
 * time) on its own.
 */

export interface CreateSessionResponse {
  session: string;
  hint: string;
  question: string; // "What is wug(N)?"
  remaining_ms: number;
}

export interface PredictionResponse {
  input: number;
  label: number | null; // null = undefined output
  correct: boolean;
  next_question: number | null;
  reply: string;
}

export interface GuessAck {
  accepted: boolean;
  at: number;
}

export interface TranscriptTurn {
  role: "teacher" | "participant";
  text: string;
  at: number;
}

export interface GuessDoc {
  predicate: string | null;
  slope: number | null;
  intercept: number | null;
  at: number;
}

export interface StateDoc {
  session: string;
  status: "active" | "expired" | "completed";
  hint: string;
  transcript: TranscriptTurn[];
  guesses: GuessDoc[];
  pending_input: number | null;
  remaining_ms: number;
  [key: string]: unknown;
}

export interface BonusDoc {
  guess_hold_credit: number;
  prediction_credit: number;
  total: number;
  base_pay: number;
}

export interface ReportDoc {
  session: string;
  status: string;
  bonus: BonusDoc;
  metrics: {
    predictions: number;
    prediction_accuracy: number;
    guesses: number;
    final_correctness: number;
    mean_correctness: number;
  };
}

/** Everything the channel pushes carries the server's remaining clock. */
export interface ChannelEvent {
  kind: "state" | "created" | "prediction" | "guess" | "expired" | "completed";
  event_id?: string | null;
  at?: number;
  remaining_ms?: number;
  // prediction events additionally carry the PredictionResponse fields,
  // guess events the sanitized ack, "state" the full StateDoc
  [key: string]: unknown;
}

export interface GuessForm {
  predicate: string | null;
  slope: number | null;
  intercept: number | null;
}
