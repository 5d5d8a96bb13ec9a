/**
 * The session screen: hint, chat pane, prediction input, wug-guess form,
 * countdown, and the end-of-session bonus summary.
 *
 * The app owns no truth: messages and verdicts come from HTTP responses
 * and the channel, the countdown resyncs from every server payload, and
 * expiry reported by the server wins over the local clock.
 */

import { ApiError, SessionApi } from "./api";
import { openChannel, SocketFactory, SocketLike } from "./channel";
import { InstructionFlow } from "./instructions";
import { DONT_KNOW, PREDICATE_OPTIONS, searchPredicates } from "./predicates";
import { describeGuess, SessionStore } from "./state";
import { Countdown, formatRemaining } from "./timer";
import type { GuessForm, ReportDoc } from "./types";

export interface AppOptions {
  api: SessionApi;
  /** omit to run without a live channel (HTTP responses still drive the UI) */
  socketFactory?: SocketFactory;
  channelBase?: string;
  now?: () => number;
  createBody?: { condition?: string; student_type?: string; seed?: number };
}

export class SessionApp {
  readonly store = new SessionStore();
  private countdown: Countdown;
  private socket: SocketLike | null = null;
  private report: ReportDoc | null = null;
  private reportRequested = false;
  private predicateChoice: string | null = null;
  private main: HTMLElement | null = null;

  constructor(
    private root: HTMLElement,
    private options: AppOptions,
  ) {
    this.countdown = new Countdown({
      now: options.now,
      onTick: (ms) => this.renderClock(ms),
      onExpire: () => {
        this.store.markExpired();
      },
    });
    new InstructionFlow(root, () => {
      void this.begin();
    });
  }

  private get api(): SessionApi {
    return this.options.api;
  }

  async begin(): Promise<void> {
    const created = await this.api.createSession(this.options.createBody ?? {});
    this.store.seed(created);
    this.buildScreen();
    this.store.subscribe(() => this.renderDynamic());
    this.countdown.sync(created.remaining_ms);
    if (this.options.socketFactory || this.options.channelBase) {
      this.socket = openChannel(created.session, {
        base: this.options.channelBase,
        socketFactory: this.options.socketFactory,
        onEvent: (event) => {
          this.store.applyChannel(event);
          if (typeof event.remaining_ms === "number") {
            this.countdown.sync(event.remaining_ms);
          }
        },
      });
    }
  }

  // -- one-time skeleton ---------------------------------------------------

  private buildScreen(): void {
    this.root.innerHTML = "";
    const main = document.createElement("main");
    main.className = "session";
    main.innerHTML = `
      <header>
        <span class="clock" data-testid="countdown"></span>
      </header>
      <div class="banner" data-testid="expired-banner" hidden>
        Time is up — thanks! Your answers are in; the summary is below.
      </div>
      <aside class="hint" data-testid="hint"></aside>
      <section class="chat">
        <ol class="messages" data-testid="chat"></ol>
        <form class="prediction" data-testid="prediction-form">
          <input name="prediction" data-testid="prediction-input"
                 placeholder="a number, or 'undefined'" autocomplete="off" />
          <button type="submit" data-testid="prediction-send">Send</button>
        </form>
      </section>
      <section class="guess">
        <h3>Your current guess about wug</h3>
        <input data-testid="guess-predicate-search"
               placeholder="search: when is wug undefined?" autocomplete="off" />
        <ul class="options" data-testid="guess-options"></ul>
        <p class="choice" data-testid="guess-choice"></p>
        <label>a <input type="number" data-testid="guess-slope" /></label>
        <label>b <input type="number" data-testid="guess-intercept" /></label>
        <button type="button" data-testid="guess-submit">Submit guess</button>
        <p class="error" data-testid="guess-error"></p>
        <ol class="history" data-testid="guess-history"></ol>
      </section>
      <section class="summary" data-testid="bonus-summary" hidden></section>
    `;
    this.root.append(main);
    this.main = main;

    this.select<HTMLElement>("hint").textContent = this.store.current.hint;
    this.renderOptions("");

    const form = this.select<HTMLFormElement>("prediction-form");
    form.onsubmit = (event) => {
      event.preventDefault();
      void this.sendPrediction();
    };
    this.select<HTMLInputElement>("guess-predicate-search").oninput = (event) =>
      this.renderOptions((event.target as HTMLInputElement).value);
    this.select<HTMLButtonElement>("guess-submit").onclick = () => {
      void this.sendGuess();
    };
  }

  private select<T extends Element>(testid: string): T {
    const node = this.main?.querySelector(`[data-testid="${testid}"]`);
    if (!node) throw new Error(`missing element ${testid}`);
    return node as T;
  }

  // -- sends ---------------------------------------------------------------

  async sendPrediction(): Promise<void> {
    const input = this.select<HTMLInputElement>("prediction-input");
    const text = input.value.trim();
    const view = this.store.current;
    if (!text || view.expired || !view.questionOpen || !view.sessionId) return;
    const eventId = this.api.makeEventId();
    const asked = view.pendingInputNumber;
    // mirror the server's transcript wording so a later snapshot, which
    // rebuilds from the server's turns, does not visibly rewrite history
    this.store.beginPrediction(
      asked === null ? text : `wug(${asked})=${text}`,
      eventId,
    );
    input.value = "";
    try {
      const response = await this.api.submitPrediction(view.sessionId, text, eventId);
      this.store.resolvePrediction(eventId, response);
    } catch (failure) {
      this.store.abandonPrediction(eventId);
      this.surface(failure);
    }
  }

  async sendGuess(): Promise<void> {
    const view = this.store.current;
    if (view.expired || !view.sessionId) return;
    const slopeRaw = this.select<HTMLInputElement>("guess-slope").value.trim();
    const interceptRaw = this.select<HTMLInputElement>("guess-intercept").value.trim();
    const form: GuessForm = {
      predicate: this.predicateChoice === DONT_KNOW ? null : this.predicateChoice,
      slope: slopeRaw === "" ? null : Number(slopeRaw),
      intercept: interceptRaw === "" ? null : Number(interceptRaw),
    };
    if (form.predicate === null && form.slope === null && form.intercept === null) {
      this.select<HTMLElement>("guess-error").textContent =
        "Pick at least one part — a partial guess is fine.";
      return;
    }
    this.select<HTMLElement>("guess-error").textContent = "";
    const eventId = this.api.makeEventId();
    this.store.beginGuess(form, eventId);
    try {
      const ack = await this.api.submitGuess(view.sessionId, form, eventId);
      this.store.resolveGuess(eventId, ack);
    } catch (failure) {
      this.store.abandonGuess(eventId);
      this.surface(failure);
    }
  }

  private surface(failure: unknown): void {
    if (failure instanceof ApiError && failure.code === "SessionExpired") {
      this.store.markExpired();
      return;
    }
    const box = this.main?.querySelector('[data-testid="guess-error"]');
    if (box) box.textContent = failure instanceof Error ? failure.message : String(failure);
  }

  // -- rendering -----------------------------------------------------------

  private renderClock(ms: number): void {
    const clock = this.main?.querySelector('[data-testid="countdown"]');
    if (clock) clock.textContent = formatRemaining(ms);
  }

  private renderOptions(query: string): void {
    const list = this.select<HTMLElement>("guess-options");
    list.innerHTML = "";
    const dontKnow = document.createElement("li");
    const dontKnowButton = document.createElement("button");
    dontKnowButton.type = "button";
    dontKnowButton.dataset.testid = "guess-dont-know";
    dontKnowButton.textContent = "don't know";
    dontKnowButton.onclick = () => this.choosePredicate(DONT_KNOW);
    dontKnow.append(dontKnowButton);
    list.append(dontKnow);
    for (const option of searchPredicates(query)) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.testid = `guess-option-${option.name}`;
      button.textContent = option.label;
      button.onclick = () => this.choosePredicate(option.name);
      item.append(button);
      list.append(item);
    }
  }

  private choosePredicate(name: string): void {
    this.predicateChoice = name;
    const choice = this.select<HTMLElement>("guess-choice");
    choice.textContent =
      name === DONT_KNOW
        ? "undefined-when: don't know"
        : `undefined when ${PREDICATE_OPTIONS.find((p) => p.name === name)?.label ?? name}`;
  }

  private renderDynamic(): void {
    if (!this.main) return;
    const view = this.store.current;

    const chat = this.select<HTMLElement>("chat");
    chat.innerHTML = "";
    for (const message of view.messages) {
      const item = document.createElement("li");
      item.className = `message ${message.role}${message.pending ? " pending" : ""}`;
      item.dataset.testid = "message";
      item.dataset.role = message.role;
      item.textContent = message.text;
      chat.append(item);
    }

    const history = this.select<HTMLElement>("guess-history");
    history.innerHTML = "";
    for (const guess of view.guesses) {
      const item = document.createElement("li");
      item.dataset.testid = "guess-entry";
      item.textContent = describeGuess(guess);
      history.append(item);
    }

    const disabled = view.expired || !view.questionOpen;
    this.select<HTMLInputElement>("prediction-input").disabled = disabled;
    this.select<HTMLButtonElement>("prediction-send").disabled = disabled;
    this.select<HTMLButtonElement>("guess-submit").disabled = view.expired;
    this.select<HTMLInputElement>("guess-slope").disabled = view.expired;
    this.select<HTMLInputElement>("guess-intercept").disabled = view.expired;
    this.select<HTMLInputElement>("guess-predicate-search").disabled = view.expired;

    const banner = this.select<HTMLElement>("expired-banner");
    banner.hidden = !view.expired;
    if (view.expired) {
      this.countdown.stop();
      this.renderClock(0);
      void this.showReport();
    }
  }

  private async showReport(): Promise<void> {
    const view = this.store.current;
    if (this.reportRequested || !view.sessionId) return;
    this.reportRequested = true;
    this.report = await this.api.report(view.sessionId).catch(() => null);
    if (!this.report) {
      this.reportRequested = false; // allow the next render to retry
      return;
    }
    const summary = this.select<HTMLElement>("bonus-summary");
    const bonus = this.report.bonus;
    summary.hidden = false;
    summary.innerHTML = `
      <h3>Session summary</h3>
      <dl>
        <dt>Guess-hold bonus</dt><dd>$${bonus.guess_hold_credit.toFixed(2)}</dd>
        <dt>Prediction bonus</dt><dd>$${bonus.prediction_credit.toFixed(2)}</dd>
        <dt>Total bonus</dt><dd>$${bonus.total.toFixed(2)}</dd>
        <dt>Base pay</dt><dd>$${bonus.base_pay.toFixed(2)}</dd>
      </dl>
    `;
  }

  dispose(): void {
    this.countdown.stop();
    this.socket?.close();
  }
}
