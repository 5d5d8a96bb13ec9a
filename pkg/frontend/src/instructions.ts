/**
 * Paged instruction flow ending in a bonus comprehension check.
 *
 * The chat is not created until every page has been visited and the
 * check is answered correctly; the caller receives onComplete exactly
 * once. Wrong answers re-prompt inline and keep the gate closed.
 */

export interface CheckQuestion {
  prompt: string;
  options: string[];
  correct: number;
}

export const INSTRUCTION_PAGES: { title: string; body: string }[] = [
  {
    title: "The wug machine",
    body:
      "You will chat with a teacher about a machine called wug. The machine " +
      "takes a number between -20 and 20 and either produces a number or is " +
      "undefined for that input. Your job is to work out the rule behind it.",
  },
  {
    title: "Answering the teacher",
    body:
      "The teacher asks questions like “What is wug(4)?”. Answer with a " +
      "number or the word “undefined”. After each answer the teacher " +
      "tells you the true value. Your prediction accuracy earns a share of a " +
      "$1.00 bonus.",
  },
  {
    title: "Your guess about the rule",
    body:
      "At any moment you can submit your current best guess about the rule: " +
      "which inputs are undefined, and the a and b of the a*x+b formula used " +
      "when it is defined. Partial guesses are fine — submit just the parts " +
      "you believe. For every 10 seconds your standing guess is correct you " +
      "earn guess-hold credit (partially correct guesses earn partial credit), " +
      "up to $3.00. An early correct guess therefore pays more than the same " +
      "guess made late, and you can revise whenever you learn something new.",
  },
];

export const CHECK_QUESTIONS: CheckQuestion[] = [
  {
    prompt: "How does the rule-guess bonus accumulate?",
    options: [
      "Only the final guess at the end of the session matters",
      "Every 10 seconds your standing guess is (partially) correct earns credit, so earlier correct guesses earn more",
      "Each submitted guess earns a fixed amount",
    ],
    correct: 1,
  },
  {
    prompt: "What do your answers to the teacher's questions earn?",
    options: [
      "Nothing; only rule guesses are paid",
      "A share of a $1.00 bonus proportional to prediction accuracy",
      "$0.05 per correct answer with no cap",
    ],
    correct: 1,
  },
];

export class InstructionFlow {
  page = 0;
  private completed = false;
  private answers: (number | null)[] = CHECK_QUESTIONS.map(() => null);

  constructor(
    private root: HTMLElement,
    private onComplete: () => void,
  ) {
    this.render();
  }

  /** Pages 0..N-1 are prose; page N is the comprehension check. */
  get checkPage(): number {
    return INSTRUCTION_PAGES.length;
  }

  get passed(): boolean {
    return this.completed;
  }

  private render(): void {
    this.root.innerHTML = "";
    const panel = document.createElement("section");
    panel.className = "instructions";
    panel.dataset.testid = "instructions";
    if (this.page < this.checkPage) {
      const { title, body } = INSTRUCTION_PAGES[this.page];
      const h = document.createElement("h2");
      h.textContent = title;
      const p = document.createElement("p");
      p.textContent = body;
      panel.append(h, p);
    } else {
      panel.append(this.renderCheck());
    }
    const nav = document.createElement("div");
    nav.className = "nav";
    if (this.page > 0) {
      const back = document.createElement("button");
      back.textContent = "Back";
      back.dataset.testid = "back";
      back.onclick = () => {
        this.page -= 1;
        this.render();
      };
      nav.append(back);
    }
    const next = document.createElement("button");
    next.dataset.testid = "next";
    next.textContent = this.page < this.checkPage ? "Next" : "Start";
    next.onclick = () => this.advance();
    nav.append(next);
    panel.append(nav);
    this.root.append(panel);
  }

  private renderCheck(): HTMLElement {
    const wrap = document.createElement("div");
    wrap.dataset.testid = "bonus-check";
    const h = document.createElement("h2");
    h.textContent = "Quick check before you start";
    wrap.append(h);
    CHECK_QUESTIONS.forEach((question, qi) => {
      const field = document.createElement("fieldset");
      const legend = document.createElement("legend");
      legend.textContent = question.prompt;
      field.append(legend);
      question.options.forEach((option, oi) => {
        const label = document.createElement("label");
        const radio = document.createElement("input");
        radio.type = "radio";
        radio.name = `check-${qi}`;
        radio.value = String(oi);
        radio.dataset.testid = `check-${qi}-${oi}`;
        if (this.answers[qi] === oi) radio.checked = true;
        radio.onchange = () => {
          this.answers[qi] = oi;
        };
        label.append(radio, document.createTextNode(" " + option));
        field.append(label);
      });
      wrap.append(field);
    });
    const feedback = document.createElement("p");
    feedback.className = "feedback";
    feedback.dataset.testid = "check-feedback";
    wrap.append(feedback);
    return wrap;
  }

  private advance(): void {
    if (this.page < this.checkPage) {
      this.page += 1;
      this.render();
      return;
    }
    if (this.answers.some((a) => a === null)) {
      this.feedback("Please answer both questions.");
      return;
    }
    const allRight = CHECK_QUESTIONS.every(
      (q, i) => this.answers[i] === q.correct,
    );
    if (!allRight) {
      this.feedback(
        "Not quite — have another look at the bonus rules and try again.",
      );
      return;
    }
    if (this.completed) return;
    this.completed = true;
    this.root.innerHTML = "";
    this.onComplete();
  }

  private feedback(text: string): void {
    const node = this.root.querySelector('[data-testid="check-feedback"]');
    if (node) node.textContent = text;
  }
}
