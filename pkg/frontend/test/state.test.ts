/**
 * Reconciliation invariants: teacher text only ever comes from the
 * server, channel echoes of this client's own sends are deduplicated by
 * event id, and a channel snapshot rebuilds the chat in the server's
 * transcript order without visibly rewriting what the participant saw.
 */

import { afterEach, describe, expect, it } from "vitest";

import { byTestId, makeHarness, messageTexts } from "./helpers";

afterEach(() => {
  document.body.innerHTML = "";
});

describe("state reconciliation", () => {
  it("renders the round-trip conversation from server payloads only", async () => {
    const { root, mock, app } = makeHarness();
    await app.begin();

    expect(messageTexts(root)).toEqual([
      { role: "teacher", text: "What is wug(1)?" },
    ]);

    byTestId<HTMLInputElement>(root, "prediction-input").value = "11";
    await app.sendPrediction();

    const chat = messageTexts(root);
    expect(chat).toHaveLength(3);
    expect(chat[1]).toEqual({ role: "participant", text: "wug(1)=11" });
    expect(chat[2].text).toBe("That's correct. wug(1)=11. What is wug(3)?");

    // "undefined" answers round-trip too (wug(3) is past the cutoff)
    byTestId<HTMLInputElement>(root, "prediction-input").value = "undefined";
    await app.sendPrediction();
    const after = messageTexts(root);
    expect(after[3]).toEqual({ role: "participant", text: "wug(3)=undefined" });
    expect(after[4].text).toContain("That's correct. wug(3)=undefined.");
  });

  it("a snapshot rebuild matches what the participant already saw", async () => {
    const { root, mock, app } = makeHarness({ withChannel: true });
    await app.begin();
    byTestId<HTMLInputElement>(root, "prediction-input").value = "11";
    await app.sendPrediction();
    const before = messageTexts(root);

    mock.push({ kind: "state", ...mock.stateDoc() });

    expect(messageTexts(root)).toEqual(before);
  });

  it("ignores channel echoes of its own sends", async () => {
    const { root, mock, app } = makeHarness({ withChannel: true });
    await app.begin();

    byTestId<HTMLInputElement>(root, "prediction-input").value = "11";
    await app.sendPrediction();
    byTestId<HTMLInputElement>(root, "guess-intercept").value = "8";
    await app.sendGuess();

    // the mock broadcast both events while handling them; nothing doubled
    expect(messageTexts(root).filter((m) => m.role === "teacher")).toHaveLength(2);
    expect(root.querySelectorAll('[data-testid="guess-entry"]')).toHaveLength(1);
  });

  it("appends teacher turns broadcast for other participants' sends", async () => {
    const { root, mock, app } = makeHarness({ withChannel: true });
    await app.begin();

    mock.push({
      kind: "prediction",
      event_id: "someone-else",
      at: mock.now,
      input: 1,
      label: 11,
      correct: false,
      next_question: 3,
      reply: "That's incorrect. wug(1)=11. What is wug(3)?",
    });

    const chat = messageTexts(root);
    expect(chat).toHaveLength(2);
    expect(chat[1].role).toBe("teacher");
    expect(chat[1].text).toContain("That's incorrect");
    // the open question moved on with the broadcast
    byTestId<HTMLInputElement>(root, "prediction-input").value = "7";
    await app.sendPrediction();
    expect(messageTexts(root)[2].text).toBe("wug(3)=7");
  });

  it("expiry arriving over the channel shuts the session down", async () => {
    const { root, mock, app } = makeHarness({ withChannel: true });
    await app.begin();

    mock.advance(600_000);
    mock.push({ kind: "expired", at: mock.now });
    await Promise.resolve();

    expect(byTestId<HTMLElement>(root, "expired-banner").hidden).toBe(false);
    expect(byTestId<HTMLInputElement>(root, "prediction-input").disabled).toBe(true);
    expect(byTestId<HTMLButtonElement>(root, "guess-submit").disabled).toBe(true);
  });
});
