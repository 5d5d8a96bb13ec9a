import { SessionApi } from "../src/api";
import { SessionApp } from "../src/app";
import { MockServer } from "./mock-server";

export interface Harness {
  mock: MockServer;
  api: SessionApi;
  app: SessionApp;
  root: HTMLElement;
}

let eventCounter = 0;

export function makeHarness(options: {
  withChannel?: boolean;
  retries?: number;
  /** drive the countdown from the mock server's clock instead of Date.now */
  useMockClock?: boolean;
} = {}): Harness {
  const mock = new MockServer();
  eventCounter = 0;
  const api = new SessionApi({
    fetchFn: mock.fetchFn,
    retries: options.retries ?? 3,
    retryDelayMs: 1,
    makeEventId: () => `e-${++eventCounter}`,
  });
  const root = document.createElement("div");
  document.body.append(root);
  const app = new SessionApp(root, {
    api,
    socketFactory: options.withChannel ? mock.socketFactory : undefined,
    channelBase: options.withChannel ? "ws://mock" : undefined,
    now: options.useMockClock ? () => mock.now : undefined,
  });
  return { mock, api, app, root };
}

/** Drain the microtask chain behind an in-flight request/render. */
export async function flush(rounds = 20): Promise<void> {
  for (let i = 0; i < rounds; i++) await Promise.resolve();
}

export function byTestId<T extends Element = HTMLElement>(
  root: ParentNode,
  testid: string,
): T {
  const node = root.querySelector(`[data-testid="${testid}"]`);
  if (!node) throw new Error(`no element with data-testid ${testid}`);
  return node as T;
}

export function maybeByTestId(root: ParentNode, testid: string): Element | null {
  return root.querySelector(`[data-testid="${testid}"]`);
}

/** Click through every instruction page and pass the comprehension check. */
export function passInstructions(root: HTMLElement): void {
  for (let i = 0; i < 3; i++) byTestId<HTMLButtonElement>(root, "next").click();
  byTestId<HTMLInputElement>(root, "check-0-1").click();
  byTestId<HTMLInputElement>(root, "check-1-1").click();
  byTestId<HTMLButtonElement>(root, "next").click();
}

export function messageTexts(root: ParentNode): { role: string; text: string }[] {
  return Array.from(root.querySelectorAll('[data-testid="message"]')).map((n) => ({
    role: (n as HTMLElement).dataset.role ?? "",
    text: n.textContent ?? "",
  }));
}
