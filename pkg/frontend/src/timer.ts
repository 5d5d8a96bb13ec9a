/**
 * Countdown that trusts the server.
 *
 * Every server payload carries remaining_ms; the timer interpolates
 * between payloads with the local clock but snaps back to the server
 * value on every sync, so drift never exceeds one resync interval.
 */

export interface CountdownOptions {
  onTick: (remainingMs: number) => void;
  onExpire: () => void;
  now?: () => number;
  intervalMs?: number;
}

export class Countdown {
  private syncedRemaining = 0;
  private syncedAt = 0;
  private handle: ReturnType<typeof setInterval> | null = null;
  private expired = false;
  private readonly now: () => number;
  private readonly intervalMs: number;

  constructor(private options: CountdownOptions) {
    this.now = options.now ?? (() => Date.now());
    this.intervalMs = options.intervalMs ?? 250;
  }

  /** Feed a server-reported remaining_ms; restarts interpolation. */
  sync(remainingMs: number): void {
    this.syncedRemaining = remainingMs;
    this.syncedAt = this.now();
    if (this.handle === null && !this.expired) {
      this.handle = setInterval(() => this.tick(), this.intervalMs);
    }
    this.tick();
  }

  remaining(): number {
    return Math.max(0, this.syncedRemaining - (this.now() - this.syncedAt));
  }

  private tick(): void {
    const remaining = this.remaining();
    this.options.onTick(remaining);
    if (remaining <= 0 && !this.expired) {
      this.expired = true;
      this.stop();
      this.options.onExpire();
    }
  }

  stop(): void {
    if (this.handle !== null) {
      clearInterval(this.handle);
      this.handle = null;
    }
  }
}

export function formatRemaining(ms: number): string {
  const total = Math.max(0, Math.ceil(ms / 1000));
  const minutes = Math.floor(total / 60);
  const seconds = total % 60;
  return `${minutes}:${String(seconds).padStart(2, "0")}`;
}
