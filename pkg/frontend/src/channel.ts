/**
 * WebSocket channel wrapper with an injectable socket factory so tests
 * (and the dev server) can substitute their own transport.
 */

import type { ChannelEvent } from "./types";

export interface SocketLike {
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
  onerror: ((event: unknown) => void) | null;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ChannelOptions {
  base?: string; // e.g. "ws://localhost:8008"
  socketFactory?: SocketFactory;
  onEvent: (event: ChannelEvent) => void;
  onClose?: () => void;
}

function defaultFactory(url: string): SocketLike {
  return new WebSocket(url) as unknown as SocketLike;
}

export function openChannel(
  sessionId: string,
  options: ChannelOptions,
): SocketLike {
  const factory = options.socketFactory ?? defaultFactory;
  const base =
    options.base ??
    (typeof location !== "undefined"
      ? `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}`
      : "ws://localhost:8008");
  const socket = factory(`${base}/sessions/${sessionId}/channel`);
  socket.onmessage = (event) => {
    let payload: ChannelEvent;
    try {
      payload = JSON.parse(event.data) as ChannelEvent;
    } catch {
      return; // not ours; the server only sends JSON
    }
    options.onEvent(payload);
  };
  socket.onclose = () => options.onClose?.();
  socket.onerror = () => {
    /* close follows; nothing to do */
  };
  return socket;
}
