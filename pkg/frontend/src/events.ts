// Client-side interaction log with batched delivery.
//
// Every gesture pushes exactly one event; the queue flushes when it holds
// maxQueue events or flushMs after the first unsent one, whichever comes
// first. A failed send keeps the batch queued for the next attempt.

import type { ActionName, ClickEventDto, ModeName } from "./types.js";

export type EventSender = (events: ClickEventDto[]) => Promise<unknown>;

export interface BatcherOptions {
  flushMs?: number;
  maxQueue?: number;
  now?: () => number; // epoch seconds
  schedule?: (fn: () => void, ms: number) => unknown;
  cancel?: (handle: unknown) => void;
}

export class EventBatcher {
  private queue: ClickEventDto[] = [];
  private timer: unknown = null;
  private flushMs: number;
  private maxQueue: number;
  private now: () => number;
  private schedule: (fn: () => void, ms: number) => unknown;
  private cancel: (handle: unknown) => void;
  sendFailures = 0;

  constructor(
    private send: EventSender,
    opts: BatcherOptions = {},
  ) {
    this.flushMs = opts.flushMs ?? 5000;
    this.maxQueue = opts.maxQueue ?? 20;
    this.now = opts.now ?? (() => Date.now() / 1000);
    this.schedule = opts.schedule ?? ((fn, ms) => setTimeout(fn, ms));
    this.cancel = opts.cancel ?? ((h) => clearTimeout(h as number));
  }

  get pending(): number {
    return this.queue.length;
  }

  emit(mode: ModeName, action: ActionName): void {
    this.queue.push({ at: this.now(), mode, action });
    if (this.queue.length >= this.maxQueue) {
      void this.flush();
    } else if (this.timer === null) {
      this.timer = this.schedule(() => void this.flush(), this.flushMs);
    }
  }

  async flush(): Promise<void> {
    if (this.timer !== null) {
      this.cancel(this.timer);
      this.timer = null;
    }
    if (this.queue.length === 0) return;
    const batch = this.queue;
    this.queue = [];
    try {
      await this.send(batch);
    } catch {
      // put the batch back in front and try again on the next flush
      this.queue = batch.concat(this.queue);
      this.sendFailures += 1;
    }
  }
}
