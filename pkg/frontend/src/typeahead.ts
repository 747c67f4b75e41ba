// Debounced, latest-wins driver for live FAQ suggestions: one suggestion
// request in flight at a time, superseded responses dropped by sequence
// number, queries shorter than two characters short-circuit to "no search".

export interface Scheduler {
  setTimeout(callback: () => void, ms: number): ReturnType<typeof setTimeout>;
  clearTimeout(id: ReturnType<typeof setTimeout>): void;
}

const realScheduler: Scheduler = {
  setTimeout: (callback, ms) => setTimeout(callback, ms),
  clearTimeout: (id) => clearTimeout(id),
};

export const DEBOUNCE_MS = 250;
export const MIN_QUERY_LENGTH = 2;

export class Typeahead<T> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private seq = 0;

  constructor(
    private search: (query: string) => Promise<T>,
    private onResult: (query: string, result: T | null) => void,
    private scheduler: Scheduler = realScheduler,
  ) {}

  input(rawQuery: string): void {
    if (this.timer !== null) {
      this.scheduler.clearTimeout(this.timer);
      this.timer = null;
    }
    const query = rawQuery.trim();
    if (query.length < MIN_QUERY_LENGTH) {
      this.seq += 1; // invalidate anything still in flight
      this.onResult(query, null);
      return;
    }
    this.timer = this.scheduler.setTimeout(() => {
      this.timer = null;
      const ticket = ++this.seq;
      this.search(query).then(
        (result) => {
          if (ticket === this.seq) {
            this.onResult(query, result);
          }
        },
        () => {
          if (ticket === this.seq) {
            this.onResult(query, null);
          }
        },
      );
    }, DEBOUNCE_MS);
  }
}
