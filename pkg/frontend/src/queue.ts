import type { DecisionLabel, EntryView } from "./types.js";

export type DecisionPort = (
  entryId: string,
  label: DecisionLabel,
  reviewer: string,
) => Promise<EntryView>;

export type DecideResult =
  | { kind: "done"; entry: EntryView }
  | { kind: "busy" }
  | { kind: "empty" }
  | { kind: "error"; error: unknown };

/**
 * Ordered queue state with a focus cursor.
 *
 * Items keep exactly the order the API returned them in. A decision
 * removes the focused item optimistically and reinserts it at its old
 * position if the POST fails. While one POST is in flight every further
 * decide() is rejected as busy, so rapid keypresses can never submit
 * twice.
 */
export class QueueStore {
  private items: EntryView[] = [];
  private focusIndex = 0;
  private inFlight = false;

  load(items: EntryView[]): void {
    this.items = [...items];
    this.focusIndex = 0;
  }

  get entries(): readonly EntryView[] {
    return this.items;
  }

  get length(): number {
    return this.items.length;
  }

  get busy(): boolean {
    return this.inFlight;
  }

  get focused(): EntryView | null {
    return this.items[this.focusIndex] ?? null;
  }

  get focus(): number {
    return this.focusIndex;
  }

  moveFocus(delta: number): void {
    if (this.items.length === 0) return;
    const next = this.focusIndex + delta;
    this.focusIndex = Math.min(this.items.length - 1, Math.max(0, next));
  }

  setFocus(index: number): void {
    if (index >= 0 && index < this.items.length) this.focusIndex = index;
  }

  /** Skip (U): the focused item stays Undecided and moves to the queue
   * tail locally; the next item gains focus by keeping the index. */
  skipFocused(): void {
    const item = this.items[this.focusIndex];
    if (!item || this.items.length < 2) return;
    this.items.splice(this.focusIndex, 1);
    this.items.push(item);
    if (this.focusIndex >= this.items.length - 1) this.focusIndex = 0;
  }

  async decide(label: DecisionLabel, reviewer: string, post: DecisionPort): Promise<DecideResult> {
    if (this.inFlight) return { kind: "busy" };
    const index = this.focusIndex;
    const item = this.items[index];
    if (!item) return { kind: "empty" };

    this.inFlight = true;
    this.items.splice(index, 1); // optimistic: assume the POST lands
    if (this.focusIndex >= this.items.length) {
      this.focusIndex = Math.max(0, this.items.length - 1);
    }
    try {
      const entry = await post(item.entry_id, label, reviewer);
      return { kind: "done", entry };
    } catch (error) {
      this.items.splice(index, 0, item); // rollback at the original slot
      this.focusIndex = index;
      return { kind: "error", error };
    } finally {
      this.inFlight = false;
    }
  }
}
