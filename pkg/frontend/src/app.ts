import { ApiClient, ApiError } from "./api.js";
import { formatCount, formatSimilarity } from "./format.js";
import { findHighlightSpan, renderHighlighted } from "./highlight.js";
import { QueueStore } from "./queue.js";
import { StatsPanel } from "./statspanel.js";
import type { DecisionLabel, EntryView, SignalsView } from "./types.js";

export interface AppOptions {
  reviewer?: string;
}

const KEY_LABELS: Record<string, DecisionLabel> = {
  t: "TruePositive",
  f: "FalsePositive",
  m: "Mention",
};

/**
 * Keyboard-first triage console.
 *
 * Layout: reviewer header, stats panel, queue list (left), detail pane
 * (right). All state mirrors the API; the only local reordering is the
 * explicit skip (U), which touches nothing server-side.
 */
export class TriageApp {
  readonly store = new QueueStore();

  private readonly stats: StatsPanel;
  private readonly banner: HTMLElement;
  private readonly queueHeading: HTMLElement;
  private readonly queueList: HTMLUListElement;
  private readonly detail: HTMLElement;
  private readonly inlineError: HTMLElement;
  private readonly reviewerInput: HTMLInputElement;
  private readonly keyHandler: (event: KeyboardEvent) => void;
  private pending: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    options: AppOptions = {},
  ) {
    root.classList.add("triage-app");
    root.textContent = "";

    const header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = "citescreen triage";
    header.appendChild(title);
    const reviewerLabel = document.createElement("label");
    reviewerLabel.textContent = "reviewer ";
    this.reviewerInput = document.createElement("input");
    this.reviewerInput.className = "reviewer-input";
    this.reviewerInput.value = options.reviewer ?? "reviewer";
    reviewerLabel.appendChild(this.reviewerInput);
    header.appendChild(reviewerLabel);
    const hint = document.createElement("p");
    hint.className = "key-hint";
    hint.textContent = "T true positive / F false positive / M mention / U skip";
    header.appendChild(hint);
    root.appendChild(header);

    this.banner = document.createElement("div");
    this.banner.className = "banner";
    this.banner.hidden = true;
    root.appendChild(this.banner);

    const statsRoot = document.createElement("section");
    root.appendChild(statsRoot);
    this.stats = new StatsPanel(statsRoot);

    const main = document.createElement("main");
    const queuePane = document.createElement("section");
    queuePane.className = "queue-pane";
    this.queueHeading = document.createElement("h2");
    this.queueHeading.textContent = "queue";
    queuePane.appendChild(this.queueHeading);
    this.queueList = document.createElement("ul");
    this.queueList.className = "queue-list";
    queuePane.appendChild(this.queueList);
    main.appendChild(queuePane);

    this.detail = document.createElement("section");
    this.detail.className = "detail-pane";
    main.appendChild(this.detail);
    root.appendChild(main);

    this.inlineError = document.createElement("div");
    this.inlineError.className = "inline-error";
    this.inlineError.hidden = true;

    this.keyHandler = (event) => this.onKeydown(event);
    root.ownerDocument.addEventListener("keydown", this.keyHandler);
  }

  /** Unbind the document-level key handler. */
  dispose(): void {
    this.root.ownerDocument.removeEventListener("keydown", this.keyHandler);
  }

  get reviewer(): string {
    return this.reviewerInput.value;
  }

  /** Resolves when the most recent keyboard-initiated action has settled. */
  settled(): Promise<void> {
    return this.pending;
  }

  async init(): Promise<void> {
    this.banner.hidden = true;
    this.banner.textContent = "";
    try {
      const [queue, stats] = await Promise.all([this.api.getQueue(), this.api.getStats()]);
      this.store.load(queue.items);
      this.stats.render(stats);
    } catch (error) {
      this.showBanner(error);
      return;
    }
    this.render();
  }

  async decideFocused(label: DecisionLabel): Promise<void> {
    this.hideInlineError();
    const result = await this.store.decide(label, this.reviewer, (id, l, r) =>
      this.api.postDecision(id, l, r),
    );
    if (result.kind === "busy" || result.kind === "empty") return;
    this.render();
    if (result.kind === "error") {
      this.showInlineError(result.error);
      return;
    }
    await this.refreshStats();
  }

  skipFocused(): void {
    this.hideInlineError();
    this.store.skipFocused();
    this.render();
  }

  private onKeydown(event: KeyboardEvent): void {
    const target = event.target as HTMLElement | null;
    if (target instanceof HTMLInputElement || target instanceof HTMLTextAreaElement) return;
    const key = event.key.toLowerCase();
    const label = KEY_LABELS[key];
    if (label) {
      event.preventDefault();
      this.pending = this.decideFocused(label);
    } else if (key === "u") {
      event.preventDefault();
      this.skipFocused();
    } else if (key === "arrowdown" || key === "j") {
      event.preventDefault();
      this.store.moveFocus(1);
      this.render();
    } else if (key === "arrowup" || key === "k") {
      event.preventDefault();
      this.store.moveFocus(-1);
      this.render();
    }
  }

  private showBanner(error: unknown): void {
    this.banner.textContent = "";
    this.banner.hidden = false;
    const message = document.createElement("span");
    message.textContent = `service unreachable: ${describeError(error)}`;
    this.banner.appendChild(message);
    const retry = document.createElement("button");
    retry.className = "retry";
    retry.textContent = "retry";
    retry.addEventListener("click", () => {
      this.pending = this.init();
    });
    this.banner.appendChild(retry);
  }

  private showInlineError(error: unknown): void {
    this.inlineError.textContent = describeError(error);
    this.inlineError.hidden = false;
  }

  private hideInlineError(): void {
    this.inlineError.hidden = true;
    this.inlineError.textContent = "";
  }

  private async refreshStats(): Promise<void> {
    try {
      this.stats.render(await this.api.getStats());
    } catch {
      this.stats.markStale();
    }
  }

  private render(): void {
    this.renderQueue();
    this.renderDetail();
  }

  private renderQueue(): void {
    this.queueHeading.textContent = `queue (${formatCount(this.store.length, this.store.length)})`;
    this.queueList.textContent = "";
    if (this.store.length === 0) {
      const clear = document.createElement("li");
      clear.className = "queue-clear";
      clear.textContent = "queue clear";
      this.queueList.appendChild(clear);
      return;
    }
    this.store.entries.forEach((entry, index) => {
      const row = document.createElement("li");
      row.className = index === this.store.focus ? "queue-row focused" : "queue-row";
      row.dataset["entryId"] = entry.entry_id;
      const where =
        typeof entry.reference_position === "number"
          ? `ref ${entry.reference_position}`
          : entry.reference_position;
      row.textContent = `${entry.article.title} (${entry.article.venue_title}, ${where})`;
      row.addEventListener("click", () => {
        this.store.setFocus(index);
        this.render();
      });
      this.queueList.appendChild(row);
    });
  }

  private renderDetail(): void {
    this.detail.textContent = "";
    const entry = this.store.focused;
    if (!entry) {
      const empty = document.createElement("p");
      empty.className = "detail-empty";
      empty.textContent = "nothing to review";
      this.detail.appendChild(empty);
      return;
    }

    const heading = document.createElement("h2");
    heading.textContent = entry.article.title;
    this.detail.appendChild(heading);

    const facts = document.createElement("dl");
    facts.className = "entry-facts";
    const rows: Array<[string, string]> = [
      ["venue", `${entry.article.venue_title} [${entry.article.venue_issns.join(", ")}]`],
      ["publisher", entry.article.publisher],
      ["published", entry.article.published_on],
      ["source", entry.article.source],
      ["matched journal", entry.registry_title],
      ["current label", entry.current_label],
    ];
    for (const [term, value] of rows) {
      const dt = document.createElement("dt");
      dt.textContent = term;
      const dd = document.createElement("dd");
      dd.textContent = value;
      if (term === "current label") dd.className = `label-${entry.current_label}`;
      facts.appendChild(dt);
      facts.appendChild(dd);
    }
    this.detail.appendChild(facts);

    const reference = document.createElement("blockquote");
    reference.className = "reference-raw";
    if (entry.reference_raw) {
      const span = findHighlightSpan(
        entry.reference_raw,
        entry.reference?.container_title,
        entry.registry_title,
      );
      reference.appendChild(renderHighlighted(entry.reference_raw, span));
    } else {
      reference.textContent = "matched in body text, not in the reference list";
    }
    this.detail.appendChild(reference);

    this.detail.appendChild(renderBadges(entry));
    this.detail.appendChild(this.inlineError);
  }
}

function renderBadges(entry: EntryView): HTMLElement {
  const list = document.createElement("div");
  list.className = "badges";
  const signals = entry.signals;
  const badges: Array<[string, string]> = [
    ["similarity", formatSimilarity(signals.title_similarity)],
    ["rule", entry.rule_fired],
    ["issn", issnBadge(signals)],
    ["doi prefix legit", signals.doi_prefix_is_legit],
    ["url domain", signals.url_domain],
    ["cited in hijack window", signals.year_in_hijack_window],
    ["in reference list", signals.matched_in_reference_list ? "yes" : "no"],
  ];
  for (const [kind, value] of badges) {
    const badge = document.createElement("span");
    badge.className = "badge";
    badge.dataset["kind"] = kind;
    badge.textContent = `${kind}: ${value}`;
    list.appendChild(badge);
  }
  return list;
}

function issnBadge(signals: SignalsView): string {
  if (signals.issn_matches_hijacked_only) return "hijacked";
  if (signals.issn_matches_legit) return "legit";
  return "none";
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    return error.status ? `${error.code}: ${error.message}` : error.message;
  }
  return error instanceof Error ? error.message : String(error);
}

export function mountApp(root: HTMLElement, base = "", options: AppOptions = {}): TriageApp {
  const app = new TriageApp(root, new ApiClient(base), options);
  void app.init();
  return app;
}
