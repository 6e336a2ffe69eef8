import { afterEach, describe, expect, test } from "vitest";
import { ApiClient } from "../src/api.js";
import type { FetchLike } from "../src/api.js";
import { TriageApp } from "../src/app.js";
import type { EntryView, StatsResponse } from "../src/types.js";
import { jsonResponse, makeEntry, makeStats } from "./helpers.js";

/** In-memory stand-in for the review service. */
class FakeBackend {
  posts = 0;
  statsFetches = 0;
  failStats = false;
  failQueue = false;
  decisionFailure: { status: number; error: string; message: string } | null = null;

  constructor(
    public items: EntryView[],
    public stats: StatsResponse = makeStats(),
  ) {}

  readonly fetch: FetchLike = (url, init) => {
    if (this.failQueue && url.includes("/api/queue")) {
      return Promise.reject(new TypeError("connection refused"));
    }
    if (url.includes("/api/queue")) {
      return Promise.resolve(jsonResponse(200, { total: this.items.length, items: this.items }));
    }
    if (url.includes("/api/stats")) {
      this.statsFetches += 1;
      if (this.failStats) return Promise.reject(new TypeError("connection refused"));
      return Promise.resolve(jsonResponse(200, this.stats));
    }
    if (url.includes("/api/decisions")) {
      this.posts += 1;
      if (this.decisionFailure) {
        const { status, error, message } = this.decisionFailure;
        return Promise.resolve(jsonResponse(status, { error, message }));
      }
      const body = JSON.parse(init?.body as string) as { entry_id: string; label: string };
      const found = this.items.find((e) => e.entry_id === body.entry_id);
      this.items = this.items.filter((e) => e.entry_id !== body.entry_id);
      return Promise.resolve(
        jsonResponse(200, { ...found!, current_label: body.label }),
      );
    }
    throw new Error(`unrouted url: ${url}`);
  };
}

const apps: TriageApp[] = [];

function mount(backend: FakeBackend, reviewer = "ana"): TriageApp {
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app")!;
  const app = new TriageApp(root, new ApiClient("", backend.fetch), { reviewer });
  apps.push(app);
  return app;
}

afterEach(() => {
  while (apps.length) apps.pop()!.dispose();
});

function press(key: string): void {
  document.dispatchEvent(new KeyboardEvent("keydown", { key, bubbles: true }));
}

function queueIds(): string[] {
  return [...document.querySelectorAll<HTMLElement>(".queue-row")].map(
    (row) => row.dataset["entryId"]!,
  );
}

describe("queue view", () => {
  test("rows render in API order", async () => {
    const backend = new FakeBackend([makeEntry("e1"), makeEntry("e2"), makeEntry("e3")]);
    await mount(backend).init();
    expect(queueIds()).toEqual(["e1", "e2", "e3"]);
    expect(document.querySelector(".queue-row.focused")?.dataset["entryId"]).toBe("e1");
  });

  test("empty queue shows the clear state", async () => {
    await mount(new FakeBackend([])).init();
    expect(document.querySelector(".queue-clear")?.textContent).toBe("queue clear");
    expect(document.querySelector(".detail-empty")).not.toBeNull();
  });

  test("clicking a row focuses it and opens its detail", async () => {
    const backend = new FakeBackend([makeEntry("e1"), makeEntry("e2")]);
    await mount(backend).init();
    const second = document.querySelectorAll<HTMLElement>(".queue-row")[1]!;
    second.click();
    expect(document.querySelector(".queue-row.focused")?.dataset["entryId"]).toBe("e2");
    expect(document.querySelector(".detail-pane h2")?.textContent).toBe("Article e2");
  });

  test("service down shows the banner, retry recovers", async () => {
    const backend = new FakeBackend([makeEntry("e1")]);
    backend.failQueue = true;
    const app = mount(backend);
    await app.init();
    const banner = document.querySelector<HTMLElement>(".banner")!;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("service unreachable");

    backend.failQueue = false;
    banner.querySelector("button")!.click();
    await app.settled();
    expect(document.querySelector<HTMLElement>(".banner")!.hidden).toBe(true);
    expect(queueIds()).toEqual(["e1"]);
  });
});

describe("detail view", () => {
  test("similarity badge shows four decimals and the raw string is highlighted", async () => {
    const entry = makeEntry("e1");
    entry.signals.title_similarity = 1 - 1 / 30;
    await mount(new FakeBackend([entry])).init();
    const badge = document.querySelector('[data-kind="similarity"]');
    expect(badge?.textContent).toBe("similarity: 0.9667");
    const mark = document.querySelector(".reference-raw mark");
    expect(mark?.textContent).toBe("Archives of Applied Limnology");
    expect(document.querySelector('[data-kind="rule"]')?.textContent).toBe("rule: R7");
  });

  test("body-text entries explain the missing reference", async () => {
    const entry = makeEntry("e1", {
      reference_position: "body-text",
      reference_raw: null,
      reference: null,
    });
    await mount(new FakeBackend([entry])).init();
    expect(document.querySelector(".reference-raw")?.textContent).toContain("body text");
  });
});

describe("decisions", () => {
  test("T removes the item, posts once, and refreshes stats", async () => {
    const backend = new FakeBackend([makeEntry("e1"), makeEntry("e2")]);
    const app = mount(backend);
    await app.init();
    const statsBefore = backend.statsFetches;

    backend.stats = makeStats({ citejacked_articles: 10, share: 10 / 22 });
    press("t");
    await app.settled();

    expect(backend.posts).toBe(1);
    expect(queueIds()).toEqual(["e2"]);
    expect(backend.statsFetches).toBe(statsBefore + 1);
    expect(document.querySelector(".stats-totals")?.textContent).toContain("10 (45.5%)");
  });

  test("U skips locally without posting", async () => {
    const backend = new FakeBackend([makeEntry("e1"), makeEntry("e2")]);
    const app = mount(backend);
    await app.init();
    press("u");
    await app.settled();
    expect(backend.posts).toBe(0);
    expect(queueIds()).toEqual(["e2", "e1"]);
  });

  test("decision rejected by the service stays in place with an inline error", async () => {
    const backend = new FakeBackend([makeEntry("e1"), makeEntry("e2")]);
    backend.decisionFailure = { status: 404, error: "unknown_entry", message: "no entry 'e1'" };
    const app = mount(backend);
    await app.init();
    press("f");
    await app.settled();

    expect(queueIds()).toEqual(["e1", "e2"]);
    expect(document.querySelector(".queue-row.focused")?.dataset["entryId"]).toBe("e1");
    const inline = document.querySelector<HTMLElement>(".inline-error")!;
    expect(inline.hidden).toBe(false);
    expect(inline.textContent).toBe("unknown_entry: no entry 'e1'");
  });

  test("keystrokes typed into the reviewer field are not decisions", async () => {
    const backend = new FakeBackend([makeEntry("e1")]);
    const app = mount(backend);
    await app.init();
    const input = document.querySelector<HTMLInputElement>(".reviewer-input")!;
    input.dispatchEvent(new KeyboardEvent("keydown", { key: "t", bubbles: true }));
    await app.settled();
    expect(backend.posts).toBe(0);
    expect(queueIds()).toEqual(["e1"]);
  });

  test("stats failure after a decision marks the panel stale, not empty", async () => {
    const backend = new FakeBackend([makeEntry("e1")]);
    const app = mount(backend);
    await app.init();
    backend.failStats = true;
    press("t");
    await app.settled();

    expect(backend.posts).toBe(1);
    const stale = document.querySelector<HTMLElement>(".stale-flag")!;
    expect(stale.hidden).toBe(false);
    // the last good numbers are still on screen
    expect(document.querySelector(".stats-totals")?.textContent).toContain("9 (40.9%)");
  });
});
