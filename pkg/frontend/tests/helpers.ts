import type { EntryView, StatsResponse } from "../src/types.js";

/** Minimal but type-complete entry for store and rendering tests. */
export function makeEntry(id: string, overrides: Partial<EntryView> = {}): EntryView {
  const raw = `Romero C. Lake stratification models. Archives of Applied Limnology 9(1), 2021. [${id}]`;
  return {
    entry_id: id,
    article: {
      id: `10.1300/x.${id}`,
      title: `Article ${id}`,
      venue_title: "International Review of Freshwater Science",
      venue_issns: ["1000-0046"],
      publisher: "Lakeshore Scientific Publishing",
      published_on: "2021-07-19",
      source: "local:corpus",
    },
    registry_id: "hj-002",
    registry_title: "Archives of Applied Limnology",
    reference_position: 0,
    reference_raw: raw,
    reference: {
      raw,
      position: 0,
      authors: "Romero C",
      year: 2021,
      article_title: "Lake stratification models",
      container_title: "Archives of Applied Limnology",
      volume: "9",
      issue: "1",
      pages: null,
      doi: null,
      url: null,
      issn: null,
      warnings: [],
    },
    signals: {
      title_similarity: 1.0,
      issn_matches_legit: false,
      issn_matches_hijacked_only: false,
      doi_prefix_is_legit: "unknown",
      url_domain: "absent",
      year_in_hijack_window: "yes",
      matched_in_reference_list: true,
    },
    rule_fired: "R7",
    current_label: "Undecided",
    history: [
      {
        label: "Undecided",
        origin: "Automatic",
        decided_at: "2026-01-01T00:00:00+00:00",
        reviewer: null,
        rule_fired: "R7",
      },
    ],
    ...overrides,
  };
}

export function makeStats(overrides: Partial<StatsResponse> = {}): StatsResponse {
  return {
    window: { start: "2021-01-01", end: "2022-01-31" },
    retrieved_articles: 22,
    citejacked_articles: 9,
    share: 9 / 22,
    publishers: [
      { publisher: "Fjord Academic", citejacked: 4, share: 4 / 9 },
      { publisher: "Bluewater Journals", citejacked: 3, share: 3 / 9 },
      { publisher: "AgriData Press", citejacked: 2, share: 2 / 9 },
    ],
    distinct_publishers: 3,
    daily_average: 9 / 396,
    label_counts: { TruePositive: 9, FalsePositive: 6, Mention: 3, Undecided: 6 },
    ...overrides,
  };
}

/** Response helper for fake fetch implementations. */
export function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
