/** Wire types for the citescreen review API. */

export type Label = "TruePositive" | "FalsePositive" | "Mention" | "Undecided";

/** Labels a reviewer may assign. Undecided is not assignable. */
export type DecisionLabel = Exclude<Label, "Undecided">;

export type TriState = "yes" | "no" | "unknown";
export type UrlDomain = "hijacked" | "legit" | "other" | "absent";

export interface ArticleView {
  id: string;
  title: string;
  venue_title: string;
  venue_issns: string[];
  publisher: string;
  published_on: string;
  source: string;
}

export interface ReferenceView {
  raw: string;
  position: number;
  authors: string | null;
  year: number | null;
  article_title: string | null;
  container_title: string | null;
  volume: string | null;
  issue: string | null;
  pages: string | null;
  doi: string | null;
  url: string | null;
  issn: string | null;
  warnings: string[];
}

export interface SignalsView {
  title_similarity: number;
  issn_matches_legit: boolean;
  issn_matches_hijacked_only: boolean;
  doi_prefix_is_legit: TriState;
  url_domain: UrlDomain;
  year_in_hijack_window: TriState;
  matched_in_reference_list: boolean;
}

export interface DecisionView {
  label: Label;
  origin: "Automatic" | "Manual";
  decided_at: string;
  reviewer: string | null;
  rule_fired: string | null;
}

export interface EntryView {
  entry_id: string;
  article: ArticleView;
  registry_id: string;
  registry_title: string;
  /** Reference-list index, or "body-text" for mentions outside the list. */
  reference_position: number | string;
  reference_raw: string | null;
  reference: ReferenceView | null;
  signals: SignalsView;
  rule_fired: string;
  current_label: Label;
  history: DecisionView[];
}

export interface QueueResponse {
  total: number;
  items: EntryView[];
}

export interface DateWindowView {
  start: string;
  end: string;
}

export interface PublisherRow {
  publisher: string;
  citejacked: number;
  share: number;
}

export interface StatsResponse {
  window: DateWindowView | null;
  retrieved_articles: number;
  citejacked_articles: number;
  share: number;
  publishers: PublisherRow[];
  distinct_publishers: number;
  daily_average: number;
  label_counts: Record<string, number>;
}

export interface PublishersResponse {
  citejacked_articles: number;
  distinct_publishers: number;
  publishers: PublisherRow[];
}
