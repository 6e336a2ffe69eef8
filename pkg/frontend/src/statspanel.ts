import { renderBarChart } from "./chart.js";
import { formatDailyAverage, formatPercent } from "./format.js";
import type { StatsResponse } from "./types.js";

/** Totals plus the top-10 publisher chart. Marked stale instead of
 * cleared when a refresh fails, so the last good numbers stay visible. */
export class StatsPanel {
  private readonly totals: HTMLElement;
  private readonly chart: HTMLElement;
  private readonly staleFlag: HTMLElement;

  constructor(root: HTMLElement) {
    root.classList.add("stats-panel");

    const heading = document.createElement("h2");
    heading.textContent = "screening statistics";
    this.staleFlag = document.createElement("span");
    this.staleFlag.className = "stale-flag";
    this.staleFlag.hidden = true;
    this.staleFlag.textContent = "stale";
    heading.appendChild(this.staleFlag);
    root.appendChild(heading);

    this.totals = document.createElement("dl");
    this.totals.className = "stats-totals";
    root.appendChild(this.totals);

    this.chart = document.createElement("div");
    this.chart.className = "stats-chart";
    root.appendChild(this.chart);
  }

  render(stats: StatsResponse): void {
    this.staleFlag.hidden = true;
    this.totals.textContent = "";
    const rows: Array<[string, string]> = [
      ["retrieved", `${stats.retrieved_articles}`],
      ["citejacked", `${stats.citejacked_articles} (${formatPercent(stats.share)})`],
      ["daily average", formatDailyAverage(stats.daily_average)],
      ["publishers", `${stats.distinct_publishers}`],
    ];
    for (const [term, value] of rows) {
      const dt = document.createElement("dt");
      dt.textContent = term;
      const dd = document.createElement("dd");
      dd.textContent = value;
      this.totals.appendChild(dt);
      this.totals.appendChild(dd);
    }
    renderBarChart(this.chart, stats.publishers, 10);
  }

  markStale(): void {
    this.staleFlag.hidden = false;
  }
}
