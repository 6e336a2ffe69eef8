import { formatPercent } from "./format.js";
import type { PublisherRow } from "./types.js";

/** Horizontal bar chart of citejacked articles per publisher. Shows at
 * most `topN` bars regardless of how many publishers the stats carry;
 * each bar is labelled with its count and percent share. */
export function renderBarChart(container: HTMLElement, rows: PublisherRow[], topN = 10): void {
  container.textContent = "";
  const top = rows.slice(0, topN);
  if (top.length === 0) {
    const empty = document.createElement("p");
    empty.className = "chart-empty";
    empty.textContent = "no citejacked articles yet";
    container.appendChild(empty);
    return;
  }
  const maxCount = Math.max(...top.map((row) => row.citejacked));
  for (const row of top) {
    const bar = document.createElement("div");
    bar.className = "chart-bar";

    const name = document.createElement("span");
    name.className = "chart-name";
    name.textContent = row.publisher;
    bar.appendChild(name);

    const track = document.createElement("span");
    track.className = "chart-track";
    const fill = document.createElement("span");
    fill.className = "chart-fill";
    // maxCount >= 1 here: a listed publisher has at least one article
    fill.style.width = `${(row.citejacked / maxCount) * 100}%`;
    track.appendChild(fill);
    bar.appendChild(track);

    const value = document.createElement("span");
    value.className = "chart-value";
    value.textContent = `${row.citejacked} (${formatPercent(row.share)})`;
    bar.appendChild(value);

    container.appendChild(bar);
  }
}
