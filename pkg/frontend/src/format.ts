/** Display formatting. Percent and similarity precision are part of the
 * UI contract: one decimal for shares, four for similarity scores. */

export function formatPercent(share: number): string {
  return `${(share * 100).toFixed(1)}%`;
}

export function formatSimilarity(value: number): string {
  return value.toFixed(4);
}

export function formatDailyAverage(value: number): string {
  return value.toFixed(2);
}

/** "7 of 24" style counter for the queue header. */
export function formatCount(shown: number, total: number): string {
  return shown === total ? `${total}` : `${shown} of ${total}`;
}
