/** Locate and mark the matched journal-name span inside a raw reference
 * string. The span is always derived from the string itself, so it can
 * never point outside the bounds. */

export interface Span {
  start: number;
  end: number;
}

/** Case-insensitive search for the parsed container title (preferred) or
 * the registry title inside the raw string. Null when nothing matches. */
export function findHighlightSpan(
  raw: string | null | undefined,
  ...needles: Array<string | null | undefined>
): Span | null {
  if (!raw) return null;
  const haystack = raw.toLowerCase();
  for (const needle of needles) {
    if (!needle) continue;
    const index = haystack.indexOf(needle.toLowerCase());
    if (index >= 0) return { start: index, end: index + needle.length };
  }
  return null;
}

/** Render raw text with the span wrapped in <mark>. Plain text node when
 * there is no span. Built with DOM nodes, not innerHTML: reference strings
 * are untrusted input. */
export function renderHighlighted(raw: string, span: Span | null): DocumentFragment {
  const fragment = document.createDocumentFragment();
  if (!span || span.start < 0 || span.end > raw.length || span.start >= span.end) {
    fragment.appendChild(document.createTextNode(raw));
    return fragment;
  }
  fragment.appendChild(document.createTextNode(raw.slice(0, span.start)));
  const mark = document.createElement("mark");
  mark.textContent = raw.slice(span.start, span.end);
  fragment.appendChild(mark);
  fragment.appendChild(document.createTextNode(raw.slice(span.end)));
  return fragment;
}
