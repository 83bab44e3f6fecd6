import type { EntitySpan, GlossaryEntry, TagDisplay } from "./types";

const ENTITY_LABELS: Record<string, string> = {
  PER: "Person",
  LOC: "Location",
  ORG: "Organization",
  MISC: "Misc",
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Render the glossary strip: ruby readings above each character, hover
 * definitions via title, click-through to the external dictionary.
 */
export function renderRubyStrip(entries: readonly GlossaryEntry[]): string {
  const parts = entries.map((entry) => {
    const reading = entry.reading
      ? `<rt>${escapeHtml(entry.reading)}</rt>`
      : "<rt></rt>";
    const title = entry.definitions.length
      ? ` title="${escapeHtml(entry.definitions.join("; "))}"`
      : "";
    return (
      `<a class="gloss" href="${escapeHtml(entry.link)}" target="_blank" rel="noopener">` +
      `<ruby${title}>${escapeHtml(entry.char)}${reading}</ruby></a>`
    );
  });
  return parts.join("");
}

/**
 * Render text with entity highlights. Tag display options: hidden shows
 * color only, inline appends a bracketed type suffix, floating renders a
 * positioned chip above the span.
 */
export function renderEntityText(
  chars: readonly string[],
  spans: readonly EntitySpan[],
  display: TagDisplay,
): string {
  const out: string[] = [];
  let i = 0;
  const byStart = new Map(spans.map((s) => [s.start, s]));
  while (i < chars.length) {
    const span = byStart.get(i);
    if (!span) {
      out.push(
        `<span class="char" data-pos="${i}">${escapeHtml(chars[i])}</span>`,
      );
      i += 1;
      continue;
    }
    const body = chars
      .slice(span.start, span.end)
      .map((c, k) => `<span class="char" data-pos="${span.start + k}">${escapeHtml(c)}</span>`)
      .join("");
    const label = ENTITY_LABELS[span.type] ?? span.type;
    const chip =
      display === "floating" ? `<span class="tag-chip">${label}</span>` : "";
    const suffix =
      display === "inline" ? `<span class="tag-inline">[${label}]</span>` : "";
    out.push(
      `<mark class="entity entity-${span.type.toLowerCase()}" data-start="${span.start}" data-end="${span.end}">` +
        `${chip}${body}${suffix}</mark>`,
    );
    i = span.end;
  }
  return out.join("");
}
