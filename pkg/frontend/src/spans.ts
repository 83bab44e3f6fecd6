import type { EntitySpan, EntityTypeCode } from "./types";

/**
 * Entity-span editing semantics, mirroring the gateway's contract:
 * half-open intervals, drag-to-tag replaces anything it overlaps,
 * click-to-remove deletes the containing span.
 */

export function overlaps(a: EntitySpan, b: EntitySpan): boolean {
  return a.start < b.end && b.start < a.end;
}

export function addSpan(
  spans: readonly EntitySpan[],
  start: number,
  end: number,
  type: EntityTypeCode,
  textLength: number,
): EntitySpan[] {
  if (!(start >= 0 && start < end && end <= textLength)) {
    return [...spans]; // invalid drags are ignored
  }
  const next = { start, end, type };
  const kept = spans.filter((s) => !overlaps(s, next));
  kept.push(next);
  kept.sort((a, b) => a.start - b.start);
  return kept;
}

export function removeSpanAt(spans: readonly EntitySpan[], pos: number): EntitySpan[] {
  return spans.filter((s) => !(s.start <= pos && pos < s.end));
}

export function spanAt(spans: readonly EntitySpan[], pos: number): EntitySpan | null {
  return spans.find((s) => s.start <= pos && pos < s.end) ?? null;
}

/** Map a span through the raw->rendered offset table from /api/punctuate. */
export function mapSpanThroughOffsets(
  span: EntitySpan,
  offsets: readonly number[],
): { start: number; end: number } {
  const start = offsets[span.start];
  const last = offsets[span.end - 1];
  return { start, end: last + 1 };
}
