import { describe, expect, it } from "vitest";

import { addSpan, mapSpanThroughOffsets, removeSpanAt, spanAt } from "../src/spans";
import type { EntitySpan } from "../src/types";

const per = (start: number, end: number): EntitySpan => ({ start, end, type: "PER" });
const loc = (start: number, end: number): EntitySpan => ({ start, end, type: "LOC" });

describe("addSpan (drag-to-tag)", () => {
  it("creates exactly one span on an empty set", () => {
    expect(addSpan([], 0, 2, "PER", 6)).toEqual([per(0, 2)]);
  });

  it("replaces every overlapped span", () => {
    const spans = [per(0, 3), loc(4, 6)];
    expect(addSpan(spans, 2, 5, "LOC", 6)).toEqual([loc(2, 5)]);
  });

  it("keeps touching spans (end is exclusive)", () => {
    const spans = [per(0, 2)];
    expect(addSpan(spans, 2, 5, "LOC", 6)).toEqual([per(0, 2), loc(2, 5)]);
  });

  it("ignores invalid drags", () => {
    expect(addSpan([per(0, 2)], 3, 3, "LOC", 6)).toEqual([per(0, 2)]);
    expect(addSpan([per(0, 2)], 4, 9, "LOC", 6)).toEqual([per(0, 2)]);
  });

  it("is idempotent", () => {
    const once = addSpan([per(0, 3)], 1, 4, "LOC", 8);
    expect(addSpan(once, 1, 4, "LOC", 8)).toEqual(once);
  });
});

describe("removeSpanAt (click-to-remove)", () => {
  it("deletes the containing span", () => {
    expect(removeSpanAt([per(0, 3), loc(4, 6)], 5)).toEqual([per(0, 3)]);
  });

  it("treats the end as exclusive", () => {
    expect(removeSpanAt([per(0, 3)], 3)).toEqual([per(0, 3)]);
  });

  it("is a no-op on uncovered positions", () => {
    expect(removeSpanAt([per(0, 2)], 4)).toEqual([per(0, 2)]);
  });
});

describe("spanAt", () => {
  it("finds the covering span", () => {
    expect(spanAt([per(0, 2)], 1)).toEqual(per(0, 2));
    expect(spanAt([per(0, 2)], 2)).toBeNull();
  });
});

describe("mapSpanThroughOffsets", () => {
  it("covers the same raw characters after rendering insertions", () => {
    // raw "子曰學" rendered "子曰：「學": offsets [0, 1, 4]
    expect(mapSpanThroughOffsets(per(0, 2), [0, 1, 4])).toEqual({ start: 0, end: 2 });
    expect(mapSpanThroughOffsets(per(2, 3), [0, 1, 4])).toEqual({ start: 4, end: 5 });
  });
});
