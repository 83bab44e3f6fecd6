import { describe, expect, it } from "vitest";

import { GatewayClient } from "../src/api";
import { EditorState, PunctuationView } from "../src/editor";
import type { PunctuateResult, RenderMode } from "../src/types";

const RENDERS: Record<string, PunctuateResult> = {
  Comprehensive: {
    labels: ["None", "ColonOpenQuote", "None"],
    rendered: "子曰：「學",
    offsets: [0, 1, 4],
    stripped: false,
  },
  Simple: {
    labels: ["None", "ColonOpenQuote", "None"],
    rendered: "子曰，學",
    offsets: [0, 1, 3],
    stripped: false,
  },
};

function fakeClient(log: { mode: RenderMode; text: string }[]): GatewayClient {
  const fetchImpl = async (input: string, init?: RequestInit) => {
    const body = JSON.parse(String(init?.body));
    log.push({ mode: body.mode, text: body.text });
    return new Response(JSON.stringify(RENDERS[body.mode]), { status: 200 });
  };
  return new GatewayClient("", fetchImpl);
}

describe("EditorState", () => {
  it("seeds the editable panel from each new prediction", () => {
    const state = new EditorState<string[]>();
    state.setPrediction(["O", "O"]);
    expect(state.edited).toEqual(["O", "O"]);
    state.edit(["B-PER", "O"]);
    state.setPrediction(["O", "B-LOC"]);
    expect(state.edited).toEqual(["O", "B-LOC"]);
  });

  it("keeps the model panel immutable while edits change", () => {
    const state = new EditorState<string[]>();
    state.setPrediction(["O", "O"]);
    state.edit(["B-PER", "O"]);
    expect(state.modelOutput).toEqual(["O", "O"]);
    state.edited!.push("B-LOC");
    expect(state.modelOutput).toEqual(["O", "O"]);
  });
});

describe("PunctuationView mode toggle", () => {
  it("re-requests rendering without mutating the raw text", async () => {
    const log: { mode: RenderMode; text: string }[] = [];
    const view = new PunctuationView(fakeClient(log));
    await view.submit("子曰學");
    expect(view.state.modelOutput?.rendered).toBe("子曰：「學");

    const result = await view.setMode("Simple");
    expect(result.rendered).toBe("子曰，學");
    expect(view.state.rawText).toBe("子曰學");
    // every render came from the gateway, always with the raw text
    expect(log.map((c) => c.text)).toEqual(["子曰學", "子曰學"]);
  });

  it("is idempotent on unchanged input", async () => {
    const log: { mode: RenderMode; text: string }[] = [];
    const view = new PunctuationView(fakeClient(log));
    await view.submit("子曰學");
    const first = await view.setMode("Simple");
    const second = await view.setMode("Simple");
    expect(second).toEqual(first);
  });
});
