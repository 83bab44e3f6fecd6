import { describe, expect, it } from "vitest";

import { ApiError, GatewayClient, parseNdjson } from "../src/api";
import type { StreamDelta } from "../src/types";

function streamOf(text: string, chunkSize: number): Response {
  const encoder = new TextEncoder();
  let sent = 0;
  return new Response(
    new ReadableStream<Uint8Array>({
      pull(controller) {
        if (sent >= text.length) return controller.close();
        controller.enqueue(encoder.encode(text.slice(sent, sent + chunkSize)));
        sent += chunkSize;
      },
    }),
  );
}

describe("parseNdjson", () => {
  it("reassembles events split across arbitrary chunk boundaries", async () => {
    const events: StreamDelta[] = [
      { delta: "자 ", done: false },
      { delta: "왈", done: false },
      { delta: "", done: true },
    ];
    const text = events.map((e) => JSON.stringify(e) + "\n").join("");
    for (const chunkSize of [1, 3, 7, text.length]) {
      const parsed: StreamDelta[] = [];
      for await (const event of parseNdjson(streamOf(text, chunkSize))) {
        parsed.push(event);
      }
      expect(parsed).toEqual(events);
    }
  });

  it("parses a trailing event without a final newline", async () => {
    const parsed: StreamDelta[] = [];
    for await (const event of parseNdjson(streamOf('{"delta":"x","done":true}', 4))) {
      parsed.push(event);
    }
    expect(parsed).toEqual([{ delta: "x", done: true }]);
  });
});

describe("GatewayClient", () => {
  it("sends the bearer token after login", async () => {
    const seen: Record<string, string>[] = [];
    const client = new GatewayClient("", async (input, init) => {
      seen.push({ ...(init?.headers as Record<string, string>) });
      if (input.endsWith("/login")) {
        return new Response(JSON.stringify({ token: "t0k3n" }), { status: 200 });
      }
      return new Response(JSON.stringify({ records: [] }), { status: 200 });
    });
    await client.login("a@example.org", "pw");
    await client.listAnnotations();
    expect(seen[1]["authorization"]).toBe("Bearer t0k3n");
  });

  it("maps gateway error envelopes to ApiError", async () => {
    const client = new GatewayClient("", async () =>
      new Response(
        JSON.stringify({ error: { code: "input_too_large", message: "too big" } }),
        { status: 413 },
      ),
    );
    await expect(client.ner("x")).rejects.toMatchObject({
      code: "input_too_large",
      status: 413,
    });
    await expect(client.ner("x")).rejects.toBeInstanceOf(ApiError);
  });
});
