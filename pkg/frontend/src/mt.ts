import { GatewayClient } from "./api";
import type { TargetLanguage } from "./types";

/**
 * Machine translation view: one in-flight stream at a time. Starting a
 * new translation (or switching target mid-stream) cancels the previous
 * job and resets the buffer.
 */
export class TranslationView {
  buffer = "";
  target: TargetLanguage = "Korean";
  done = false;
  error: string | null = null;
  private controller: AbortController | null = null;

  constructor(
    private readonly client: GatewayClient,
    private readonly onUpdate: (view: TranslationView) => void = () => {},
  ) {}

  get streaming(): boolean {
    return this.controller !== null && !this.done;
  }

  cancel(): void {
    this.controller?.abort();
    this.controller = null;
  }

  async start(text: string, target: TargetLanguage): Promise<string> {
    this.cancel();
    const controller = new AbortController();
    this.controller = controller;
    this.target = target;
    this.buffer = "";
    this.done = false;
    this.error = null;
    try {
      for await (const event of this.client.translate(text, target, controller.signal)) {
        if (controller.signal.aborted) break;
        if (event.error) {
          this.error = event.error;
          break;
        }
        this.buffer += event.delta;
        if (event.done) this.done = true;
        this.onUpdate(this);
      }
    } finally {
      if (this.controller === controller) this.controller = null;
    }
    return this.buffer;
  }
}
