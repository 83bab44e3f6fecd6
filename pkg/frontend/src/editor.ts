import { GatewayClient } from "./api";
import type { PunctuateResult, RenderMode, TagDisplay } from "./types";

/**
 * State behind the four-panel task views. The model-prediction panel is
 * immutable for the lifetime of a prediction; only the editable panel
 * changes. Each new prediction re-seeds the editable panel.
 */
export class EditorState<Output> {
  private prediction: Output | null = null;
  edited: Output | null = null;
  renderMode: RenderMode = "Comprehensive";
  tagDisplay: TagDisplay = "inline";

  constructor(public rawText: string = "") {}

  get modelOutput(): Output | null {
    return this.prediction;
  }

  setPrediction(output: Output): void {
    this.prediction = output;
    this.edited = structuredClone(output);
  }

  edit(output: Output): void {
    if (this.prediction === null) throw new Error("no prediction to edit");
    this.edited = output;
  }
}

/** Punctuation view: mode toggles re-render via the gateway, never locally. */
export class PunctuationView {
  readonly state = new EditorState<PunctuateResult>();

  constructor(private readonly client: GatewayClient) {}

  async submit(text: string): Promise<PunctuateResult> {
    this.state.rawText = text;
    const result = await this.client.punctuate(text, this.state.renderMode);
    this.state.setPrediction(result);
    return result;
  }

  /** Toggling mode re-requests rendering; the raw text is untouched. */
  async setMode(mode: RenderMode): Promise<PunctuateResult> {
    this.state.renderMode = mode;
    const result = await this.client.punctuate(this.state.rawText, mode);
    this.state.setPrediction(result);
    return result;
  }
}
