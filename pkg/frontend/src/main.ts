import { GatewayClient } from "./api";
import { PunctuationView } from "./editor";
import { TranslationView } from "./mt";
import { renderEntityText, renderRubyStrip } from "./ruby";
import { addSpan, removeSpanAt, spanAt } from "./spans";
import type {
  EntitySpan,
  EntityTypeCode,
  RenderMode,
  TagDisplay,
  TargetLanguage,
  Task,
} from "./types";

const client = new GatewayClient("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showError(message: string): void {
  const banner = el<HTMLDivElement>("error-banner");
  banner.textContent = message;
  banner.hidden = false;
  setTimeout(() => (banner.hidden = true), 5000);
}

// ---- auth ------------------------------------------------------------

async function authenticate(kind: "login" | "register"): Promise<void> {
  const email = el<HTMLInputElement>("auth-email").value;
  const password = el<HTMLInputElement>("auth-password").value;
  try {
    if (kind === "login") await client.login(email, password);
    else await client.register(email, password);
    el<HTMLDivElement>("auth-panel").hidden = true;
    el<HTMLDivElement>("workspace").hidden = false;
    void refreshHistory();
  } catch (error) {
    showError(error instanceof Error ? error.message : String(error));
  }
}

// ---- punctuation view ------------------------------------------------

const punctuation = new PunctuationView(client);

function renderPunctuation(): void {
  const output = punctuation.state.modelOutput;
  el<HTMLDivElement>("pr-model").textContent = output?.rendered ?? "";
  const editable = el<HTMLTextAreaElement>("pr-edited");
  if (output && editable.dataset.seeded !== output.rendered) {
    editable.value = output.rendered;
    editable.dataset.seeded = output.rendered;
  }
}

// ---- NER view --------------------------------------------------------

let nerChars: string[] = [];
let nerSpans: EntitySpan[] = [];
let modelSpans: EntitySpan[] = [];
let tagDisplay: TagDisplay = "inline";
let dragAnchor: number | null = null;

function renderNer(): void {
  el<HTMLDivElement>("ner-model").innerHTML = renderEntityText(
    nerChars, modelSpans, tagDisplay,
  );
  el<HTMLDivElement>("ner-edited").innerHTML = renderEntityText(
    nerChars, nerSpans, tagDisplay,
  );
}

function positionFromEvent(event: Event): number | null {
  const target = event.target as HTMLElement | null;
  const pos = target?.closest?.(".char")?.getAttribute("data-pos");
  return pos === null || pos === undefined ? null : Number(pos);
}

function wireNerEditing(): void {
  const panel = el<HTMLDivElement>("ner-edited");
  panel.addEventListener("mousedown", (event) => {
    dragAnchor = positionFromEvent(event);
  });
  panel.addEventListener("mouseup", (event) => {
    const pos = positionFromEvent(event);
    if (pos === null || dragAnchor === null) return;
    if (pos === dragAnchor && spanAt(nerSpans, pos)) {
      nerSpans = removeSpanAt(nerSpans, pos); // click-to-remove
    } else {
      const type = el<HTMLSelectElement>("ner-type").value as EntityTypeCode;
      const start = Math.min(dragAnchor, pos);
      const end = Math.max(dragAnchor, pos) + 1;
      nerSpans = addSpan(nerSpans, start, end, type, nerChars.length);
    }
    dragAnchor = null;
    renderNer();
  });
}

// ---- translation view ------------------------------------------------

const translation = new TranslationView(client, (view) => {
  el<HTMLDivElement>("mt-model").textContent = view.buffer;
  if (view.done) {
    const editable = el<HTMLTextAreaElement>("mt-edited");
    if (!editable.value) editable.value = view.buffer;
  }
});

// ---- glossary strip --------------------------------------------------

async function refreshGlossary(text: string): Promise<void> {
  try {
    const entries = await client.glossary(text);
    el<HTMLDivElement>("glossary-strip").innerHTML = renderRubyStrip(entries);
  } catch (error) {
    showError(error instanceof Error ? error.message : String(error));
  }
}

// ---- history ---------------------------------------------------------

async function refreshHistory(): Promise<void> {
  try {
    const records = await client.listAnnotations();
    const list = el<HTMLUListElement>("history-list");
    list.innerHTML = "";
    for (const record of records) {
      const item = document.createElement("li");
      item.textContent = `${record.created_at} ${record.task}: ${record.input_text}`;
      list.appendChild(item);
    }
  } catch {
    // history is best-effort until logged in
  }
}

// ---- submit dispatch -------------------------------------------------

async function submit(): Promise<void> {
  const text = el<HTMLTextAreaElement>("input-text").value.trim();
  if (!text) return;
  const task = el<HTMLSelectElement>("task-select").value as Task;
  void refreshGlossary(text);
  try {
    if (task === "punctuate") {
      await punctuation.submit(text);
      renderPunctuation();
      await client.createAnnotation("punctuate", text,
        punctuation.state.modelOutput?.labels ?? [],
        { mode: punctuation.state.renderMode });
    } else if (task === "ner") {
      const result = await client.ner(text);
      nerChars = Array.from(text);
      modelSpans = result.spans;
      nerSpans = structuredClone(result.spans);
      renderNer();
      await client.createAnnotation("ner", text, result.tags);
    } else {
      const target = el<HTMLSelectElement>("mt-target").value as TargetLanguage;
      el<HTMLTextAreaElement>("mt-edited").value = "";
      const final = await translation.start(text, target);
      await client.createAnnotation("translate", text, final, { target });
    }
    void refreshHistory();
  } catch (error) {
    showError(error instanceof Error ? error.message : String(error));
  }
}

// ---- wiring ----------------------------------------------------------

export function init(): void {
  el<HTMLButtonElement>("auth-login").addEventListener("click", () => void authenticate("login"));
  el<HTMLButtonElement>("auth-register").addEventListener("click", () => void authenticate("register"));
  el<HTMLButtonElement>("submit").addEventListener("click", () => void submit());
  el<HTMLSelectElement>("pr-mode").addEventListener("change", (event) => {
    const mode = (event.target as HTMLSelectElement).value as RenderMode;
    void punctuation.setMode(mode).then(renderPunctuation);
  });
  el<HTMLSelectElement>("ner-display").addEventListener("change", (event) => {
    tagDisplay = (event.target as HTMLSelectElement).value as TagDisplay;
    renderNer();
  });
  el<HTMLSelectElement>("mt-target").addEventListener("change", () => {
    translation.cancel(); // switching target mid-stream cancels the job
  });
  wireNerEditing();
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  init();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", init);
}
