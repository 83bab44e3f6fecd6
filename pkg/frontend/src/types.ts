export type EntityTypeCode = "PER" | "LOC" | "ORG" | "MISC";

export interface EntitySpan {
  start: number;
  end: number; // exclusive
  type: EntityTypeCode;
}

export type RenderMode = "Comprehensive" | "Simple" | "SimpleWithSpace";

export type TagDisplay = "hidden" | "inline" | "floating";

export type Task = "punctuate" | "ner" | "translate";

export type TargetLanguage = "Korean" | "English";

export interface PunctuateResult {
  labels: string[];
  rendered: string;
  offsets: number[];
  stripped: boolean;
}

export interface NerResult {
  tags: string[];
  spans: EntitySpan[];
}

export interface GlossaryEntry {
  char: string;
  reading: string | null;
  definitions: string[];
  link: string;
}

export interface StreamDelta {
  delta: string;
  done: boolean;
  error?: string;
}

export interface AnnotationRecord {
  id: string;
  user_id: string;
  task: Task;
  input_text: string;
  model_output: unknown;
  edited_output: unknown;
  params: Record<string, unknown>;
  created_at: string;
  updated_at: string;
}
