/** Payload shapes of the scribble JSON API. */

export type SessionState = "drafting" | "finalized";

export interface TranscriptEvent {
  kind: "generated" | "user_line" | "user_direction";
  text: string;
  speaker?: string;
}

export interface DocumentElement {
  kind: "scene_heading" | "action" | "cue";
  text?: string;
  character?: string;
  parenthetical?: string | null;
  dialogue?: string;
}

export interface SessionView {
  id: string;
  state: SessionState;
  created_at: string;
  config: { keywords: string[]; genre: string; creativity: number };
  anchor: string;
  transcript: TranscriptEvent[];
  final_document: { elements: DocumentElement[] } | null;
  screenplay_text?: string;
}

export interface MonologueView {
  id: string;
  config: { sentence: string; emotions: string; creativity: number };
  text: string;
  emotion_label: string;
  source_id: string | null;
}

export interface ErrorBody {
  code: string;
  message: string;
  field?: string;
}
