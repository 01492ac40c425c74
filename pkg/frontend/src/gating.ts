/**
 * Pure control-gating rules for the session view. The UI derives every
 * enabled/disabled state from here so it can never issue a request the
 * session state machine would reject.
 */

import type { SessionState } from "./types.js";

export interface SessionGates {
  /** conversation textbox + Enter */
  conversationEnabled: boolean;
  finalizeEnabled: boolean;
  /** Save (export download) — only once the script is finalized */
  saveEnabled: boolean;
}

export function sessionGates(
  state: SessionState | null,
  pending: boolean,
): SessionGates {
  return {
    conversationEnabled: state === "drafting" && !pending,
    finalizeEnabled: state === "drafting" && !pending,
    saveEnabled: state === "finalized" && !pending,
  };
}
