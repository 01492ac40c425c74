/**
 * Actor-facing single-page UI: idea-input form, live conversation pane,
 * finalize/save controls, and a monologue tab with the emotion-swap
 * exercise. All control gating is derived from the session state so the UI
 * never issues a request the service would reject.
 */

import { ApiClient, ApiError } from "./api.js";
import { browserDownload, type Downloader } from "./download.js";
import { sessionGates } from "./gating.js";
import {
  sliderToCreativity,
  validateDialogueInput,
  validateMonologueInput,
} from "./validate.js";
import type { MonologueView, SessionView, TranscriptEvent } from "./types.js";

const APP_HTML = `
<nav class="tabs">
  <button id="tab-dialogue" class="tab active" type="button">Dialogue</button>
  <button id="tab-monologue" class="tab" type="button">Monologue</button>
</nav>

<section id="dialogue-panel">
  <form id="idea-form" novalidate>
    <label>Keywords
      <input id="keywords-input" placeholder="orange, summer, iPhone">
    </label>
    <span id="keywords-error" class="field-error"></span>
    <label>Genre
      <input id="genre-input" placeholder="Horror">
    </label>
    <span id="genre-error" class="field-error"></span>
    <label>Creativity
      <input id="creativity-slider" type="range" min="0" max="100" step="1" value="50">
      <output id="creativity-value">0.50</output>
    </label>
    <button id="submit-button" type="submit">Submit</button>
  </form>

  <div id="session-meta" hidden>
    <span id="state-badge" class="badge"></span>
    <aside id="anchor-panel"></aside>
  </div>
  <div id="error-banner" class="banner" hidden></div>
  <div id="transcript"></div>
  <div id="pending-indicator" hidden>writing&hellip;</div>

  <form id="conversation-form" novalidate>
    <input id="conversation-input"
      placeholder="Sara: I want to go home &mdash; or a direction: Introduce a dragon">
    <button id="enter-button" type="submit">Enter</button>
  </form>
  <div class="controls">
    <button id="finalize-button" type="button">Finalize</button>
    <button id="save-button" type="button">Save</button>
  </div>
  <section id="screenplay-section" hidden>
    <h2>Formatted screenplay</h2>
    <pre id="screenplay-text"></pre>
  </section>
</section>

<section id="monologue-panel" hidden>
  <form id="monologue-form" novalidate>
    <label>One sentence
      <input id="sentence-input" placeholder="Emily regrets that she dropped the school">
    </label>
    <span id="sentence-error" class="field-error"></span>
    <label>Emotion
      <input id="emotions-input" placeholder="depressed, or: sad but happy">
    </label>
    <span id="emotions-error" class="field-error"></span>
    <label>Creativity
      <input id="monologue-creativity" type="range" min="0" max="100" step="1" value="50">
      <output id="monologue-creativity-value">0.50</output>
    </label>
    <button id="monologue-submit" type="submit">Submit</button>
  </form>
  <div id="monologue-banner" class="banner" hidden></div>
  <div id="monologue-result" hidden>
    <div class="monologue-pair">
      <article id="monologue-original">
        <h3 id="monologue-original-label"></h3>
        <p id="monologue-original-text"></p>
      </article>
      <article id="monologue-swapped" hidden>
        <h3 id="monologue-swapped-label"></h3>
        <p id="monologue-swapped-text"></p>
        <p id="swap-note"></p>
      </article>
    </div>
    <form id="swap-form" novalidate>
      <input id="swap-input" placeholder="opposite emotion, e.g. sad">
      <button id="swap-button" type="submit">Swap emotion</button>
    </form>
    <button id="monologue-save-button" type="button">Save</button>
  </div>
</section>
`;

export interface App {
  /** settles when every handler kicked off so far has finished */
  idle(): Promise<void>;
  session(): SessionView | null;
  monologue(): MonologueView | null;
}

export function createApp(
  root: HTMLElement,
  api: ApiClient,
  downloader: Downloader = browserDownload,
): App {
  root.innerHTML = APP_HTML;
  const doc = root.ownerDocument;
  const byId = <T extends HTMLElement>(id: string): T => {
    const node = doc.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
  };

  let session: SessionView | null = null;
  let pending = false;
  let original: MonologueView | null = null;
  let swapped: MonologueView | null = null;
  let queue: Promise<unknown> = Promise.resolve();

  const track = (operation: () => Promise<void>): void => {
    queue = queue.then(operation, operation);
  };

  // -- dialogue tab ----------------------------------------------------------

  const ideaForm = byId<HTMLFormElement>("idea-form");
  const keywordsInput = byId<HTMLInputElement>("keywords-input");
  const genreInput = byId<HTMLInputElement>("genre-input");
  const creativitySlider = byId<HTMLInputElement>("creativity-slider");
  const creativityValue = byId<HTMLOutputElement>("creativity-value");
  const submitButton = byId<HTMLButtonElement>("submit-button");
  const stateBadge = byId<HTMLSpanElement>("state-badge");
  const anchorPanel = byId<HTMLElement>("anchor-panel");
  const sessionMeta = byId<HTMLDivElement>("session-meta");
  const errorBanner = byId<HTMLDivElement>("error-banner");
  const transcriptPane = byId<HTMLDivElement>("transcript");
  const pendingIndicator = byId<HTMLDivElement>("pending-indicator");
  const conversationForm = byId<HTMLFormElement>("conversation-form");
  const conversationInput = byId<HTMLInputElement>("conversation-input");
  const enterButton = byId<HTMLButtonElement>("enter-button");
  const finalizeButton = byId<HTMLButtonElement>("finalize-button");
  const saveButton = byId<HTMLButtonElement>("save-button");
  const screenplaySection = byId<HTMLElement>("screenplay-section");
  const screenplayText = byId<HTMLPreElement>("screenplay-text");

  const fieldError = (field: string, message: string): void => {
    const slot = doc.getElementById(`${field}-error`);
    if (slot) slot.textContent = message;
  };

  const clearFieldErrors = (...fields: string[]): void => {
    for (const field of fields) fieldError(field, "");
  };

  const banner = (message: string): void => {
    errorBanner.textContent = message;
    errorBanner.hidden = message.length === 0;
  };

  const blockLabel = (event: TranscriptEvent): string => {
    if (event.kind === "user_line") return (event.speaker ?? "").toUpperCase();
    if (event.kind === "user_direction") return "DIRECTION";
    return "SCRIPT";
  };

  const renderTranscript = (): void => {
    transcriptPane.innerHTML = "";
    if (!session) return;
    for (const event of session.transcript) {
      const block = doc.createElement("div");
      block.className = `block ${event.kind.replace("_", "-")}`;
      const label = doc.createElement("span");
      label.className = "block-label";
      label.textContent = blockLabel(event);
      const text = doc.createElement("pre");
      text.textContent = event.text;
      block.append(label, text);
      transcriptPane.append(block);
    }
  };

  const applyGates = (): void => {
    const gates = sessionGates(session?.state ?? null, pending);
    conversationInput.disabled = !gates.conversationEnabled;
    enterButton.disabled = !gates.conversationEnabled;
    finalizeButton.disabled = !gates.finalizeEnabled;
    saveButton.disabled = !gates.saveEnabled;
    submitButton.disabled = pending;
    pendingIndicator.hidden = !pending;
  };

  const renderSession = (): void => {
    if (session) {
      sessionMeta.hidden = false;
      stateBadge.textContent = session.state;
      anchorPanel.textContent = session.anchor;
      if (session.state === "finalized" && session.screenplay_text) {
        screenplayText.textContent = session.screenplay_text;
        screenplaySection.hidden = false;
      }
    }
    renderTranscript();
    applyGates();
  };

  creativitySlider.addEventListener("input", () => {
    creativityValue.textContent = sliderToCreativity(
      Number(creativitySlider.value),
    ).toFixed(2);
  });

  ideaForm.addEventListener("submit", (event) => {
    event.preventDefault();
    clearFieldErrors("keywords", "genre");
    banner("");
    const creativity = sliderToCreativity(Number(creativitySlider.value));
    const errors = validateDialogueInput(
      keywordsInput.value,
      genreInput.value,
      creativity,
    );
    if (Object.keys(errors).length > 0) {
      for (const [field, message] of Object.entries(errors)) {
        fieldError(field, message);
      }
      return; // client-invalid: no request
    }
    pending = true;
    applyGates();
    track(async () => {
      try {
        session = await api.createDialogue({
          keywords: keywordsInput.value,
          genre: genreInput.value,
          creativity,
        });
        screenplaySection.hidden = true;
      } catch (error) {
        if (error instanceof ApiError && error.field) {
          fieldError(error.field, error.message);
        } else {
          banner(`could not create the session: ${(error as Error).message}`);
        }
      } finally {
        pending = false;
        renderSession();
      }
    });
  });

  conversationForm.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = conversationInput.value.trim();
    if (!session || session.state !== "drafting" || pending || text.length === 0) {
      return; // nothing to send, or the state machine would reject it
    }
    const current = session;
    banner("");
    pending = true;
    applyGates();
    track(async () => {
      try {
        session = await api.continueDialogue(current.id, text);
        conversationInput.value = "";
      } catch (error) {
        if (error instanceof ApiError && error.status === 409) {
          banner("session finalized");
          session = await api.getDialogue(current.id).catch(() => current);
        } else {
          // transcript unchanged; the typed text stays for retry
          banner(`generation failed, press Enter to retry: ${(error as Error).message}`);
        }
      } finally {
        pending = false;
        renderSession();
      }
    });
  });

  finalizeButton.addEventListener("click", () => {
    if (!session || session.state !== "drafting" || pending) return;
    const current = session;
    banner("");
    pending = true;
    applyGates();
    track(async () => {
      try {
        session = await api.finalizeDialogue(current.id);
      } catch (error) {
        if (error instanceof ApiError && error.status === 409) {
          banner("session finalized");
          session = await api.getDialogue(current.id).catch(() => current);
        } else {
          banner(`finalize failed: ${(error as Error).message}`);
        }
      } finally {
        pending = false;
        renderSession();
      }
    });
  });

  saveButton.addEventListener("click", () => {
    if (!session || session.state !== "finalized" || pending) return;
    const current = session;
    pending = true;
    applyGates();
    track(async () => {
      try {
        const text = await api.fetchDialogueExport(current.id);
        downloader(`scribble-${current.id}.txt`, text);
      } catch (error) {
        banner(`export failed: ${(error as Error).message}`);
      } finally {
        pending = false;
        applyGates();
      }
    });
  });

  // -- monologue tab ---------------------------------------------------------

  const monologueForm = byId<HTMLFormElement>("monologue-form");
  const sentenceInput = byId<HTMLInputElement>("sentence-input");
  const emotionsInput = byId<HTMLInputElement>("emotions-input");
  const monologueSlider = byId<HTMLInputElement>("monologue-creativity");
  const monologueSliderValue = byId<HTMLOutputElement>("monologue-creativity-value");
  const monologueBanner = byId<HTMLDivElement>("monologue-banner");
  const monologueResult = byId<HTMLDivElement>("monologue-result");
  const originalLabel = byId<HTMLHeadingElement>("monologue-original-label");
  const originalText = byId<HTMLParagraphElement>("monologue-original-text");
  const swappedCard = byId<HTMLElement>("monologue-swapped");
  const swappedLabel = byId<HTMLHeadingElement>("monologue-swapped-label");
  const swappedText = byId<HTMLParagraphElement>("monologue-swapped-text");
  const swapNote = byId<HTMLParagraphElement>("swap-note");
  const swapForm = byId<HTMLFormElement>("swap-form");
  const swapInput = byId<HTMLInputElement>("swap-input");
  const monologueSave = byId<HTMLButtonElement>("monologue-save-button");

  const renderMonologue = (): void => {
    if (!original) return;
    monologueResult.hidden = false;
    originalLabel.textContent = original.emotion_label;
    originalText.textContent = original.text;
    if (swapped) {
      swappedCard.hidden = false;
      swappedLabel.textContent = swapped.emotion_label;
      swappedText.textContent = swapped.text;
      swapNote.textContent =
        swapped.text === original.text
          ? "same lines, new emotion"
          : "lines differ";
    } else {
      swappedCard.hidden = true;
    }
  };

  monologueSlider.addEventListener("input", () => {
    monologueSliderValue.textContent = sliderToCreativity(
      Number(monologueSlider.value),
    ).toFixed(2);
  });

  monologueForm.addEventListener("submit", (event) => {
    event.preventDefault();
    clearFieldErrors("sentence", "emotions");
    monologueBanner.hidden = true;
    const creativity = sliderToCreativity(Number(monologueSlider.value));
    const errors = validateMonologueInput(
      sentenceInput.value,
      emotionsInput.value,
      creativity,
    );
    if (Object.keys(errors).length > 0) {
      for (const [field, message] of Object.entries(errors)) {
        fieldError(field, message);
      }
      return; // client-invalid: no request
    }
    track(async () => {
      try {
        original = await api.createMonologue({
          sentence: sentenceInput.value,
          emotions: emotionsInput.value,
          creativity,
        });
        swapped = null;
      } catch (error) {
        monologueBanner.textContent = `generation failed: ${(error as Error).message}`;
        monologueBanner.hidden = false;
      }
      renderMonologue();
    });
  });

  swapForm.addEventListener("submit", (event) => {
    event.preventDefault();
    const emotion = swapInput.value.trim();
    if (!original || emotion.length === 0) {
      fieldError("emotions", original ? "" : "generate a monologue first");
      return;
    }
    const base = swapped ?? original;
    track(async () => {
      try {
        swapped = await api.swapEmotion(base.id, emotion);
        swapInput.value = "";
      } catch (error) {
        monologueBanner.textContent = `swap failed: ${(error as Error).message}`;
        monologueBanner.hidden = false;
      }
      renderMonologue();
    });
  });

  monologueSave.addEventListener("click", () => {
    const target = swapped ?? original;
    if (!target) return;
    track(async () => {
      try {
        const text = await api.fetchMonologueExport(target.id);
        downloader(`scribble-${target.id}.txt`, text);
      } catch (error) {
        monologueBanner.textContent = `export failed: ${(error as Error).message}`;
        monologueBanner.hidden = false;
      }
    });
  });

  // -- tabs ------------------------------------------------------------------

  const dialoguePanel = byId<HTMLElement>("dialogue-panel");
  const monologuePanel = byId<HTMLElement>("monologue-panel");
  const dialogueTab = byId<HTMLButtonElement>("tab-dialogue");
  const monologueTab = byId<HTMLButtonElement>("tab-monologue");

  const selectTab = (dialogue: boolean): void => {
    dialoguePanel.hidden = !dialogue;
    monologuePanel.hidden = dialogue;
    dialogueTab.classList.toggle("active", dialogue);
    monologueTab.classList.toggle("active", !dialogue);
  };
  dialogueTab.addEventListener("click", () => selectTab(true));
  monologueTab.addEventListener("click", () => selectTab(false));

  applyGates();

  return {
    idle: () => queue.then(() => undefined),
    session: () => session,
    monologue: () => swapped ?? original,
  };
}
