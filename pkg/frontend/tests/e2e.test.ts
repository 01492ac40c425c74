// @vitest-environment node
/**
 * End to end: the real UI logic drives the real HTTP service (mock backend)
 * inside a scripted happy-dom browser session, finishing with an export
 * download.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { Window } from "happy-dom";
import { afterAll, beforeAll, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { createApp, type App } from "../src/app.js";

const PORT = 18473;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 20000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/dialogues/probe`);
      if (response.status === 404) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("service did not come up in time");
}

beforeAll(async () => {
  const snapshot = join(mkdtempSync(join(tmpdir(), "scribble-e2e-")), "snap.json");
  service = spawn(
    "scribble",
    ["serve", "--port", String(PORT), "--backend", "mock", "--seed", "7",
     "--snapshot-path", snapshot],
    { stdio: "ignore" },
  );
  await waitForService();
});

afterAll(() => {
  service?.kill();
});

it("completes the full dialogue flow and downloads the export", async () => {
  const window = new Window({ url: BASE });
  const document = window.document as unknown as Document;
  document.body.innerHTML = '<div id="app"></div>';

  const downloads: { filename: string; text: string }[] = [];
  const app: App = createApp(
    document.getElementById("app") as HTMLElement,
    new ApiClient(BASE, (input, init) => fetch(input, init)),
    (filename, text) => downloads.push({ filename, text }),
  );

  const el = <T extends HTMLElement>(id: string): T =>
    document.getElementById(id) as T;
  const submit = (formId: string): void => {
    el<HTMLFormElement>(formId).dispatchEvent(
      new window.Event("submit", { bubbles: true, cancelable: true }) as unknown as Event,
    );
  };

  // idea input
  el<HTMLInputElement>("keywords-input").value = "orange, summer, iPhone";
  el<HTMLInputElement>("genre-input").value = "Horror";
  el<HTMLInputElement>("creativity-slider").value = "70";
  submit("idea-form");
  await app.idle();

  expect(app.session()?.state).toBe("drafting");
  expect(document.querySelectorAll("#transcript .block").length).toBe(1);
  expect(el("anchor-panel").textContent).toContain("Horror");
  expect(el<HTMLButtonElement>("save-button").disabled).toBe(true);

  // conversation: a character line, a direction, another direction
  for (const text of [
    "Sara: I want to go home",
    "Introduce a dragon",
    "The girl named 'Jessica' comes and try to talk to the people",
  ]) {
    el<HTMLInputElement>("conversation-input").value = text;
    submit("conversation-form");
    await app.idle();
  }
  expect(document.querySelectorAll("#transcript .block").length).toBe(7);
  expect(
    document.querySelectorAll("#transcript .block")[1]!.querySelector(".block-label")!
      .textContent,
  ).toBe("SARA");

  // finalize, then save
  el<HTMLButtonElement>("finalize-button").click();
  await app.idle();
  expect(app.session()?.state).toBe("finalized");
  expect(el("screenplay-section").hidden).toBe(false);
  expect(el("screenplay-text").textContent).toContain("SARA");
  expect(el<HTMLInputElement>("conversation-input").disabled).toBe(true);
  expect(el<HTMLButtonElement>("save-button").disabled).toBe(false);

  el<HTMLButtonElement>("save-button").click();
  await app.idle();

  expect(downloads.length).toBe(1);
  expect(downloads[0]!.filename).toBe(`scribble-${app.session()!.id}.txt`);
  expect(downloads[0]!.text.startsWith("SCRIBBLE EXPORT v1")).toBe(true);
  expect(downloads[0]!.text).toContain("SARA\nI want to go home");
  expect(downloads[0]!.text).toContain("Introduce a dragon");
});

it("completes the monologue flow with an emotion swap", async () => {
  const window = new Window({ url: BASE });
  const document = window.document as unknown as Document;
  document.body.innerHTML = '<div id="app"></div>';

  const downloads: { filename: string; text: string }[] = [];
  const app: App = createApp(
    document.getElementById("app") as HTMLElement,
    new ApiClient(BASE, (input, init) => fetch(input, init)),
    (filename, text) => downloads.push({ filename, text }),
  );
  const el = <T extends HTMLElement>(id: string): T =>
    document.getElementById(id) as T;
  const submit = (formId: string): void => {
    el<HTMLFormElement>(formId).dispatchEvent(
      new window.Event("submit", { bubbles: true, cancelable: true }) as unknown as Event,
    );
  };

  el<HTMLInputElement>("sentence-input").value =
    "Emily regrets that she dropped the school";
  el<HTMLInputElement>("emotions-input").value = "depressed";
  el<HTMLInputElement>("monologue-creativity").value = "30";
  submit("monologue-form");
  await app.idle();
  expect(el("monologue-original-text").textContent).toContain("Emily regrets");

  el<HTMLInputElement>("swap-input").value = "hopeful";
  submit("swap-form");
  await app.idle();
  expect(el("monologue-swapped-text").textContent).toBe(
    el("monologue-original-text").textContent,
  );
  expect(el("monologue-swapped-label").textContent).toBe("hopeful");

  el<HTMLButtonElement>("monologue-save-button").click();
  await app.idle();
  expect(downloads.length).toBe(1);
  expect(downloads[0]!.text.startsWith("SCRIBBLE EXPORT v1")).toBe(true);
  expect(downloads[0]!.text).toContain("== EMOTION ==\nhopeful");
});
