/** Browser entry point. The API base URL can be overridden at runtime via
 * `window.SCRIBBLE_API_URL` or a `?api=` query parameter. */

import { ApiClient } from "./api.js";
import { createApp } from "./app.js";

declare global {
  interface Window {
    SCRIBBLE_API_URL?: string;
  }
}

const params = new URLSearchParams(window.location.search);
const baseUrl =
  params.get("api") ?? window.SCRIBBLE_API_URL ?? "http://127.0.0.1:8080";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
createApp(root, new ApiClient(baseUrl));
