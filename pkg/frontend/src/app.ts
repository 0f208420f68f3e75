// Entry point: wires the API client, event batcher, controller and DOM
// together, then either lands from the bookmarklet or starts blank.

import { ApiClient } from "./api.js";
import { EventBatcher } from "./events.js";
import { AppController } from "./state.js";
import { mountApp } from "./dom.js";

function resolveUser(params: URLSearchParams): string {
  const fromQuery = params.get("user");
  if (fromQuery) {
    localStorage.setItem("taggraph-user", fromQuery);
    return fromQuery;
  }
  const stored = localStorage.getItem("taggraph-user");
  if (stored) return stored;
  const asked = window.prompt("Use the bookmark manager as", "guest") || "guest";
  localStorage.setItem("taggraph-user", asked);
  return asked;
}

const params = new URLSearchParams(window.location.search);
const user = resolveUser(params);

const api = new ApiClient(window.location.origin + "/", user);
const batcher = new EventBatcher((events) => api.postEvents(events));
const controller = new AppController({
  api,
  batcher,
  openUrl: (url) => void window.open(url, "_blank"),
  promptText: (message, initial) => window.prompt(message, initial),
});

const rootEl = document.getElementById("app");
if (!rootEl) throw new Error("missing #app element");
mountApp(rootEl, controller);

const who = rootEl.querySelector(".whoami");
if (who) who.textContent = `signed in as ${user}`;

const landingUrl = params.get("url");
if (landingUrl && window.location.pathname.endsWith("/context")) {
  void controller.landFromBookmarklet(landingUrl);
} else {
  void controller.start();
}

window.addEventListener("beforeunload", () => {
  void controller.flushEvents();
});
