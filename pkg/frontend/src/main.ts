import { App } from "./app";
import { ApiClient } from "./api";

function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  // same-origin by default; override with ?api=http://host:port for a dev server
  const base = new URLSearchParams(window.location.search).get("api") ?? "";
  new App(root, new ApiClient(base));
}

if (document.readyState === "complete" || document.readyState === "interactive") {
  boot();
} else {
  window.addEventListener("DOMContentLoaded", boot);
}
