/** Browser entry point: mounts the app on #app and starts hash routing.
 * The API base URL can be overridden via window.KGDASH_API_BASE. */
import { createApp, pageFromHash } from "./main.js";

declare global {
  interface Window {
    KGDASH_API_BASE?: string;
  }
}

const root = document.getElementById("app");
if (root) {
  const app = createApp(root, {
    baseUrl: window.KGDASH_API_BASE ?? "",
    bindHashRouter: true,
  });
  void app.navigate(pageFromHash(window.location.hash));
}
