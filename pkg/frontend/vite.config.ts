import { defineConfig } from "vitest/config";

// dev server proxies the session API (and its websocket) to the Python
// service so the client can use same-origin paths in all environments
export default defineConfig({
  server: {
    proxy: {
      "/sessions": {
        target: "http://127.0.0.1:8008",
        ws: true,
      },
    },
  },
  test: {
    environment: "jsdom",
  },
});
