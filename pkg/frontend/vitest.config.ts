import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    globalSetup: ["tests/backend.setup.ts"],
    // integration tests share one backend with mutable comment state
    fileParallelism: false,
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
