import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    // the e2e file boots the Python service, which needs a moment
    testTimeout: 30_000,
    hookTimeout: 30_000,
  },
});
