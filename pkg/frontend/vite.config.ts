import { defineConfig } from "vite";

// dev mode proxies API calls to a locally running `argclean serve`
export default defineConfig({
  server: {
    proxy: {
      "/sessions": "http://127.0.0.1:8000",
    },
  },
  build: {
    outDir: "dist",
  },
});
