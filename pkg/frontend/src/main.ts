import { HttpTransport, SessionClient } from "./api.js";
import { paint } from "./render.js";
import { MatrixDoc } from "./types.js";
import { ExplorerModel } from "./viewmodel.js";

const DEFAULT_SEED: MatrixDoc = {
  n: 3,
  b: [
    [0, 1, 0],
    [-1, 0, 1],
    [0, -1, 0],
  ],
};

function serviceBase(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("service") ?? "http://127.0.0.1:8639";
}

async function boot(): Promise<void> {
  const rootEl = document.getElementById("app");
  const seedEl = document.getElementById("seed") as HTMLTextAreaElement | null;
  const epsEl = document.getElementById("eps") as HTMLSelectElement | null;
  const loadEl = document.getElementById("load");
  const errEl = document.getElementById("error");
  if (!rootEl) {
    return;
  }
  const model = new ExplorerModel(new SessionClient(new HttpTransport(serviceBase())));

  const repaint = () =>
    paint(rootEl, model.renderModel(), {
      onVertexClick: (v) =>
        model
          .clickVertex(v)
          .then(repaint)
          .catch((e) => showError(e)),
      onNodeSelect: (n) =>
        model
          .selectNode(n)
          .then(repaint)
          .catch((e) => showError(e)),
    });

  const showError = (e: unknown) => {
    if (errEl) {
      errEl.textContent = e instanceof Error ? e.message : String(e);
    }
  };

  const load = async () => {
    try {
      const doc = seedEl?.value ? (JSON.parse(seedEl.value) as MatrixDoc) : DEFAULT_SEED;
      await model.start(doc);
      if (errEl) {
        errEl.textContent = "";
      }
      repaint();
    } catch (e) {
      showError(e);
    }
  };

  if (seedEl) {
    seedEl.value = JSON.stringify(DEFAULT_SEED);
  }
  epsEl?.addEventListener("change", () => model.setEpsilon(Number(epsEl.value)));
  loadEl?.addEventListener("click", load);
  await load();
}

boot().catch((e) => console.error(e));
