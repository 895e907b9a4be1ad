/** DOM glue: wires the session to the page and the keyboard. */

import { ReviewApi } from "./api.js";
import { actionForKey } from "./keyboard.js";
import { renderApp } from "./render.js";
import { ReviewSession } from "./state.js";

const api = new ReviewApi("");
const session = new ReviewSession(api, {
  reviewer: new URLSearchParams(window.location.search).get("reviewer") ?? "anonymous",
});

const root = document.getElementById("app");
if (!root) throw new Error("#app container missing");

function redraw(): void {
  root!.innerHTML = renderApp(session);
}

async function run(task: Promise<void>): Promise<void> {
  await task;
  redraw();
}

window.addEventListener("keydown", (event) => {
  const inTextField =
    event.target instanceof HTMLInputElement || event.target instanceof HTMLTextAreaElement;
  const action = actionForKey({ key: event.key, inTextField });
  switch (action.kind) {
    case "select":
      session.selectRank(action.rank);
      redraw();
      break;
    case "verdict":
      void run(session.decideSelected(action.verdict));
      break;
    case "next": {
      const index = session.queue.findIndex((s) => s.source_id === session.current?.source_id);
      const next = session.queue[index + 1] ?? null;
      void run(session.openSynset(next));
      break;
    }
    case "retrain":
      void run(session.retrain());
      break;
  }
});

root.addEventListener("click", (event) => {
  const item = (event.target as HTMLElement).closest<HTMLElement>("[data-source-id]");
  if (!item) return;
  const synset = session.queue.find((s) => s.source_id === item.dataset.sourceId);
  if (synset) void run(session.openSynset(synset));
});

void run(session.loadQueue());
