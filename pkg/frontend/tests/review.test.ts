import { beforeEach, describe, expect, it } from "vitest";

import { ReviewApi } from "../src/api.js";
import { actionForKey } from "../src/keyboard.js";
import { renderApp, renderCandidatePanel, renderQueue, renderVersionBadge } from "../src/render.js";
import { ReviewSession } from "../src/state.js";
import { FixtureService } from "./fixtureService.js";

let service: FixtureService;
let session: ReviewSession;

beforeEach(() => {
  service = FixtureService.standard();
  session = new ReviewSession(new ReviewApi("http://fixture", service.fetch), {
    reviewer: "lex1",
  });
});

describe("queue view", () => {
  it("lists unlinked synsets in server order", async () => {
    await session.loadQueue();
    expect(session.queue.map((s) => s.source_id)).toEqual([
      "src_0000", "src_0001", "src_0002", "src_0003", "src_0004",
    ]);
    const html = renderQueue(session.queue, session.current?.source_id ?? null);
    const order = [...html.matchAll(/data-source-id="([^"]+)"/g)].map((m) => m[1]);
    expect(order).toEqual(session.queue.map((s) => s.source_id));
  });

  it("shows the all-linked state for an empty queue", () => {
    expect(renderQueue([], null)).toContain("queue-empty");
  });

  it("shrinks by one after an accepted decision", async () => {
    await session.loadQueue();
    const before = session.queue.length;
    session.selectRank(1);
    await session.decideSelected("accept");
    expect(session.queue.length).toBe(before - 1);
  });

  it("surfaces a connectivity banner when the service is down", async () => {
    const broken = new ReviewSession(
      new ReviewApi("http://fixture", async () => {
        throw new Error("ECONNREFUSED");
      }),
    );
    await broken.loadQueue();
    expect(broken.error).toContain("unreachable");
    expect(renderApp(broken)).toContain('data-testid="error"');
  });
});

describe("candidate panel", () => {
  it("renders rows in server rank order without re-sorting", async () => {
    await session.loadQueue();
    expect(session.candidates.map((c) => c.rank)).toEqual([1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
    const html = renderCandidatePanel(session.candidates, null, null);
    const ids = [...html.matchAll(/data-target-id="([^"]+)"/g)].map((m) => m[1]);
    expect(ids).toEqual(session.candidates.map((c) => c.target_id));
    const scores = session.candidates.map((c) => c.score);
    expect(scores).toEqual([...scores].sort((a, b) => b - a));
  });

  it("shows a cannot-embed notice on 422", async () => {
    await session.loadQueue();
    const oov = session.queue.find((s) => s.source_id === "src_0004")!;
    await session.openSynset(oov);
    expect(session.candidateNotice).toContain("cannot embed");
    expect(renderApp(session)).toContain("candidate-notice");
  });

  it("refreshes the model version badge after retrain", async () => {
    await session.loadQueue();
    const oldVersion = session.modelVersion;
    session.selectRank(2);
    await session.decideSelected("accept");
    await session.retrain();
    expect(session.modelVersion).not.toBe(oldVersion);
    expect(renderVersionBadge(session.modelVersion)).toContain(session.modelVersion);
  });
});

describe("decisions", () => {
  it("accept marks the row saved and advances the queue", async () => {
    await session.loadQueue();
    session.selectRank(1);
    await session.decideSelected("accept");
    expect(session.history).toHaveLength(1);
    expect(session.history[0].saved).toBe(true);
    expect(session.current?.source_id).toBe("src_0001");
  });

  it("rolls back and shows an error on a 404", async () => {
    await session.loadQueue();
    await session.decide(session.current!, "tgt_bogus", "accept");
    expect(session.history).toHaveLength(0);
    expect(session.error).toContain("unknown target");
  });

  it("duplicate submissions leave a single log entry", async () => {
    await session.loadQueue();
    const synset = session.current!;
    await session.decide(synset, "tgt_0000", "reject");
    await session.decide(synset, "tgt_0000", "reject");
    expect(service.decisionLog).toHaveLength(1);
    expect(session.history).toHaveLength(2); // both clicks acknowledged
  });
});

describe("keyboard flow", () => {
  it("maps digits and verdict keys", () => {
    expect(actionForKey({ key: "3" })).toEqual({ kind: "select", rank: 3 });
    expect(actionForKey({ key: "a" })).toEqual({ kind: "verdict", verdict: "accept" });
    expect(actionForKey({ key: "r" })).toEqual({ kind: "verdict", verdict: "reject" });
    expect(actionForKey({ key: "n" })).toEqual({ kind: "next" });
    expect(actionForKey({ key: "t" })).toEqual({ kind: "retrain" });
    expect(actionForKey({ key: "x" })).toEqual({ kind: "none" });
    expect(actionForKey({ key: "a", inTextField: true })).toEqual({ kind: "none" });
  });

  it("digit selection highlights the matching rank", async () => {
    await session.loadQueue();
    session.selectRank(4);
    const html = renderCandidatePanel(session.candidates, session.selectedRank, null);
    expect(html).toContain('class="selected" data-rank="4"');
  });
});

describe("end-to-end review loop", () => {
  it("list -> panel -> accept -> log -> retrain badge", async () => {
    // list unlinked synsets
    await session.loadQueue();
    expect(session.queue.length).toBe(5);

    // 10-candidate panel in server order
    const html = renderCandidatePanel(session.candidates, null, null);
    const ids = [...html.matchAll(/data-target-id="([^"]+)"/g)].map((m) => m[1]);
    expect(ids).toHaveLength(10);
    expect(ids).toEqual(session.candidates.map((c) => c.target_id));

    // accept lands in the decision log
    session.selectRank(1);
    const target = session.candidates[0].target_id;
    const source = session.current!.source_id;
    await session.decideSelected("accept");
    expect(service.decisionLog).toContainEqual(
      expect.objectContaining({ source_id: source, target_id: target, verdict: "accept" }),
    );

    // retrain surfaces a new model version badge
    const before = session.modelVersion;
    await session.retrain();
    expect(session.modelVersion).not.toBe(before);
    expect(renderApp(session)).toContain(`model ${session.modelVersion}`);
  });

  it("every saved history entry has a matching log record", async () => {
    await session.loadQueue();
    for (const rank of [1, 2]) {
      session.selectRank(rank);
      await session.decideSelected("reject");
    }
    session.selectRank(1);
    await session.decideSelected("accept");
    for (const entry of session.history.filter((d) => d.saved)) {
      expect(service.decisionLog).toContainEqual(
        expect.objectContaining({
          source_id: entry.source_id,
          target_id: entry.target_id,
          verdict: entry.verdict,
        }),
      );
    }
  });
});
