/** Pure HTML renderers: state in, markup out. Keeping these DOM-free makes
 * the panel order and badge content directly assertable in tests.
 */

import type { ReviewSession } from "./state.js";
import type { CandidateRow, SessionDecision, UnlinkedSynset } from "./types.js";

function esc(text: string | null): string {
  return (text ?? "").replace(/[&<>"]/g, (c) =>
    ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" }[c] as string),
  );
}

export function renderVersionBadge(modelVersion: string): string {
  return `<span class="badge" data-testid="model-version">model ${esc(modelVersion)}</span>`;
}

export function renderQueue(queue: UnlinkedSynset[], currentId: string | null): string {
  if (queue.length === 0) {
    return `<p class="empty" data-testid="queue-empty">All synsets linked — nothing to review.</p>`;
  }
  const rows = queue.map((s) => {
    const active = s.source_id === currentId ? ' class="active"' : "";
    return (
      `<li${active} data-source-id="${esc(s.source_id)}">` +
      `<strong>${esc(s.source_id)}</strong> <em>${esc(s.pos)}</em> ` +
      `${esc(s.members.join(", "))}` +
      (s.gloss ? ` — ${esc(s.gloss)}` : "") +
      `</li>`
    );
  });
  return `<ul class="queue" data-testid="queue">${rows.join("")}</ul>`;
}

export function renderCandidatePanel(
  candidates: CandidateRow[],
  selectedRank: number | null,
  notice: string | null,
): string {
  if (notice) {
    return `<p class="notice" data-testid="candidate-notice">${esc(notice)}</p>`;
  }
  if (candidates.length === 0) {
    return `<p class="empty">No candidates loaded.</p>`;
  }
  // rows appear exactly in server rank order
  const rows = candidates.map((c) => {
    const selected = c.rank === selectedRank ? ' class="selected"' : "";
    return (
      `<tr${selected} data-rank="${c.rank}" data-target-id="${esc(c.target_id)}">` +
      `<td>${c.rank}</td>` +
      `<td>${esc(c.target_id)}</td>` +
      `<td>${c.score.toFixed(4)}</td>` +
      `<td>${esc(c.members.join(", "))}</td>` +
      `<td>${esc(c.gloss)}</td>` +
      `</tr>`
    );
  });
  return (
    `<table class="candidates" data-testid="candidates">` +
    `<thead><tr><th>#</th><th>Synset</th><th>Score</th><th>Members</th><th>Gloss</th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table>`
  );
}

export function renderHistory(history: SessionDecision[]): string {
  const rows = history
    .map(
      (d) =>
        `<li class="${d.verdict}">${esc(d.source_id)} → ${esc(d.target_id)}: ` +
        `${d.verdict}${d.saved ? "" : " (saving…)"}</li>`,
    )
    .reverse();
  return `<ol class="history" data-testid="history">${rows.join("")}</ol>`;
}

export function renderErrorBanner(error: string | null): string {
  if (!error) return "";
  return `<div class="error-banner" data-testid="error">${esc(error)}</div>`;
}

export function renderApp(session: ReviewSession): string {
  return [
    renderErrorBanner(session.error),
    renderVersionBadge(session.modelVersion),
    `<section id="queue-panel"><h2>Review queue</h2>` +
      renderQueue(session.queue, session.current?.source_id ?? null) +
      `</section>`,
    `<section id="candidate-panel"><h2>Candidates` +
      (session.current ? ` for ${esc(session.current.source_id)}` : "") +
      `</h2>` +
      renderCandidatePanel(session.candidates, session.selectedRank, session.candidateNotice) +
      `</section>`,
    `<section id="history-panel"><h2>This session</h2>` + renderHistory(session.history) + `</section>`,
  ].join("\n");
}
