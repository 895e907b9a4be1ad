/** Review session state machine.
 *
 * Holds the queue of unlinked synsets, the candidate panel for the current
 * synset, and the session's decision history. Candidates are kept exactly
 * in server order; deciding a synset removes it from the queue without
 * reordering the remainder.
 */

import { ApiError, ReviewApi } from "./api.js";
import type { CandidateRow, SessionDecision, UnlinkedSynset, Verdict } from "./types.js";

export interface SessionOptions {
  queueLimit: number;
  candidateCount: number;
  reviewer: string;
}

const DEFAULTS: SessionOptions = { queueLimit: 25, candidateCount: 10, reviewer: "anonymous" };

export class ReviewSession {
  queue: UnlinkedSynset[] = [];
  current: UnlinkedSynset | null = null;
  candidates: CandidateRow[] = [];
  selectedRank: number | null = null;
  modelVersion = "";
  history: SessionDecision[] = [];
  error: string | null = null;
  candidateNotice: string | null = null;
  private options: SessionOptions;

  constructor(private api: ReviewApi, options: Partial<SessionOptions> = {}) {
    this.options = { ...DEFAULTS, ...options };
  }

  get reviewer(): string {
    return this.options.reviewer;
  }

  /** Load the queue and open the first synset's candidate panel. */
  async loadQueue(): Promise<void> {
    this.error = null;
    try {
      const response = await this.api.fetchUnlinked(this.options.queueLimit);
      this.queue = response.synsets;
      this.modelVersion = response.model_version;
    } catch (err) {
      this.error = err instanceof ApiError ? err.message : String(err);
      return;
    }
    await this.openSynset(this.queue[0] ?? null);
  }

  async openSynset(synset: UnlinkedSynset | null): Promise<void> {
    this.current = synset;
    this.candidates = [];
    this.selectedRank = null;
    this.candidateNotice = null;
    if (!synset) return;
    try {
      const response = await this.api.fetchCandidates(synset.source_id, this.options.candidateCount);
      this.candidates = response.candidates; // server order, never re-sorted
      this.modelVersion = response.model_version;
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.candidateNotice = "cannot embed this synset (no member is in vocabulary)";
      } else {
        this.error = err instanceof ApiError ? err.message : String(err);
      }
    }
  }

  selectRank(rank: number): void {
    if (rank >= 1 && rank <= this.candidates.length) {
      this.selectedRank = rank;
    }
  }

  /** Record a verdict for the selected candidate.
   *
   * Optimistic: the row is marked and the queue advances immediately; a
   * server error rolls the entry back and surfaces a banner.
   */
  async decideSelected(verdict: Verdict): Promise<void> {
    if (!this.current || this.selectedRank === null) return;
    const candidate = this.candidates[this.selectedRank - 1];
    await this.decide(this.current, candidate.target_id, verdict);
  }

  async decide(synset: UnlinkedSynset, targetId: string, verdict: Verdict): Promise<void> {
    const entry: SessionDecision = {
      source_id: synset.source_id,
      target_id: targetId,
      verdict,
      saved: false,
    };
    this.history.push(entry);
    try {
      await this.api.postDecision({
        source_id: synset.source_id,
        target_id: targetId,
        verdict,
        reviewer: this.options.reviewer,
      });
      entry.saved = true;
    } catch (err) {
      this.history.splice(this.history.indexOf(entry), 1); // rollback
      this.error = err instanceof ApiError ? err.message : String(err);
      return;
    }
    if (verdict === "accept") {
      const index = this.queue.findIndex((s) => s.source_id === synset.source_id);
      if (index >= 0) this.queue.splice(index, 1);
      await this.openSynset(this.queue[0] ?? null);
    }
  }

  async retrain(): Promise<void> {
    this.error = null;
    try {
      const response = await this.api.retrain();
      this.modelVersion = response.model_version;
    } catch (err) {
      this.error = err instanceof ApiError ? err.message : String(err);
      return;
    }
    if (this.current) await this.openSynset(this.current);
  }
}
