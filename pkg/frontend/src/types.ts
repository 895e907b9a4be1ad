/** Wire types mirroring the review service's JSON API. */

export interface UnlinkedSynset {
  source_id: string;
  pos: string;
  members: string[];
  gloss: string | null;
}

export interface CandidateRow {
  rank: number;
  target_id: string;
  score: number;
  members: string[];
  gloss: string | null;
}

export interface CandidatesResponse {
  source_id: string;
  similarity: string;
  model_version: string;
  candidates: CandidateRow[];
}

export interface UnlinkedResponse {
  synsets: UnlinkedSynset[];
  model_version: string;
}

export type Verdict = "accept" | "reject";

export interface DecisionBody {
  source_id: string;
  target_id: string;
  verdict: Verdict;
  reviewer: string;
}

export interface DecisionRecord extends DecisionBody {
  timestamp: string;
  model_version: string;
}

export interface SessionDecision {
  source_id: string;
  target_id: string;
  verdict: Verdict;
  saved: boolean;
}
