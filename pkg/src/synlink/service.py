"""HTTP review service: serve ranked candidates, record lexicographer
decisions in an append-only JSON-lines log, and refit the map on demand.

Requests are served from an immutable snapshot (matrix + embeddings);
/retrain builds a new snapshot off to the side and swaps it atomically, so
no request ever sees a half-updated model.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from synlink.embeddings import WordEmbeddingTable, load_word2vec_text
from synlink.lexicon import LINK_DIRECT, Lexicon, LinkRecord, filter_direct, load_links, load_synsets
from synlink.linear_map import TrainingPair, TranslationMatrix, fit_least_squares, load_matrix
from synlink.ranking import _TargetMatrix, link_synset
from synlink.synset_embedding import EmbeddingPolicy, SkippedSynset, SynsetEmbedding, embed_lexicon

VERDICT_ACCEPT = "accept"
VERDICT_REJECT = "reject"


def matrix_version(W: TranslationMatrix) -> str:
    """Content hash of the serving matrix, used as the model version."""
    return hashlib.sha256(W.values.tobytes()).hexdigest()[:12]


@dataclass(frozen=True)
class ReviewDecision:
    source_id: str
    target_id: str
    verdict: str
    reviewer: str
    timestamp: str
    model_version: str

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "ReviewDecision":
        return cls(**json.loads(line))

    def key(self) -> tuple[str, str, str, str]:
        return (self.source_id, self.target_id, self.verdict, self.reviewer)


@dataclass(frozen=True)
class Snapshot:
    matrix: TranslationMatrix
    source_embeddings: dict[str, SynsetEmbedding]
    target_embeddings: dict[str, SynsetEmbedding]
    target_cache: _TargetMatrix
    version: str


@dataclass
class ServiceState:
    source_lexicon: Lexicon
    target_lexicon: Lexicon
    source_table: WordEmbeddingTable
    gold_links: list[LinkRecord]
    policy: EmbeddingPolicy
    similarity_kind: str
    decision_log: Path
    ridge_lambda: float = 1e-3
    snapshot: Snapshot = None  # set in __post_init__ / from_files
    decisions: list[ReviewDecision] = field(default_factory=list)
    accepts_since_retrain: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @classmethod
    def from_files(
        cls,
        src_emb, tgt_emb, src_syn, tgt_syn, links, matrix, state_dir,
        policy: EmbeddingPolicy | None = None,
        similarity_kind: str = "cosine",
        ridge_lambda: float = 1e-3,
    ) -> "ServiceState":
        policy = policy or EmbeddingPolicy()
        source_table = load_word2vec_text(src_emb, "source", case_policy=policy.case_policy)
        target_table = load_word2vec_text(tgt_emb, "target", case_policy=policy.case_policy)
        source_lexicon = load_synsets(src_syn, "source")
        target_lexicon = load_synsets(tgt_syn, "target")
        src_embs, _ = embed_lexicon(source_lexicon, source_table, policy)
        tgt_embs, _ = embed_lexicon(target_lexicon, target_table, policy)
        W = load_matrix(matrix)
        state_dir = Path(state_dir)
        state_dir.mkdir(parents=True, exist_ok=True)
        state = cls(
            source_lexicon=source_lexicon,
            target_lexicon=target_lexicon,
            source_table=source_table,
            gold_links=filter_direct(load_links(links)),
            policy=policy,
            similarity_kind=similarity_kind,
            decision_log=state_dir / "decisions.jsonl",
            ridge_lambda=ridge_lambda,
            snapshot=Snapshot(
                matrix=W,
                source_embeddings=src_embs,
                target_embeddings=tgt_embs,
                target_cache=_TargetMatrix(tgt_embs),
                version=matrix_version(W),
            ),
        )
        state.replay_log()
        return state

    def replay_log(self) -> None:
        """Rebuild decision state from the append-only log."""
        if not self.decision_log.exists():
            return
        with self.decision_log.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    self.decisions.append(ReviewDecision.from_json(line))
        self.accepts_since_retrain = sum(1 for d in self.decisions if d.verdict == VERDICT_ACCEPT)

    def pair_states(self) -> dict[tuple[str, str], str]:
        """Latest verdict per (source, target) pair, in log order."""
        states: dict[tuple[str, str], str] = {}
        for d in self.decisions:
            states[(d.source_id, d.target_id)] = d.verdict
        return states

    def accepted_pairs(self) -> list[tuple[str, str]]:
        return [pair for pair, verdict in self.pair_states().items() if verdict == VERDICT_ACCEPT]

    def linked_sources(self) -> set[str]:
        gold = {r.source_id for r in self.gold_links}
        return gold | {s for s, _ in self.accepted_pairs()}

    def append_decision(self, source_id: str, target_id: str, verdict: str, reviewer: str) -> tuple[ReviewDecision, bool]:
        """Append a decision; exact duplicates return the existing record."""
        with self._lock:
            key = (source_id, target_id, verdict, reviewer)
            for existing in self.decisions:
                if existing.key() == key:
                    return existing, False
            decision = ReviewDecision(
                source_id=source_id,
                target_id=target_id,
                verdict=verdict,
                reviewer=reviewer,
                timestamp=datetime.now(timezone.utc).isoformat(),
                model_version=self.snapshot.version,
            )
            with self.decision_log.open("a", encoding="utf-8", newline="\n") as fh:
                fh.write(decision.to_json() + "\n")
            self.decisions.append(decision)
            if verdict == VERDICT_ACCEPT:
                self.accepts_since_retrain += 1
            return decision, True

    def retrain(self) -> Snapshot:
        """Refit on gold DIRECT links plus accepted decisions; swap atomically."""
        snapshot = self.snapshot
        training: list[tuple[str, str]] = [(r.source_id, r.target_id) for r in self.gold_links]
        training += self.accepted_pairs()
        pairs = [
            TrainingPair(
                source_vec=snapshot.source_embeddings[s].vector,
                target_vec=snapshot.target_embeddings[t].vector,
                source_id=s,
                target_id=t,
            )
            for s, t in training
            if s in snapshot.source_embeddings and t in snapshot.target_embeddings
        ]
        if not pairs:
            raise ValueError("no trainable pairs")
        W = fit_least_squares(pairs, ridge_lambda=self.ridge_lambda)
        new_snapshot = Snapshot(
            matrix=W,
            source_embeddings=snapshot.source_embeddings,
            target_embeddings=snapshot.target_embeddings,
            target_cache=snapshot.target_cache,
            version=matrix_version(W),
        )
        with self._lock:
            self.snapshot = new_snapshot
            self.accepts_since_retrain = 0
        return new_snapshot


class DecisionBody(BaseModel):
    source_id: str
    target_id: str
    verdict: str
    reviewer: str


def _synset_payload(synset) -> dict:
    return {
        "source_id": synset.id,
        "pos": synset.pos.label,
        "members": list(synset.members),
        "gloss": synset.gloss,
    }


def build_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="synlink review service")

    @app.get("/synsets/unlinked")
    def unlinked(limit: int = 50):
        linked = state.linked_sources()
        items = [
            _synset_payload(state.source_lexicon.synsets[sid])
            for sid in sorted(state.source_lexicon.synsets)
            if sid not in linked
        ][:limit]
        return {"synsets": items, "model_version": state.snapshot.version}

    @app.get("/candidates/{source_id}")
    def candidates(source_id: str, n: int = 10):
        snapshot = state.snapshot
        synset = state.source_lexicon.get(source_id)
        if synset is None:
            return JSONResponse(status_code=404, content={"error": f"unknown synset {source_id}"})
        result = link_synset(
            synset, snapshot.matrix, state.source_table, snapshot.target_cache,
            policy=state.policy, n=n, similarity_kind=state.similarity_kind,
        )
        if isinstance(result, SkippedSynset):
            return JSONResponse(status_code=422, content={"error": result.reason})
        rows = []
        for rank, (target_id, score) in enumerate(result.candidates, 1):
            target = state.target_lexicon.get(target_id)
            rows.append({
                "rank": rank,
                "target_id": target_id,
                "score": score,
                "members": list(target.members) if target else [],
                "gloss": target.gloss if target else None,
            })
        return {
            "source_id": source_id,
            "similarity": state.similarity_kind,
            "model_version": snapshot.version,
            "candidates": rows,
        }

    @app.post("/decisions")
    def post_decision(body: DecisionBody):
        if body.verdict not in (VERDICT_ACCEPT, VERDICT_REJECT):
            return JSONResponse(status_code=400, content={"error": f"bad verdict {body.verdict!r}"})
        if body.source_id not in state.source_lexicon:
            return JSONResponse(status_code=404, content={"error": f"unknown source {body.source_id}"})
        if body.target_id not in state.target_lexicon:
            return JSONResponse(status_code=404, content={"error": f"unknown target {body.target_id}"})
        decision, created = state.append_decision(body.source_id, body.target_id, body.verdict, body.reviewer)
        return JSONResponse(status_code=201 if created else 200, content=decision.__dict__)

    @app.post("/retrain")
    def retrain():
        if state.accepts_since_retrain == 0:
            return JSONResponse(status_code=409, content={"error": "no accepted decisions since last retrain"})
        try:
            snapshot = state.retrain()
        except Exception as exc:  # old snapshot keeps serving
            return JSONResponse(status_code=500, content={"error": str(exc)})
        return {"model_version": snapshot.version}

    return app
