"""Exhaustive top-n candidate ranking over target synset embeddings."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from synlink.lexicon import Synset
from synlink.linear_map import TranslationMatrix, apply_map
from synlink.embeddings import WordEmbeddingTable
from synlink.synset_embedding import EmbeddingPolicy, SkippedSynset, SynsetEmbedding, embed_synset

SIM_DOT = "dot"
SIM_COSINE = "cosine"


@dataclass(frozen=True)
class RankedCandidateList:
    source_id: str
    candidates: tuple[tuple[str, float], ...]
    similarity_kind: str

    def __post_init__(self) -> None:
        scores = [s for _, s in self.candidates]
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise ValueError("candidate scores must be non-increasing")
        ids = [t for t, _ in self.candidates]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate target ids in candidate list")

    def target_ids(self) -> list[str]:
        return [t for t, _ in self.candidates]


class _TargetMatrix:
    """Cached stacked view of a target embedding table for repeated queries."""

    def __init__(self, target_embeddings: dict[str, SynsetEmbedding]):
        if not target_embeddings:
            raise ValueError("target embedding set is empty")
        self.ids = np.array(sorted(target_embeddings.keys()))
        self.matrix = np.vstack([target_embeddings[i].vector for i in self.ids]).astype(np.float64)
        norms = np.linalg.norm(self.matrix, axis=1)
        norms[norms == 0.0] = 1.0
        self.unit_matrix = self.matrix / norms[:, None]


def _scores(cache: _TargetMatrix, v_prime: np.ndarray, similarity_kind: str) -> np.ndarray:
    v = np.asarray(v_prime, dtype=np.float64)
    if v.shape != (cache.matrix.shape[1],):
        raise ValueError(f"query dimension {v.shape} does not match targets {cache.matrix.shape[1]}")
    if similarity_kind == SIM_DOT:
        return cache.matrix @ v
    if similarity_kind == SIM_COSINE:
        norm = np.linalg.norm(v)
        if norm == 0.0:
            return np.zeros(len(cache.ids))
        return cache.unit_matrix @ (v / norm)
    raise ValueError(f"unknown similarity kind {similarity_kind!r}")


def rank_candidates(
    v_prime: np.ndarray,
    target_embeddings: dict[str, SynsetEmbedding] | _TargetMatrix,
    n: int,
    similarity_kind: str = SIM_COSINE,
) -> RankedCandidateList:
    """Exhaustive scan: top min(n, |targets|) by similarity, ties broken by id."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cache = target_embeddings if isinstance(target_embeddings, _TargetMatrix) else _TargetMatrix(target_embeddings)
    scores = _scores(cache, v_prime, similarity_kind)
    # primary key: descending score; secondary: ascending id (ids pre-sorted,
    # lexsort is stable so equal scores keep id order)
    order = np.argsort(-scores, kind="stable")[:n]
    candidates = tuple((str(cache.ids[i]), float(scores[i])) for i in order)
    return RankedCandidateList(source_id="", candidates=candidates, similarity_kind=similarity_kind)


def link_synset(
    source_synset: Synset,
    W: TranslationMatrix,
    source_table: WordEmbeddingTable,
    target_embeddings: dict[str, SynsetEmbedding] | _TargetMatrix,
    policy: EmbeddingPolicy | None = None,
    n: int = 10,
    similarity_kind: str = SIM_COSINE,
) -> RankedCandidateList | SkippedSynset:
    """Full linking procedure for one source synset.

    Embed the synset, map its vector into the target space, then rank all
    target synset embeddings.
    """
    embedded = embed_synset(source_synset, source_table, policy)
    if isinstance(embedded, SkippedSynset):
        return embedded
    v_prime = apply_map(W, embedded.vector)
    ranked = rank_candidates(v_prime, target_embeddings, n, similarity_kind)
    return RankedCandidateList(
        source_id=source_synset.id, candidates=ranked.candidates, similarity_kind=similarity_kind
    )


def write_candidates_tsv(path: str | Path, lists: list[RankedCandidateList]) -> None:
    """Batch output: source_id<TAB>rank<TAB>target_id<TAB>score, ranks from 1."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for ranked in lists:
            for rank, (target_id, score) in enumerate(ranked.candidates, 1):
                fh.write(f"{ranked.source_id}\t{rank}\t{target_id}\t{score:.6f}\n")
