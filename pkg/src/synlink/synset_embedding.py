"""Synset embeddings: the mean of member-word vectors, with OOV/phrase policies."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from synlink.embeddings import CASE_EXACT, WordEmbeddingTable, lookup, save_word2vec_text
from synlink.lexicon import Lexicon, Synset

OOV_SKIP_MEMBER = "skip_member"
OOV_FAIL_SYNSET = "fail_synset"
PHRASE_SPLIT_AND_AVERAGE = "split_and_average"
PHRASE_SKIP_MEMBER = "skip_member"

# Multiword members are split on whitespace and underscores.
_PHRASE_SPLIT = re.compile(r"[\s_]+")


@dataclass(frozen=True)
class EmbeddingPolicy:
    oov_handling: str = OOV_SKIP_MEMBER
    phrase_handling: str = PHRASE_SPLIT_AND_AVERAGE
    case_policy: str = CASE_EXACT
    min_coverage_fraction: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.min_coverage_fraction <= 1.0:
            raise ValueError("min_coverage_fraction must be in [0, 1]")
        if self.oov_handling not in (OOV_SKIP_MEMBER, OOV_FAIL_SYNSET):
            raise ValueError(f"unknown oov_handling {self.oov_handling!r}")
        if self.phrase_handling not in (PHRASE_SPLIT_AND_AVERAGE, PHRASE_SKIP_MEMBER):
            raise ValueError(f"unknown phrase_handling {self.phrase_handling!r}")


@dataclass(frozen=True)
class SynsetEmbedding:
    synset_id: str
    vector: np.ndarray
    covered_members: int
    total_members: int

    def __post_init__(self) -> None:
        if self.covered_members < 1:
            raise ValueError("covered_members must be >= 1")

    @property
    def coverage(self) -> float:
        return self.covered_members / self.total_members


@dataclass(frozen=True)
class SkippedSynset:
    synset_id: str
    reason: str


def _member_vector(member: str, table: WordEmbeddingTable, policy: EmbeddingPolicy) -> np.ndarray | None:
    """Vector contributed by one member lemma, or None if it is uncovered."""
    tokens = [t for t in _PHRASE_SPLIT.split(member) if t]
    if len(tokens) > 1:
        if policy.phrase_handling == PHRASE_SKIP_MEMBER:
            return None
        parts = [lookup(table, t, policy.case_policy) for t in tokens]
        found = [p for p in parts if p is not None]
        if not found:
            return None
        return np.mean(np.vstack(found).astype(np.float64), axis=0)
    vec = lookup(table, member, policy.case_policy)
    if vec is None:
        return None
    return vec.astype(np.float64)


def embed_synset(
    synset: Synset, table: WordEmbeddingTable, policy: EmbeddingPolicy | None = None
) -> SynsetEmbedding | SkippedSynset:
    """Average the vectors of covered members.

    A multiword member under split_and_average contributes the mean of its
    in-vocabulary constituent words. Returns SkippedSynset when no member is
    covered, when coverage falls below the policy threshold, or (under
    fail_synset) when any member is out of vocabulary.
    """
    policy = policy or EmbeddingPolicy()
    contributions: list[np.ndarray] = []
    for member in synset.members:
        vec = _member_vector(member, table, policy)
        if vec is None:
            if policy.oov_handling == OOV_FAIL_SYNSET:
                return SkippedSynset(synset.id, f"uncovered member {member!r}")
            continue
        contributions.append(vec)
    total = len(synset.members)
    covered = len(contributions)
    if covered == 0:
        return SkippedSynset(synset.id, "zero coverage")
    if covered / total < policy.min_coverage_fraction:
        return SkippedSynset(synset.id, f"coverage {covered}/{total} below threshold")
    vector = np.mean(np.vstack(contributions), axis=0)
    return SynsetEmbedding(synset_id=synset.id, vector=vector, covered_members=covered, total_members=total)


def embed_lexicon(
    lexicon: Lexicon, table: WordEmbeddingTable, policy: EmbeddingPolicy | None = None
) -> tuple[dict[str, SynsetEmbedding], list[SkippedSynset]]:
    """Embed every synset; returns (id -> embedding, skip report).

    Deterministic: iterates synsets in lexicon order, each synset computed
    independently.
    """
    policy = policy or EmbeddingPolicy()
    embeddings: dict[str, SynsetEmbedding] = {}
    skipped: list[SkippedSynset] = []
    for synset in lexicon.synsets.values():
        result = embed_synset(synset, table, policy)
        if isinstance(result, SynsetEmbedding):
            embeddings[synset.id] = result
        else:
            skipped.append(result)
    return embeddings, skipped


def export_synset_embeddings(path: str | Path, language_tag: str, embeddings: dict[str, SynsetEmbedding]) -> None:
    """Write synset embeddings in word2vec text format with ids as the word column."""
    save_word2vec_text(path, language_tag, {e.synset_id: e.vector for e in embeddings.values()})
