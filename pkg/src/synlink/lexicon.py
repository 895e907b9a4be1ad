"""Synset and link-record data model plus TSV ingestion.

Formats (UTF-8, tab-separated):
  synsets: id<TAB>pos<TAB>member1|member2|...<TAB>gloss(optional), pos in {n, a, v, r}
  links:   source_id<TAB>target_id<TAB>link_type
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)

LINK_DIRECT = "DIRECT"
LINK_HYPERNYMY = "HYPERNYMY"


class PartOfSpeech(enum.Enum):
    NOUN = "n"
    ADJECTIVE = "a"
    VERB = "v"
    ADVERB = "r"

    @property
    def label(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class Synset:
    id: str
    language_tag: str
    pos: PartOfSpeech
    members: tuple[str, ...]
    gloss: str | None = None

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError(f"synset {self.id} has no members")
        if any(not m for m in self.members):
            raise ValueError(f"synset {self.id} has an empty member lemma")


@dataclass(frozen=True)
class LinkRecord:
    """Gold cross-lingual mapping. Unrecognized link types keep the raw string."""

    source_id: str
    target_id: str
    link_type: str

    @property
    def is_direct(self) -> bool:
        return self.link_type == LINK_DIRECT


@dataclass(frozen=True)
class Lexicon:
    language_tag: str
    synsets: dict[str, Synset] = field(repr=False)
    skipped_lines: int = 0

    def __post_init__(self) -> None:
        if not self.synsets:
            raise ValueError("lexicon must contain at least one synset")

    def __len__(self) -> int:
        return len(self.synsets)

    def __contains__(self, synset_id: str) -> bool:
        return synset_id in self.synsets

    def get(self, synset_id: str) -> Synset | None:
        return self.synsets.get(synset_id)


class LexiconLoadError(Exception):
    """Raised when a synset or link file cannot be loaded."""


def load_synsets(path: str | Path, language_tag: str) -> Lexicon:
    """Parse a synset TSV into a Lexicon; malformed lines are skipped and counted."""
    path = Path(path)
    if not path.exists():
        raise LexiconLoadError(f"synset file not found: {path}")
    synsets: dict[str, Synset] = {}
    skipped = 0
    pos_codes = {p.value: p for p in PartOfSpeech}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) < 3:
                skipped += 1
                logger.warning("%s:%d: expected >=3 columns, skipping", path, lineno)
                continue
            synset_id, pos_code, members_raw = fields[0], fields[1], fields[2]
            gloss = fields[3] if len(fields) > 3 and fields[3] else None
            pos = pos_codes.get(pos_code)
            members = tuple(m for m in members_raw.split("|") if m)
            if pos is None or not synset_id or not members:
                skipped += 1
                logger.warning("%s:%d: malformed synset line, skipping", path, lineno)
                continue
            if synset_id in synsets:
                skipped += 1
                logger.warning("%s:%d: duplicate id %s, keeping first", path, lineno, synset_id)
                continue
            synsets[synset_id] = Synset(
                id=synset_id, language_tag=language_tag, pos=pos, members=members, gloss=gloss
            )
    if not synsets:
        raise LexiconLoadError(f"no valid synsets in {path}")
    return Lexicon(language_tag=language_tag, synsets=synsets, skipped_lines=skipped)


def load_links(path: str | Path) -> list[LinkRecord]:
    """Parse a link TSV; every row must have 3 columns."""
    path = Path(path)
    if not path.exists():
        raise LexiconLoadError(f"link file not found: {path}")
    records: list[LinkRecord] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) < 3:
                raise LexiconLoadError(f"{path}:{lineno}: expected 3 columns, got {len(fields)}")
            records.append(LinkRecord(source_id=fields[0], target_id=fields[1], link_type=fields[2]))
    return records


def filter_direct(records: list[LinkRecord]) -> list[LinkRecord]:
    """Keep only DIRECT links, preserving input order."""
    return [r for r in records if r.is_direct]


@dataclass
class PosPartition:
    buckets: dict[PartOfSpeech, list[LinkRecord]]
    rejects: list[LinkRecord]

    def sizes(self) -> dict[PartOfSpeech, int]:
        return {pos: len(recs) for pos, recs in self.buckets.items()}


def partition_by_pos(records: list[LinkRecord], source_lexicon: Lexicon) -> PosPartition:
    """Bucket links by the part of speech of their source synset.

    Records whose source_id does not resolve go to the rejects bucket.
    """
    buckets: dict[PartOfSpeech, list[LinkRecord]] = {}
    rejects: list[LinkRecord] = []
    for record in records:
        synset = source_lexicon.get(record.source_id)
        if synset is None:
            rejects.append(record)
            continue
        buckets.setdefault(synset.pos, []).append(record)
    return PosPartition(buckets=buckets, rejects=rejects)
