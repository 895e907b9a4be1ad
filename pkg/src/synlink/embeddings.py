"""Word embedding tables: word2vec text format I/O and vector utilities."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

CASE_EXACT = "exact"
CASE_FOLD_LOWER = "fold-to-lower"

# Fraction of data lines allowed to be malformed before the load is
# treated as a wrong-format file rather than a noisy one.
MALFORMED_LINE_TOLERANCE = 0.10


class EmbeddingLoadError(Exception):
    """Raised when an embedding file cannot be loaded."""


@dataclass(frozen=True)
class WordEmbeddingTable:
    """Immutable vocabulary-to-vector lookup.

    Vectors are float32 rows of a shared matrix; ``index`` maps a surface
    word to its row. Safe for concurrent reads once constructed.
    """

    language_tag: str
    dimension: int
    index: dict[str, int] = field(repr=False)
    matrix: np.ndarray = field(repr=False)
    skipped_lines: int = 0

    def __post_init__(self) -> None:
        if self.dimension <= 0:
            raise ValueError("dimension must be positive")
        if len(self.index) == 0:
            raise ValueError("vocabulary must be non-empty")
        if self.matrix.shape != (len(self.index), self.dimension):
            raise ValueError("matrix shape inconsistent with index/dimension")

    def __len__(self) -> int:
        return len(self.index)

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def words(self):
        return self.index.keys()


def lookup(table: WordEmbeddingTable, word: str, case_policy: str = CASE_EXACT) -> np.ndarray | None:
    """Exact-match lookup after applying the case policy; None if absent."""
    if case_policy == CASE_FOLD_LOWER:
        word = word.lower()
    row = table.index.get(word)
    if row is None:
        return None
    return table.matrix[row]


def l2_normalize(v: np.ndarray) -> tuple[np.ndarray, bool]:
    """Scale v to unit L2 norm.

    Returns (vector, was_zero). A zero vector is returned unchanged with
    the flag set instead of dividing by zero.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.size == 0:
        raise ValueError("vector must have at least one component")
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        return v, True
    return v / norm, False


def load_word2vec_text(path: str | Path, language_tag: str, case_policy: str = CASE_EXACT) -> WordEmbeddingTable:
    """Load a word2vec text file: `<vocab> <dim>` header, then one word per line.

    Malformed lines (wrong field count, unparsable floats) are skipped and
    counted; more than 10% malformed lines aborts the load since that
    signals a wrong file format. Duplicate words keep the first occurrence.

    With ``case_policy`` fold-to-lower, words are lower-cased at load time
    so lookups under the same policy hit.
    """
    path = Path(path)
    if not path.exists():
        raise EmbeddingLoadError(f"embedding file not found: {path}")

    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise EmbeddingLoadError(f"unparsable header in {path}: expected '<vocab> <dim>'")
        try:
            declared_vocab, dimension = int(header[0]), int(header[1])
        except ValueError as exc:
            raise EmbeddingLoadError(f"unparsable header in {path}: {header}") from exc
        if dimension <= 0:
            raise EmbeddingLoadError(f"declared dimension must be positive, got {dimension}")

        index: dict[str, int] = {}
        rows: list[np.ndarray] = []
        skipped = 0
        total = 0
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            total += 1
            parts = line.split(" ")
            if len(parts) != dimension + 1:
                skipped += 1
                continue
            word = parts[0]
            if case_policy == CASE_FOLD_LOWER:
                word = word.lower()
            try:
                vec = np.array(parts[1:], dtype=np.float32)
            except ValueError:
                skipped += 1
                continue
            if word in index:
                logger.warning("duplicate word %r in %s; keeping first occurrence", word, path)
                continue
            index[word] = len(rows)
            rows.append(vec)

    if not rows:
        raise EmbeddingLoadError(f"no valid entries in {path}")
    if skipped > MALFORMED_LINE_TOLERANCE * total:
        raise EmbeddingLoadError(
            f"{skipped}/{total} malformed lines in {path} exceeds {MALFORMED_LINE_TOLERANCE:.0%}; wrong format?"
        )
    if declared_vocab != len(rows) + skipped and declared_vocab != len(rows):
        logger.warning(
            "header declared %d words but %d loaded (%d skipped) from %s",
            declared_vocab, len(rows), skipped, path,
        )

    return WordEmbeddingTable(
        language_tag=language_tag,
        dimension=dimension,
        index=index,
        matrix=np.vstack(rows),
        skipped_lines=skipped,
    )


def save_word2vec_text(path: str | Path, language_tag: str, vectors: dict[str, np.ndarray]) -> None:
    """Write vectors in the word2vec text format (UTF-8, '\\n' newlines)."""
    if not vectors:
        raise ValueError("nothing to write")
    dims = {len(v) for v in vectors.values()}
    if len(dims) != 1:
        raise ValueError(f"inconsistent vector dimensions: {sorted(dims)}")
    dimension = dims.pop()
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(vectors)} {dimension}\n")
        for word, vec in vectors.items():
            # 9 significant digits round-trip float32 exactly
            comps = " ".join(f"{float(x):.9g}" for x in vec)
            fh.write(f"{word} {comps}\n")
