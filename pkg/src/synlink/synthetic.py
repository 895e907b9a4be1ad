"""Synthetic bilingual datasets with a known ground-truth linear map.

Used by the test suites and demo scripts: source synsets get random member
vectors, and each target synset's single member vector is the ground-truth
map applied to the source synset mean (plus optional noise), so the correct
link is recoverable by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from synlink.embeddings import WordEmbeddingTable
from synlink.lexicon import LINK_DIRECT, Lexicon, LinkRecord, PartOfSpeech, Synset


@dataclass
class SyntheticDataset:
    source_lexicon: Lexicon
    source_table: WordEmbeddingTable
    target_lexicon: Lexicon
    target_table: WordEmbeddingTable
    links: list[LinkRecord]
    true_map: np.ndarray


def make_dataset(
    n_synsets: int = 300,
    dim: int = 50,
    seed: int = 0,
    noise_sigma: float = 0.0,
    max_members: int = 3,
    target_dim: int | None = None,
) -> SyntheticDataset:
    """Build paired lexicons linked through a random ground-truth matrix.

    The map has entries ~ N(0, 1/sqrt(dim)) so mapped vectors keep the
    scale of the inputs; noise_sigma is the per-component std of Gaussian
    noise added to target vectors.
    """
    rng = np.random.default_rng(seed)
    target_dim = target_dim or dim
    G = rng.standard_normal((target_dim, dim)) / np.sqrt(dim)
    pos_cycle = list(PartOfSpeech)

    src_words: dict[str, np.ndarray] = {}
    tgt_words: dict[str, np.ndarray] = {}
    src_synsets: dict[str, Synset] = {}
    tgt_synsets: dict[str, Synset] = {}
    links: list[LinkRecord] = []

    for i in range(n_synsets):
        pos = pos_cycle[i % len(pos_cycle)]
        n_members = int(rng.integers(1, max_members + 1))
        members = []
        vectors = []
        for m in range(n_members):
            word = f"src-w{i}-{m}"
            # roughly unit-norm vectors so noise_sigma is on a meaningful
            # scale; float32 so the ground-truth target matches what a
            # loaded table reproduces bit-for-bit
            vec = (rng.standard_normal(dim) / np.sqrt(dim)).astype(np.float32)
            src_words[word] = vec
            members.append(word)
            vectors.append(vec.astype(np.float64))
        sid = f"src_{i:04d}"
        src_synsets[sid] = Synset(id=sid, language_tag="src", pos=pos, members=tuple(members))

        mean = np.mean(vectors, axis=0)
        tgt_vec = G @ mean
        if noise_sigma > 0:
            tgt_vec = tgt_vec + noise_sigma * rng.standard_normal(target_dim)
        word = f"tgt-w{i}"
        tgt_words[word] = tgt_vec
        tid = f"tgt_{i:04d}"
        tgt_synsets[tid] = Synset(id=tid, language_tag="tgt", pos=pos, members=(word,))
        links.append(LinkRecord(source_id=sid, target_id=tid, link_type=LINK_DIRECT))

    def table(language: str, words: dict[str, np.ndarray], d: int) -> WordEmbeddingTable:
        index = {w: i for i, w in enumerate(words)}
        matrix = np.vstack(list(words.values())).astype(np.float32)
        return WordEmbeddingTable(language_tag=language, dimension=d, index=index, matrix=matrix)

    return SyntheticDataset(
        source_lexicon=Lexicon(language_tag="src", synsets=src_synsets),
        source_table=table("src", src_words, dim),
        target_lexicon=Lexicon(language_tag="tgt", synsets=tgt_synsets),
        target_table=table("tgt", tgt_words, target_dim),
        links=links,
        true_map=G,
    )


def write_dataset_files(dataset: SyntheticDataset, directory) -> dict[str, str]:
    """Materialize a synthetic dataset as the on-disk formats the CLI reads."""
    from pathlib import Path

    from synlink.embeddings import save_word2vec_text

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "src_emb": directory / "src.vec",
        "tgt_emb": directory / "tgt.vec",
        "src_syn": directory / "src_synsets.tsv",
        "tgt_syn": directory / "tgt_synsets.tsv",
        "links": directory / "links.tsv",
    }
    for key, table in (("src_emb", dataset.source_table), ("tgt_emb", dataset.target_table)):
        save_word2vec_text(paths[key], table.language_tag, {w: table.matrix[i] for w, i in table.index.items()})
    for key, lexicon in (("src_syn", dataset.source_lexicon), ("tgt_syn", dataset.target_lexicon)):
        with paths[key].open("w", encoding="utf-8", newline="\n") as fh:
            for synset in lexicon.synsets.values():
                gloss = synset.gloss or ""
                fh.write(f"{synset.id}\t{synset.pos.value}\t{'|'.join(synset.members)}\t{gloss}\n")
    with paths["links"].open("w", encoding="utf-8", newline="\n") as fh:
        for link in dataset.links:
            fh.write(f"{link.source_id}\t{link.target_id}\t{link.link_type}\n")
    return {k: str(v) for k, v in paths.items()}
