"""Accuracy@n, k-fold cross-validation, and per-word-class reporting."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from synlink.lexicon import Lexicon, LinkRecord, PartOfSpeech
from synlink.linear_map import TrainingPair, fit_gradient_descent, fit_least_squares
from synlink.ranking import RankedCandidateList, SIM_COSINE, _TargetMatrix, rank_candidates
from synlink.synset_embedding import SynsetEmbedding

DEFAULT_N_VALUES = (1, 3, 5, 8, 10)

# report row order mirrors the per-class tables
CLASS_ORDER = (PartOfSpeech.NOUN, PartOfSpeech.ADJECTIVE, PartOfSpeech.VERB, PartOfSpeech.ADVERB)


@dataclass
class EvaluationReport:
    n_values: tuple[int, ...]
    fold_count: int
    seed: int
    overall: dict[int, float]
    per_class: dict[PartOfSpeech, dict[int, float]]
    pair_counts: dict[PartOfSpeech, int] = field(default_factory=dict)
    absent_classes: dict[PartOfSpeech, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for accs in [self.overall, *self.per_class.values()]:
            values = [accs[n] for n in sorted(accs)]
            if any(not 0.0 <= a <= 1.0 for a in values):
                raise ValueError("accuracies must lie in [0, 1]")
            if any(a > b + 1e-12 for a, b in zip(values, values[1:])):
                raise ValueError("accuracy must be non-decreasing in n")


def accuracy_at_n(ranked_lists: list[RankedCandidateList], gold: list[LinkRecord], n: int) -> float:
    """Fraction of gold source synsets with any gold target in the top n.

    The denominator is the number of distinct source ids in `gold`; sources
    without a ranked list (skipped embeddings) count as incorrect.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gold_targets: dict[str, set[str]] = {}
    for record in gold:
        gold_targets.setdefault(record.source_id, set()).add(record.target_id)
    if not gold_targets:
        raise ValueError("empty evaluation set")
    by_source = {r.source_id: r for r in ranked_lists}
    for source_id in by_source:
        if source_id not in gold_targets:
            raise ValueError(f"ranked list source {source_id} has no gold record")
    hits = 0
    for source_id, targets in gold_targets.items():
        ranked = by_source.get(source_id)
        if ranked is None:
            continue
        if any(t in targets for t in ranked.target_ids()[:n]):
            hits += 1
    return hits / len(gold_targets)


def fold_indices(n_items: int, k: int, seed: int) -> list[np.ndarray]:
    """Deterministic shuffle-then-split into k near-equal disjoint folds."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if n_items < k:
        raise ValueError(f"cannot split {n_items} items into {k} folds")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n_items)
    return [np.sort(chunk) for chunk in np.array_split(order, k)]


def kfold_cross_validate(
    links: list[LinkRecord],
    k: int,
    seed: int,
    *,
    source_embeddings: dict[str, SynsetEmbedding],
    target_embeddings: dict[str, SynsetEmbedding],
    source_lexicon: Lexicon,
    solver: str = "closed",
    ridge_lambda: float = 1e-3,
    learning_rate: float | None = None,
    epochs: int = 500,
    similarity_kind: str = SIM_COSINE,
    n_values: tuple[int, ...] = DEFAULT_N_VALUES,
) -> EvaluationReport:
    """Train/evaluate over k shuffled folds and average accuracies.

    Each fold's map is trained on the other folds' embeddable pairs and
    evaluated on the held-out links against the FULL target candidate set.
    Per-class and overall accuracies are unweighted means over the folds in
    which the class appears; classes with fewer links than k are reported
    as absent.
    """
    n_values = tuple(sorted(n_values))
    folds = fold_indices(len(links), k, seed)
    cache = _TargetMatrix(target_embeddings)
    max_n = max(n_values)

    gold_targets: dict[str, set[str]] = {}
    for record in links:
        gold_targets.setdefault(record.source_id, set()).add(record.target_id)

    def source_pos(source_id: str) -> PartOfSpeech | None:
        synset = source_lexicon.get(source_id)
        return synset.pos if synset else None

    class_totals: dict[PartOfSpeech, int] = {}
    for record in links:
        pos = source_pos(record.source_id)
        if pos is not None:
            class_totals[pos] = class_totals.get(pos, 0) + 1

    overall_folds: list[dict[int, float]] = []
    class_folds: dict[PartOfSpeech, list[dict[int, float]]] = {}

    for fold in folds:
        held_out = set(fold.tolist())
        train_links = [r for i, r in enumerate(links) if i not in held_out]
        test_links = [links[i] for i in fold]

        pairs = [
            TrainingPair(
                source_vec=source_embeddings[r.source_id].vector,
                target_vec=target_embeddings[r.target_id].vector,
                source_id=r.source_id,
                target_id=r.target_id,
            )
            for r in train_links
            if r.source_id in source_embeddings and r.target_id in target_embeddings
        ]
        if solver == "closed":
            W = fit_least_squares(pairs, ridge_lambda=ridge_lambda)
        elif solver == "gd":
            W = fit_gradient_descent(pairs, learning_rate=learning_rate, epochs=epochs, seed=seed)
        else:
            raise ValueError(f"unknown solver {solver!r}")

        # rank each distinct held-out source once, against all targets
        test_sources = sorted({r.source_id for r in test_links})
        ranked_lists: list[RankedCandidateList] = []
        for source_id in test_sources:
            emb = source_embeddings.get(source_id)
            if emb is None:
                continue
            ranked = rank_candidates(W.values @ emb.vector, cache, max_n, similarity_kind)
            ranked_lists.append(
                RankedCandidateList(
                    source_id=source_id, candidates=ranked.candidates, similarity_kind=similarity_kind
                )
            )
        by_source = {r.source_id: r for r in ranked_lists}

        def subset_accuracy(source_ids: list[str]) -> dict[int, float]:
            accs: dict[int, float] = {}
            for n in n_values:
                hits = 0
                for sid in source_ids:
                    ranked = by_source.get(sid)
                    if ranked is not None and any(t in gold_targets[sid] for t in ranked.target_ids()[:n]):
                        hits += 1
                accs[n] = hits / len(source_ids)
            return accs

        overall_folds.append(subset_accuracy(test_sources))
        fold_classes: dict[PartOfSpeech, list[str]] = {}
        for sid in test_sources:
            pos = source_pos(sid)
            if pos is not None:
                fold_classes.setdefault(pos, []).append(sid)
        for pos, sids in fold_classes.items():
            class_folds.setdefault(pos, []).append(subset_accuracy(sids))

    def average(fold_accs: list[dict[int, float]]) -> dict[int, float]:
        return {n: sum(f[n] for f in fold_accs) / len(fold_accs) for n in n_values}

    per_class: dict[PartOfSpeech, dict[int, float]] = {}
    absent: dict[PartOfSpeech, str] = {}
    for pos, total in sorted(class_totals.items(), key=lambda kv: kv[0].value):
        if total < k:
            absent[pos] = f"only {total} links for {k} folds"
        elif pos in class_folds:
            per_class[pos] = average(class_folds[pos])

    return EvaluationReport(
        n_values=n_values,
        fold_count=k,
        seed=seed,
        overall=average(overall_folds),
        per_class=per_class,
        pair_counts=class_totals,
        absent_classes=absent,
    )


def render_report(report: EvaluationReport, format: str = "markdown") -> str:
    """Deterministic table, one row per class plus overall, 2-decimal accuracies."""
    header = ["Class"] + [f"Acc@{n}" for n in report.n_values]

    def row_cells(pos: PartOfSpeech) -> list[str]:
        if pos in report.per_class:
            return [pos.label] + [f"{report.per_class[pos][n]:.2f}" for n in report.n_values]
        return [pos.label] + ["—"] * len(report.n_values)

    classes = [p for p in CLASS_ORDER if p in report.per_class or p in report.absent_classes]
    rows = [row_cells(p) for p in classes]
    rows.append(["Overall"] + [f"{report.overall[n]:.2f}" for n in report.n_values])

    if format == "tsv":
        return "\n".join("\t".join(cells) for cells in [header] + rows) + "\n"
    if format == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(cells) + " |" for cells in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}")
