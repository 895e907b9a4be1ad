"""Command-line entry point: embed, train, link, eval, serve.

All diagnostics go to stderr; data is written to files under --out. Every
command is deterministic for a fixed config and --seed.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path

import click

from synlink.embeddings import load_word2vec_text
from synlink.evaluation import DEFAULT_N_VALUES, kfold_cross_validate, render_report
from synlink.lexicon import filter_direct, load_links, load_synsets
from synlink.linear_map import (
    DivergenceError,
    SingularSystemError,
    TrainingPair,
    fit_gradient_descent,
    fit_least_squares,
    load_matrix,
    save_matrix,
)
from synlink.ranking import RankedCandidateList, _TargetMatrix, link_synset, write_candidates_tsv
from synlink.synset_embedding import EmbeddingPolicy, SkippedSynset, embed_lexicon, export_synset_embeddings


def _setup_logging() -> None:
    level = os.environ.get("SYNLINK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)


def _merge_config(ctx: click.Context, config_path: str | None) -> dict:
    if not config_path:
        return {}
    with open(config_path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _resolved(value, config: dict, key: str, required: bool = True):
    """Flags override config-file values."""
    if value is not None:
        return value
    if key in config:
        return config[key]
    if required:
        raise click.UsageError(f"missing required option --{key.replace('_', '-')}")
    return None


data_options = [
    click.option("--src-emb", type=click.Path(), default=None, help="source word embeddings (word2vec text)"),
    click.option("--tgt-emb", type=click.Path(), default=None, help="target word embeddings (word2vec text)"),
    click.option("--src-syn", type=click.Path(), default=None, help="source synset TSV"),
    click.option("--tgt-syn", type=click.Path(), default=None, help="target synset TSV"),
    click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="JSON config file; flags override"),
    click.option("--case-policy", type=click.Choice(["exact", "fold-to-lower"]), default=None),
    click.option("--out", type=click.Path(), default=None, help="output directory"),
]


def _with_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn
    return wrap


def _load_side(emb_path: str, syn_path: str, tag: str, policy: EmbeddingPolicy):
    table = load_word2vec_text(emb_path, tag, case_policy=policy.case_policy)
    lexicon = load_synsets(syn_path, tag)
    embeddings, skipped = embed_lexicon(lexicon, table, policy)
    return table, lexicon, embeddings, skipped


def _write_skip_report(path: Path, skipped: list[SkippedSynset]) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for s in skipped:
            fh.write(f"{s.synset_id}\t{s.reason}\n")


def _policy(case_policy: str | None, config: dict) -> EmbeddingPolicy:
    return EmbeddingPolicy(
        oov_handling=config.get("oov_handling", "skip_member"),
        phrase_handling=config.get("phrase_handling", "split_and_average"),
        case_policy=case_policy or config.get("case_policy", "exact"),
        min_coverage_fraction=float(config.get("min_coverage_fraction", 0.0)),
    )


@click.group()
def main() -> None:
    """Link synsets across two wordnets via embedding-space mapping."""
    _setup_logging()


@main.command("embed")
@_with_options(data_options)
def cmd_embed(src_emb, tgt_emb, src_syn, tgt_syn, config_path, case_policy, out):
    """Compute synset embeddings for both lexicons and write exports + skip reports."""
    config = _merge_config(None, config_path)
    policy = _policy(case_policy, config)
    out_dir = Path(_resolved(out, config, "out"))
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        for side, emb_path, syn_path in (
            ("source", _resolved(src_emb, config, "src_emb"), _resolved(src_syn, config, "src_syn")),
            ("target", _resolved(tgt_emb, config, "tgt_emb"), _resolved(tgt_syn, config, "tgt_syn")),
        ):
            table, lexicon, embeddings, skipped = _load_side(emb_path, syn_path, side, policy)
            if not embeddings:
                raise click.ClickException(f"no embeddable synsets on the {side} side")
            export_synset_embeddings(out_dir / f"{side}_synsets.vec", side, embeddings)
            _write_skip_report(out_dir / f"{side}_skipped.tsv", skipped)
            click.echo(f"{side}: {len(embeddings)} embedded, {len(skipped)} skipped", err=True)
    except Exception as exc:
        _fail(exc)


@main.command("train")
@_with_options(data_options)
@click.option("--links", type=click.Path(), default=None, help="gold link TSV")
@click.option("--solver", type=click.Choice(["closed", "gd"]), default=None)
@click.option("--lambda", "ridge_lambda", type=float, default=None, help="ridge strength for the closed solver")
@click.option("--lr", "learning_rate", type=float, default=None, help="gradient-descent learning rate")
@click.option("--epochs", type=int, default=None)
@click.option("--seed", type=int, default=None, help="mandatory RNG seed")
def cmd_train(src_emb, tgt_emb, src_syn, tgt_syn, config_path, case_policy, out,
              links, solver, ridge_lambda, learning_rate, epochs, seed):
    """Fit the translation matrix on DIRECT gold links and serialize it."""
    config = _merge_config(None, config_path)
    policy = _policy(case_policy, config)
    out_dir = Path(_resolved(out, config, "out"))
    seed = int(_resolved(seed, config, "seed"))
    solver = _resolved(solver, config, "solver", required=False) or "closed"
    ridge_lambda = float(ridge_lambda if ridge_lambda is not None else config.get("lambda", 1e-3))
    epochs = int(epochs if epochs is not None else config.get("epochs", 500))
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        _, _, src_embs, _ = _load_side(
            _resolved(src_emb, config, "src_emb"), _resolved(src_syn, config, "src_syn"), "source", policy)
        _, _, tgt_embs, _ = _load_side(
            _resolved(tgt_emb, config, "tgt_emb"), _resolved(tgt_syn, config, "tgt_syn"), "target", policy)
        gold = filter_direct(load_links(_resolved(links, config, "links")))
        pairs = [
            TrainingPair(
                source_vec=src_embs[r.source_id].vector,
                target_vec=tgt_embs[r.target_id].vector,
                source_id=r.source_id,
                target_id=r.target_id,
            )
            for r in gold
            if r.source_id in src_embs and r.target_id in tgt_embs
        ]
        if not pairs:
            raise click.ClickException("no trainable pairs (check links and embedding coverage)")
        if solver == "closed":
            W = fit_least_squares(pairs, ridge_lambda=ridge_lambda)
        else:
            W = fit_gradient_descent(pairs, learning_rate=learning_rate, epochs=epochs, seed=seed)
        save_matrix(out_dir / "matrix.txt", W)
        click.echo(
            f"fitted {W.rows}x{W.cols} matrix on {W.pair_count} pairs "
            f"(solver={W.solver}, residual={W.residual:.6g})",
            err=True,
        )
    except Exception as exc:
        _fail(exc)


@main.command("link")
@_with_options(data_options)
@click.option("--matrix", "matrix_path", type=click.Path(), default=None, help="serialized translation matrix")
@click.option("--sim", "similarity", type=click.Choice(["cosine", "dot"]), default=None)
@click.option("-n", "--top-n", type=int, default=None)
def cmd_link(src_emb, tgt_emb, src_syn, tgt_syn, config_path, case_policy, out,
             matrix_path, similarity, top_n):
    """Rank top-n target candidates for every embeddable source synset."""
    config = _merge_config(None, config_path)
    policy = _policy(case_policy, config)
    out_dir = Path(_resolved(out, config, "out"))
    similarity = _resolved(similarity, config, "sim", required=False) or "cosine"
    top_n = int(top_n if top_n is not None else config.get("n_top", 10))
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        src_table, src_lexicon, _, _ = _load_side(
            _resolved(src_emb, config, "src_emb"), _resolved(src_syn, config, "src_syn"), "source", policy)
        _, _, tgt_embs, _ = _load_side(
            _resolved(tgt_emb, config, "tgt_emb"), _resolved(tgt_syn, config, "tgt_syn"), "target", policy)
        if not tgt_embs:
            raise click.ClickException("empty target lexicon after embedding")
        W = load_matrix(_resolved(matrix_path, config, "matrix"))
        cache = _TargetMatrix(tgt_embs)
        results: list[RankedCandidateList] = []
        skipped: list[SkippedSynset] = []
        for synset_id in sorted(src_lexicon.synsets):
            result = link_synset(
                src_lexicon.synsets[synset_id], W, src_table, cache,
                policy=policy, n=top_n, similarity_kind=similarity,
            )
            if isinstance(result, SkippedSynset):
                skipped.append(result)
            else:
                results.append(result)
        write_candidates_tsv(out_dir / "candidates.tsv", results)
        _write_skip_report(out_dir / "link_skipped.tsv", skipped)
        click.echo(f"ranked {len(results)} synsets, {len(skipped)} skipped", err=True)
    except Exception as exc:
        _fail(exc)


@main.command("eval")
@_with_options(data_options)
@click.option("--links", type=click.Path(), default=None)
@click.option("--solver", type=click.Choice(["closed", "gd"]), default=None)
@click.option("--lambda", "ridge_lambda", type=float, default=None)
@click.option("--sim", "similarity", type=click.Choice(["cosine", "dot"]), default=None)
@click.option("--n", "n_values", type=str, default=None, help="comma-separated ranks, e.g. 1,3,5,8,10")
@click.option("--k", type=int, default=None, help="number of folds")
@click.option("--seed", type=int, default=None)
def cmd_eval(src_emb, tgt_emb, src_syn, tgt_syn, config_path, case_policy, out,
             links, solver, ridge_lambda, similarity, n_values, k, seed):
    """k-fold cross-validated accuracy@n report (TSV + markdown)."""
    config = _merge_config(None, config_path)
    policy = _policy(case_policy, config)
    out_dir = Path(_resolved(out, config, "out"))
    seed = int(_resolved(seed, config, "seed"))
    k = int(k if k is not None else config.get("k", 3))
    solver = _resolved(solver, config, "solver", required=False) or "closed"
    ridge_lambda = float(ridge_lambda if ridge_lambda is not None else config.get("lambda", 1e-3))
    similarity = _resolved(similarity, config, "sim", required=False) or "cosine"
    ns = tuple(int(x) for x in (n_values or config.get("n", "1,3,5,8,10")).split(","))
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        _, src_lexicon, src_embs, _ = _load_side(
            _resolved(src_emb, config, "src_emb"), _resolved(src_syn, config, "src_syn"), "source", policy)
        _, _, tgt_embs, _ = _load_side(
            _resolved(tgt_emb, config, "tgt_emb"), _resolved(tgt_syn, config, "tgt_syn"), "target", policy)
        gold = filter_direct(load_links(_resolved(links, config, "links")))
        if len(gold) < k:
            raise click.ClickException(f"need at least k={k} DIRECT links, got {len(gold)}")
        report = kfold_cross_validate(
            gold, k, seed,
            source_embeddings=src_embs,
            target_embeddings=tgt_embs,
            source_lexicon=src_lexicon,
            solver=solver,
            ridge_lambda=ridge_lambda,
            similarity_kind=similarity,
            n_values=ns or DEFAULT_N_VALUES,
        )
        (out_dir / "report.tsv").write_text(render_report(report, "tsv"), encoding="utf-8", newline="\n")
        (out_dir / "report.md").write_text(render_report(report, "markdown"), encoding="utf-8", newline="\n")
        click.echo(f"evaluated {len(gold)} links over {k} folds (seed={seed})", err=True)
    except Exception as exc:
        _fail(exc)


@main.command("serve")
@_with_options(data_options)
@click.option("--links", type=click.Path(), default=None)
@click.option("--matrix", "matrix_path", type=click.Path(), default=None)
@click.option("--state-dir", type=click.Path(), default=None, help="decision log + model snapshots")
@click.option("--port", type=int, default=8000)
@click.option("--sim", "similarity", type=click.Choice(["cosine", "dot"]), default=None)
def cmd_serve(src_emb, tgt_emb, src_syn, tgt_syn, config_path, case_policy, out,
              links, matrix_path, state_dir, port, similarity):
    """Run the HTTP review service for the lexicographer UI."""
    import uvicorn

    from synlink.service import ServiceState, build_app

    config = _merge_config(None, config_path)
    policy = _policy(case_policy, config)
    try:
        state = ServiceState.from_files(
            src_emb=_resolved(src_emb, config, "src_emb"),
            tgt_emb=_resolved(tgt_emb, config, "tgt_emb"),
            src_syn=_resolved(src_syn, config, "src_syn"),
            tgt_syn=_resolved(tgt_syn, config, "tgt_syn"),
            links=_resolved(links, config, "links"),
            matrix=_resolved(matrix_path, config, "matrix"),
            state_dir=_resolved(state_dir, config, "state_dir"),
            policy=policy,
            similarity_kind=_resolved(similarity, config, "sim", required=False) or "cosine",
        )
    except Exception as exc:
        _fail(exc)
    uvicorn.run(build_app(state), host="127.0.0.1", port=port)


def _fail(exc: Exception) -> None:
    if isinstance(exc, click.ClickException):
        raise exc
    if isinstance(exc, (SingularSystemError, DivergenceError)):
        raise click.ClickException(str(exc))
    raise click.ClickException(f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    main()
