import json

import numpy as np
import pytest
from click.testing import CliRunner

from synlink.cli import main
from synlink.embeddings import load_word2vec_text
from synlink.synthetic import make_dataset, write_dataset_files


@pytest.fixture(scope="module")
def dataset_files(tmp_path_factory):
    ds = make_dataset(60, 10, seed=17)
    paths = write_dataset_files(ds, tmp_path_factory.mktemp("data"))
    return ds, paths


def data_flags(paths):
    return [
        "--src-emb", paths["src_emb"], "--tgt-emb", paths["tgt_emb"],
        "--src-syn", paths["src_syn"], "--tgt-syn", paths["tgt_syn"],
    ]


def run(args):
    return CliRunner().invoke(main, args)


def test_embed_writes_exports_and_reloads(dataset_files, tmp_path):
    ds, paths = dataset_files
    out = tmp_path / "out"
    result = run(["embed", *data_flags(paths), "--out", str(out)])
    assert result.exit_code == 0, result.output + str(result.exception)
    table = load_word2vec_text(out / "source_synsets.vec", "src")
    assert len(table) == 60
    assert (out / "source_skipped.tsv").read_text() == ""
    # exported vectors equal an in-process recomputation
    from synlink.synset_embedding import embed_lexicon
    embs, _ = embed_lexicon(ds.source_lexicon, ds.source_table)
    for sid, emb in embs.items():
        np.testing.assert_allclose(table.matrix[table.index[sid]], emb.vector, atol=1e-6)


def test_embed_skip_report_nonempty(dataset_files, tmp_path):
    _, paths = dataset_files
    bad_syn = tmp_path / "bad.tsv"
    bad_syn.write_text("s1\tn\tno-such-word\ns2\tn\tsrc-w0-0\n", encoding="utf-8")
    out = tmp_path / "out"
    result = run(["embed", *data_flags(paths), "--src-syn", str(bad_syn), "--out", str(out)])
    assert result.exit_code == 0
    assert "zero coverage" in (out / "source_skipped.tsv").read_text()


def test_train_recovers_true_map(dataset_files, tmp_path):
    ds, paths = dataset_files
    out = tmp_path / "out"
    result = run([
        "train", *data_flags(paths), "--links", paths["links"],
        "--solver", "closed", "--lambda", "0", "--seed", "1", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output + str(result.exception)
    from synlink.linear_map import load_matrix
    W = load_matrix(out / "matrix.txt")
    rel = np.linalg.norm(W.values - ds.true_map) / np.linalg.norm(ds.true_map)
    assert rel < 1e-4


def test_train_singular_system_fails(tmp_path):
    ds = make_dataset(2, 10, seed=3, max_members=1)
    paths = write_dataset_files(ds, tmp_path / "tiny")
    result = run([
        "train", *data_flags(paths), "--links", paths["links"],
        "--lambda", "0", "--seed", "1", "--out", str(tmp_path / "out"),
    ])
    assert result.exit_code != 0
    assert "singular" in result.stderr.lower()


def test_train_requires_seed(dataset_files, tmp_path):
    _, paths = dataset_files
    result = run(["train", *data_flags(paths), "--links", paths["links"], "--out", str(tmp_path)])
    assert result.exit_code != 0
    assert "--seed" in result.stderr


def test_link_gold_at_rank_one_and_prefix(dataset_files, tmp_path):
    ds, paths = dataset_files
    out = tmp_path / "out"
    run(["train", *data_flags(paths), "--links", paths["links"],
         "--lambda", "0", "--seed", "1", "--out", str(out)])

    def link_lines(n):
        result = run(["link", *data_flags(paths), "--matrix", str(out / "matrix.txt"),
                      "-n", str(n), "--out", str(out)])
        assert result.exit_code == 0, result.output + str(result.exception)
        return (out / "candidates.tsv").read_text().splitlines()

    lines5 = link_lines(5)
    top1 = {}
    for line in lines5:
        sid, rank, tid, _ = line.split("\t")
        if rank == "1":
            top1[sid] = tid
    assert all(top1[l.source_id] == l.target_id for l in ds.links)
    lines1 = link_lines(1)
    assert set(lines1) <= set(lines5)


def test_link_empty_target_errors(dataset_files, tmp_path):
    _, paths = dataset_files
    empty_syn = tmp_path / "empty.tsv"
    empty_syn.write_text("", encoding="utf-8")
    result = run(["link", *data_flags(paths), "--tgt-syn", str(empty_syn),
                  "--matrix", "whatever", "--out", str(tmp_path / "o")])
    assert result.exit_code != 0


def test_eval_perfect_and_deterministic(dataset_files, tmp_path):
    _, paths = dataset_files
    outputs = []
    for name in ("a", "b"):
        out = tmp_path / name
        result = run(["eval", *data_flags(paths), "--links", paths["links"],
                      "--lambda", "0", "--k", "3", "--seed", "5", "--out", str(out)])
        assert result.exit_code == 0, result.output + str(result.exception)
        outputs.append(((out / "report.tsv").read_bytes(), (out / "report.md").read_bytes()))
    assert outputs[0] == outputs[1]
    assert b"Overall\t1.00\t1.00\t1.00\t1.00\t1.00" in outputs[0][0]


def test_eval_k_exceeds_links(tmp_path):
    ds = make_dataset(4, 6, seed=9)
    paths = write_dataset_files(ds, tmp_path / "d")
    result = run(["eval", *data_flags(paths), "--links", paths["links"],
                  "--k", "10", "--seed", "0", "--out", str(tmp_path / "o")])
    assert result.exit_code != 0
    assert "k=10" in result.stderr


def test_config_file_with_flag_override(dataset_files, tmp_path):
    _, paths = dataset_files
    config = {key: paths[key] for key in paths}
    config.update({"seed": 5, "k": 3, "lambda": 0.0, "out": str(tmp_path / "cfg_out")})
    config_path = tmp_path / "run.json"
    config_path.write_text(json.dumps(config), encoding="utf-8")
    out_override = tmp_path / "flag_out"
    result = run(["eval", "--config", str(config_path), "--out", str(out_override)])
    assert result.exit_code == 0, result.output + str(result.exception)
    assert (out_override / "report.tsv").exists()
    assert not (tmp_path / "cfg_out").exists()
