import pytest

from synlink.lexicon import (
    LINK_DIRECT,
    LexiconLoadError,
    LinkRecord,
    PartOfSpeech,
    filter_direct,
    load_links,
    load_synsets,
    partition_by_pos,
)


def write(tmp_path, text, name="data.tsv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_load_synsets_devanagari(tmp_path):
    path = write(tmp_path, "hin_123\tn\tकुत्ता|श्वान\tपालतू जानवर\n")
    lexicon = load_synsets(path, "hi")
    synset = lexicon.get("hin_123")
    assert synset.pos is PartOfSpeech.NOUN
    assert synset.members == ("कुत्ता", "श्वान")
    assert synset.gloss == "पालतू जानवर"


def test_unknown_pos_skipped_and_counted(tmp_path):
    path = write(tmp_path, "ok\tn\tfoo\nx\tq\tfoo\n")
    lexicon = load_synsets(path, "en")
    assert len(lexicon) == 1
    assert lexicon.skipped_lines == 1


def test_empty_synset_file_errors(tmp_path):
    with pytest.raises(LexiconLoadError):
        load_synsets(write(tmp_path, ""), "en")


def test_generated_synsets_roundtrip(tmp_path):
    lines = [f"id_{i:03d}\t{'navr'[i % 4]}\tw{i}a|w{i}b\tgloss {i}" for i in range(50)]
    lexicon = load_synsets(write(tmp_path, "\n".join(lines) + "\n"), "en")
    assert len(lexicon) == 50
    assert len({s.id for s in lexicon.synsets.values()}) == 50


def test_load_links(tmp_path):
    path = write(tmp_path, "hin_1\teng_9\tDIRECT\nhin_2\teng_8\tHYPERNYMY\nhin_3\teng_7\tWEIRD_KIND\n")
    records = load_links(path)
    assert records[0] == LinkRecord("hin_1", "eng_9", "DIRECT")
    assert records[1].link_type == "HYPERNYMY"
    assert records[2].link_type == "WEIRD_KIND"  # unknown types preserved raw


def test_load_links_missing_column(tmp_path):
    with pytest.raises(LexiconLoadError, match="3 columns"):
        load_links(write(tmp_path, "a\tb\n"))


def test_filter_direct_order_and_idempotence():
    records = [
        LinkRecord("a", "x", LINK_DIRECT),
        LinkRecord("b", "y", "HYPERNYMY"),
        LinkRecord("c", "z", LINK_DIRECT),
    ]
    direct = filter_direct(records)
    assert [r.source_id for r in direct] == ["a", "c"]
    assert filter_direct(direct) == direct
    assert filter_direct([]) == []


@pytest.fixture
def small_lexicon(tmp_path):
    lines = ["n1\tn\tcat", "n2\tn\tdog", "n3\tn\tcow", "v1\tv\trun"]
    return load_synsets(write(tmp_path, "\n".join(lines) + "\n"), "en")


def test_partition_by_pos(small_lexicon):
    records = [LinkRecord(s, "t", LINK_DIRECT) for s in ["n1", "n2", "n3", "v1"]]
    part = partition_by_pos(records, small_lexicon)
    assert part.sizes() == {PartOfSpeech.NOUN: 3, PartOfSpeech.VERB: 1}
    assert part.rejects == []


def test_partition_rejects_unknown_id(small_lexicon):
    part = partition_by_pos([LinkRecord("ghost", "t", LINK_DIRECT)], small_lexicon)
    assert part.buckets == {}
    assert len(part.rejects) == 1


def test_partition_sizes_sum(small_lexicon):
    ids = ["n1", "n2", "n3", "v1", "ghost"]
    records = [LinkRecord(ids[i % len(ids)], f"t{i}", LINK_DIRECT) for i in range(500)]
    part = partition_by_pos(records, small_lexicon)
    assert sum(part.sizes().values()) + len(part.rejects) == 500
