"""Cross-lingual wordnet synset linking toolkit.

Pipeline: load word embeddings and synset inventories for two languages,
average member-word vectors into synset embeddings, learn a linear map
between the two embedding spaces from gold links, and rank target-synset
candidates for each source synset for lexicographer review.
"""

from synlink.embeddings import WordEmbeddingTable, load_word2vec_text, lookup, l2_normalize
from synlink.lexicon import (
    Lexicon,
    LinkRecord,
    PartOfSpeech,
    Synset,
    filter_direct,
    load_links,
    load_synsets,
    partition_by_pos,
)
from synlink.synset_embedding import (
    EmbeddingPolicy,
    SkippedSynset,
    SynsetEmbedding,
    embed_lexicon,
    embed_synset,
)
from synlink.linear_map import (
    DivergenceError,
    SingularSystemError,
    TrainingPair,
    TranslationMatrix,
    apply_map,
    fit_gradient_descent,
    fit_least_squares,
)
from synlink.ranking import RankedCandidateList, link_synset, rank_candidates
from synlink.evaluation import EvaluationReport, accuracy_at_n, kfold_cross_validate, render_report

__all__ = [
    "WordEmbeddingTable",
    "load_word2vec_text",
    "lookup",
    "l2_normalize",
    "Lexicon",
    "LinkRecord",
    "PartOfSpeech",
    "Synset",
    "filter_direct",
    "load_links",
    "load_synsets",
    "partition_by_pos",
    "EmbeddingPolicy",
    "SkippedSynset",
    "SynsetEmbedding",
    "embed_lexicon",
    "embed_synset",
    "DivergenceError",
    "SingularSystemError",
    "TrainingPair",
    "TranslationMatrix",
    "apply_map",
    "fit_gradient_descent",
    "fit_least_squares",
    "RankedCandidateList",
    "link_synset",
    "rank_candidates",
    "EvaluationReport",
    "accuracy_at_n",
    "kfold_cross_validate",
    "render_report",
]
