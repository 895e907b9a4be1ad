#!/usr/bin/env python3
"""How accuracy@n degrades as the linear relation between the two
embedding spaces gets noisier.

The motivation for the averaging approach is that a ranked candidate list
stays useful even when the top-1 prediction is wrong: a lexicographer
scanning 10 candidates tolerates a lot more noise than an automatic
top-1 linker would.
"""

from synlink.evaluation import kfold_cross_validate
from synlink.synset_embedding import embed_lexicon
from synlink.synthetic import make_dataset

SIGMAS = [0.0, 0.05, 0.1, 0.2, 0.5]

print(f"{'sigma':>6} | " + " | ".join(f"Acc@{n}" for n in (1, 3, 5, 8, 10)))
print("-" * 50)
for sigma in SIGMAS:
    ds = make_dataset(n_synsets=200, dim=30, seed=42, noise_sigma=sigma)
    src_embs, _ = embed_lexicon(ds.source_lexicon, ds.source_table)
    tgt_embs, _ = embed_lexicon(ds.target_lexicon, ds.target_table)
    report = kfold_cross_validate(
        ds.links, 3, seed=42,
        source_embeddings=src_embs, target_embeddings=tgt_embs,
        source_lexicon=ds.source_lexicon,
    )
    row = " |  ".join(f"{report.overall[n]:.2f}" for n in report.n_values)
    print(f"{sigma:>6} |  {row}")

print("\nAccuracy is monotone in n by construction (a hit in the top 1 is a"
      "\nhit in the top 10), and the whole curve drops as noise grows.")
