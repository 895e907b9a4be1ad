#!/usr/bin/env python3
"""The human-in-the-loop review cycle, driven in-process.

A lexicographer asks for unlinked synsets, inspects ranked candidates,
accepts one, and triggers a retrain; the accepted pair joins the training
set and the serving model version changes. The same HTTP API backs the
browser UI in frontend/.
"""

import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from synlink.linear_map import TrainingPair, fit_least_squares, save_matrix
from synlink.service import ServiceState, build_app
from synlink.synset_embedding import embed_lexicon
from synlink.synthetic import make_dataset, write_dataset_files

workdir = Path(tempfile.mkdtemp(prefix="synlink-demo-"))
ds = make_dataset(n_synsets=30, dim=10, seed=5)
paths = write_dataset_files(ds, workdir / "data")

# Keep only the first 20 links as gold; the remaining 10 synsets are the
# review queue.
gold = ds.links[:20]
links_path = workdir / "gold.tsv"
links_path.write_text("".join(f"{l.source_id}\t{l.target_id}\tDIRECT\n" for l in gold))

src_embs, _ = embed_lexicon(ds.source_lexicon, ds.source_table)
tgt_embs, _ = embed_lexicon(ds.target_lexicon, ds.target_table)
pairs = [TrainingPair(src_embs[l.source_id].vector, tgt_embs[l.target_id].vector) for l in gold]
save_matrix(workdir / "matrix.txt", fit_least_squares(pairs, ridge_lambda=1e-6))

state = ServiceState.from_files(
    src_emb=paths["src_emb"], tgt_emb=paths["tgt_emb"],
    src_syn=paths["src_syn"], tgt_syn=paths["tgt_syn"],
    links=links_path, matrix=workdir / "matrix.txt", state_dir=workdir / "state",
)
client = TestClient(build_app(state))

queue = client.get("/synsets/unlinked?limit=5").json()["synsets"]
print(f"review queue ({len(queue)} shown): {[s['source_id'] for s in queue]}")

sid = queue[0]["source_id"]
body = client.get(f"/candidates/{sid}?n=5").json()
print(f"\ncandidates for {sid} (model {body['model_version']}):")
for row in body["candidates"]:
    print(f"  {row['rank']}. {row['target_id']}  score={row['score']:.4f}  members={row['members']}")

# The lexicographer accepts the top candidate...
accept = {"source_id": sid, "target_id": body["candidates"][0]["target_id"],
          "verdict": "accept", "reviewer": "demo"}
response = client.post("/decisions", json=accept)
print(f"\nPOST /decisions -> {response.status_code}; log at {state.decision_log}")

# ...and the synset leaves the queue.
queue_after = client.get("/synsets/unlinked?limit=50").json()["synsets"]
print(f"queue size before/after: {len(state.source_lexicon) - len(gold)} -> {len(queue_after)}")

# Retraining folds the accepted pair into the training set and swaps the
# serving snapshot atomically.
old_version = body["model_version"]
new_version = client.post("/retrain").json()["model_version"]
print(f"retrain: model {old_version} -> {new_version}")
