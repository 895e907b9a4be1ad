"""Shared independent oracles, kept as plain scalar loops on purpose."""

import numpy as np


def scalar_mean_oracle(vectors):
    """Component-wise mean computed with python loops, no numpy reductions."""
    dim = len(vectors[0])
    out = [0.0] * dim
    for vec in vectors:
        for i in range(dim):
            out[i] += float(vec[i])
    return [x / len(vectors) for x in out]


def scalar_matvec_oracle(matrix, vector):
    rows, cols = matrix.shape
    out = [0.0] * rows
    for r in range(rows):
        acc = 0.0
        for c in range(cols):
            acc += float(matrix[r, c]) * float(vector[c])
        out[r] = acc
    return out


def brute_force_rank_oracle(v_prime, targets, n, similarity_kind):
    """Full sort over every target, python-level scoring and tie-breaks."""
    def dot(a, b):
        return sum(float(x) * float(y) for x, y in zip(a, b))

    def score(vec):
        if similarity_kind == "dot":
            return dot(vec, v_prime)
        na = dot(vec, vec) ** 0.5
        nb = dot(v_prime, v_prime) ** 0.5
        if na == 0.0 or nb == 0.0:
            return 0.0
        return dot(vec, v_prime) / (na * nb)

    scored = sorted(((tid, score(vec)) for tid, vec in targets.items()), key=lambda kv: (-kv[1], kv[0]))
    return scored[:n]


def synset_mean_oracle(members, vocab, oov_skip=True, split_phrases=True):
    """Independent recomputation of the member-averaging policy."""
    contributions = []
    for member in members:
        tokens = [t for part in member.split() for t in part.split("_") if t]
        if len(tokens) > 1:
            if not split_phrases:
                continue
            found = [vocab[t] for t in tokens if t in vocab]
            if not found:
                continue
            contributions.append(scalar_mean_oracle(found))
        elif member in vocab:
            contributions.append(vocab[member])
    if not contributions:
        return None
    return np.array(scalar_mean_oracle(contributions))
