"""Learning and applying the translation matrix between embedding spaces.

The objective is the total squared mapping error over training pairs,
sum_i ||W x_i - y_i||^2, minimized either in closed form via the normal
equations (with optional ridge term) or by full-batch gradient descent.
Each solver serves as an oracle for the other in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class SingularSystemError(Exception):
    """Normal equations are singular; too few or degenerate pairs."""


class DivergenceError(Exception):
    """Gradient descent diverged; the learning rate is too large."""


@dataclass(frozen=True)
class TrainingPair:
    source_vec: np.ndarray
    target_vec: np.ndarray
    source_id: str = ""
    target_id: str = ""


@dataclass(frozen=True)
class TranslationMatrix:
    """Learned linear map: target_dim x source_dim."""

    values: np.ndarray = field(repr=False)
    pair_count: int = 0
    solver: str = "closed"
    ridge_lambda: float = 0.0
    residual: float = 0.0

    def __post_init__(self) -> None:
        if self.values.ndim != 2 or 0 in self.values.shape:
            raise ValueError("matrix must be 2-D and non-empty")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("matrix contains non-finite values")

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]


def _stack(pairs: list[TrainingPair]) -> tuple[np.ndarray, np.ndarray]:
    if not pairs:
        raise ValueError("at least one training pair is required")
    X = np.column_stack([np.asarray(p.source_vec, dtype=np.float64) for p in pairs])
    Y = np.column_stack([np.asarray(p.target_vec, dtype=np.float64) for p in pairs])
    return X, Y


def total_error(W: np.ndarray, X: np.ndarray, Y: np.ndarray) -> float:
    """Sum of squared residuals ||W X - Y||_F^2."""
    R = W @ X - Y
    return float(np.sum(R * R))


def fit_least_squares(pairs: list[TrainingPair], ridge_lambda: float = 0.0) -> TranslationMatrix:
    """Closed-form solve of W = Y X^T (X X^T + lambda I)^{-1}.

    With lambda=0 and full-rank X X^T this is the exact least-squares
    minimizer. A rank-deficient system with lambda=0 raises
    SingularSystemError suggesting a positive ridge term.
    """
    if ridge_lambda < 0:
        raise ValueError("ridge_lambda must be non-negative")
    X, Y = _stack(pairs)
    d_s = X.shape[0]
    A = X @ X.T + ridge_lambda * np.eye(d_s)
    if ridge_lambda == 0.0 and np.linalg.matrix_rank(X) < d_s:
        raise SingularSystemError(
            f"normal equations are singular ({X.shape[1]} pairs, source dim {d_s}); "
            "add pairs or use ridge_lambda > 0"
        )
    # A is symmetric positive (semi)definite; solve A W^T = (Y X^T)^T
    W = np.linalg.solve(A, (Y @ X.T).T).T
    return TranslationMatrix(
        values=W,
        pair_count=len(pairs),
        solver="closed",
        ridge_lambda=ridge_lambda,
        residual=total_error(W, X, Y),
    )


def gradient(W: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Analytic gradient of the total squared error with respect to W."""
    return 2.0 * (W @ X - Y) @ X.T


def fit_gradient_descent(
    pairs: list[TrainingPair],
    learning_rate: float | None = None,
    epochs: int = 500,
    seed: int = 0,
) -> TranslationMatrix:
    """Full-batch gradient descent on the squared-error objective.

    Deterministic given the seed (random initialization scale 1e-2).
    learning_rate=None picks the fastest stable fixed step from the
    spectrum of X X^T. Raises DivergenceError if the objective grows past
    10x its initial value.
    """
    if learning_rate is not None and learning_rate <= 0:
        raise ValueError("learning_rate must be positive")
    if epochs < 1:
        raise ValueError("epochs must be positive")
    X, Y = _stack(pairs)
    d_s, d_t = X.shape[0], Y.shape[0]
    if learning_rate is None:
        eigs = np.linalg.eigvalsh(X @ X.T)
        lam_max, lam_min = float(eigs[-1]), float(max(eigs[0], 0.0))
        # update per eigenmode contracts by |1 - 2*lr*lam|; this step
        # equalizes the extreme modes
        learning_rate = 1.0 / (lam_max + lam_min) if lam_max > 0 else 1.0

    rng = np.random.default_rng(seed)
    W = 1e-2 * rng.standard_normal((d_t, d_s))
    initial = total_error(W, X, Y)
    err = initial
    for _ in range(epochs):
        W = W - learning_rate * gradient(W, X, Y)
        err = total_error(W, X, Y)
        if not np.isfinite(err) or err > 10.0 * max(initial, 1e-300):
            raise DivergenceError(
                f"objective diverged (learning_rate={learning_rate:g}); reduce the learning rate"
            )
    return TranslationMatrix(
        values=W,
        pair_count=len(pairs),
        solver="gd",
        ridge_lambda=0.0,
        residual=err,
    )


def apply_map(W: TranslationMatrix, v: np.ndarray) -> np.ndarray:
    """Map a source-space vector into the target space."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (W.cols,):
        raise ValueError(f"vector has length {v.shape}, map expects {W.cols}")
    return W.values @ v


def save_matrix(path: str | Path, W: TranslationMatrix) -> None:
    """Text serialization: `d_t d_s` header then one row per line."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{W.rows} {W.cols}\n")
        for row in W.values:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def load_matrix(path: str | Path) -> TranslationMatrix:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"unparsable matrix header in {path}")
        rows, cols = int(header[0]), int(header[1])
        values = np.loadtxt(fh, dtype=np.float64, ndmin=2)
    if values.shape != (rows, cols):
        raise ValueError(f"matrix shape {values.shape} does not match header ({rows}, {cols})")
    return TranslationMatrix(values=values, solver="loaded")
