"""Exact t-SNE gradient descent over a precomputed distance matrix.

Corpora here are hundreds of datasets, not millions of points, so the
exact O(n^2) gradient is used instead of tree approximations.  The
input is the cosine-distance matrix from the embedding stage; distances
enter the Gaussian affinity directly (they are already a metric value,
not raw coordinates, so no squaring is applied).

Runs are bitwise deterministic for a given seed: the only randomness is
the seeded normal initialization of the layout.
"""

from dataclasses import dataclass

import numpy as np

from .cancellation import CancellationToken

_MACHINE_EPS = 1e-12


def default_perplexity(n: int) -> float:
    return min(30.0, max(2.0, (n - 1) / 3.0))


@dataclass
class ProjectionConfig:
    perplexity: float = None  # None -> default_perplexity(n)
    iterations: int = 1000
    early_exaggeration: float = 12.0
    exaggeration_iters: int = 250
    learning_rate: float = 200.0
    seed: int = 0

    def __post_init__(self):
        if self.iterations < 250:
            raise ValueError("iterations must be >= 250")


def _entropy_and_probs(dist_row: np.ndarray, beta: float):
    p = np.exp(-dist_row * beta)
    total = p.sum()
    if total <= 0.0:
        total = np.finfo(np.float64).tiny
    h = np.log(total) + beta * float((dist_row * p).sum()) / total
    return h, p / total

def _conditional_probs(distances: np.ndarray, perplexity: float,
                       tol: float = 1e-5, max_tries: int = 50) -> np.ndarray:
    """Per-point Gaussian affinities whose entropy matches log(perplexity),
    found by binary search on the bandwidth."""
    n = distances.shape[0]
    target = np.log(perplexity)
    P = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        others = np.concatenate([np.arange(i), np.arange(i + 1, n)])
        row = distances[i, others]
        beta, beta_min, beta_max = 1.0, -np.inf, np.inf
        h, probs = _entropy_and_probs(row, beta)
        tries = 0
        while abs(h - target) > tol and tries < max_tries:
            if h > target:
                beta_min = beta
                beta = beta * 2.0 if beta_max == np.inf else (beta + beta_max) / 2.0
            else:
                beta_max = beta
                beta = beta / 2.0 if beta_min == -np.inf else (beta + beta_min) / 2.0
            h, probs = _entropy_and_probs(row, beta)
            tries += 1
        P[i, others] = probs
    return P


def project_2d(distances: np.ndarray, cfg: ProjectionConfig = None,
               cancel: CancellationToken = None) -> np.ndarray:
    """Project a symmetric distance matrix to centered 2-D coordinates.

    An all-zero distance matrix is degenerate (every point identical):
    the n copies of the origin are returned instead of letting the
    optimization diverge.
    """
    cfg = cfg or ProjectionConfig()
    distances = np.asarray(distances, dtype=np.float64)
    n = distances.shape[0]
    if distances.ndim != 2 or distances.shape[0] != distances.shape[1]:
        raise ValueError("distance matrix must be square")
    if n < 3:
        raise ValueError("need at least 3 points")
    if not np.allclose(distances, distances.T, atol=1e-9):
        raise ValueError("distance matrix must be symmetric")
    if np.abs(np.diag(distances)).max() > 1e-9:
        raise ValueError("distance matrix must have a zero diagonal")
    if np.all(distances == 0.0):
        return np.zeros((n, 2), dtype=np.float64)

    perplexity = cfg.perplexity if cfg.perplexity is not None else default_perplexity(n)
    if perplexity >= n:
        raise ValueError(f"perplexity {perplexity} must be < n = {n}")

    P = _conditional_probs(distances, perplexity)
    P = (P + P.T) / (2.0 * n)
    P = np.maximum(P, _MACHINE_EPS)

    rng = np.random.default_rng(cfg.seed)
    Y = rng.standard_normal((n, 2)) * 1e-4
    velocity = np.zeros_like(Y)
    gains = np.ones_like(Y)

    for it in range(cfg.iterations):
        if cancel is not None:
            cancel.raise_if_cancelled("2-D projection")
        exaggerating = it < cfg.exaggeration_iters
        P_eff = P * cfg.early_exaggeration if exaggerating else P

        sq = np.sum(Y ** 2, axis=1)
        num = 1.0 / (1.0 + (-2.0 * (Y @ Y.T) + sq).T + sq)
        np.fill_diagonal(num, 0.0)
        Q = np.maximum(num / num.sum(), _MACHINE_EPS)

        PQ = (P_eff - Q) * num
        grad = 4.0 * (PQ.sum(axis=1)[:, None] * Y - PQ @ Y)

        momentum = 0.5 if exaggerating else 0.8
        same_sign = (grad > 0) == (velocity > 0)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        np.maximum(gains, 0.01, out=gains)
        velocity = momentum * velocity - cfg.learning_rate * (gains * grad)
        Y = Y + velocity
        Y = Y - Y.mean(axis=0)

    return Y
