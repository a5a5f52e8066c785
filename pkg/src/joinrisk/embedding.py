"""Schema-to-vector conversion.

Each dataset's attribute names become a fixed-length vector: the sum of
per-token word embeddings, concatenated with a weight vector that marks
which privacy-dictionary attributes the dataset carries.  Cosine
distance between these vectors drives the joinability grouping.

The default embedding backend hashes character trigrams, so the engine
is fully self-contained and deterministic; a word-vector text file can
be plugged in instead, with hashing as the out-of-vocabulary fallback.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .corpus import PrivacyDictionary, attribute_tokens
from .errors import ParseError, ZeroVector

DEFAULT_DIMENSION = 300
DEFAULT_WEIGHT_CANDIDATES = (8.0, 17.0)


def _hash64(data: bytes, seed: int) -> int:
    key = seed.to_bytes(8, "little", signed=False)
    digest = hashlib.blake2b(data, digest_size=8, key=key).digest()
    return int.from_bytes(digest, "little")


def load_vector_file(path, dimension: int = DEFAULT_DIMENSION) -> dict:
    """Parse a whitespace-separated "token v1 .. vN" vector file."""
    vectors = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != dimension + 1:
                raise ParseError(
                    f"{path}:{lineno}: expected {dimension + 1} fields, "
                    f"got {len(parts)}"
                )
            vectors[parts[0]] = np.array(parts[1:], dtype=np.float64)
    return vectors


class EmbeddingProvider:
    """Deterministic token -> vector map of a fixed dimension.

    With external vectors, lookups are exact and out-of-vocabulary
    tokens fall back to trigram hashing, so embedding is total and no
    dataset can collapse to the zero vector.
    """

    def __init__(self, dimension: int = DEFAULT_DIMENSION, seed: int = 0,
                 vectors: dict = None):
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self.seed = seed
        self.vectors = vectors

    def _hashed(self, token: str) -> np.ndarray:
        padded = f"<{token}>"
        v = np.zeros(self.dimension, dtype=np.float64)
        for i in range(len(padded) - 2):
            h = _hash64(padded[i:i + 3].encode("utf-8"), self.seed)
            sign = 1.0 if (h >> 63) & 1 == 0 else -1.0
            v[h % self.dimension] += sign
        norm = np.linalg.norm(v)
        if norm == 0.0:  # trigram signs cancelled; keep totality
            v[_hash64(padded.encode("utf-8"), self.seed) % self.dimension] = 1.0
            norm = 1.0
        return v / norm

    def embed(self, token: str) -> np.ndarray:
        if not token:
            raise ValueError("cannot embed an empty token")
        if self.vectors is not None:
            hit = self.vectors.get(token)
            if hit is not None:
                if hit.shape != (self.dimension,):
                    raise ParseError(
                        f"vector for {token!r} has dimension {hit.shape}, "
                        f"expected {self.dimension}"
                    )
                return hit.astype(np.float64)
        return self._hashed(token)


def embed_token(provider: EmbeddingProvider, token: str) -> np.ndarray:
    return provider.embed(token)


@dataclass
class WeightConfig:
    """Privacy weight applied when building dataset vectors."""

    x: float
    dictionary: PrivacyDictionary = field(default_factory=PrivacyDictionary)
    candidates: tuple = DEFAULT_WEIGHT_CANDIDATES

    def __post_init__(self):
        if self.x < 0:
            raise ValueError("weight must be nonnegative")
        if not self.candidates:
            raise ValueError("candidates must be non-empty")


@dataclass(eq=False)
class DatasetVector:
    dataset_id: str
    base: np.ndarray
    weights: np.ndarray

    @property
    def full(self) -> np.ndarray:
        return np.concatenate([self.base, self.weights])


def dataset_vector(meta, provider: EmbeddingProvider,
                   weights: WeightConfig) -> DatasetVector:
    """Vector form of one dataset's schema.

    The base part sums token embeddings over every attribute name (order
    never matters); the weight part holds ``x`` at the position of each
    dictionary attribute the dataset contains, 0 elsewhere.
    """
    base = np.zeros(provider.dimension, dtype=np.float64)
    present = set()
    for attr in meta.normalized_attributes:
        present.add(attr)
        for token in attribute_tokens(attr):
            base += provider.embed(token)
    weight_vec = np.array(
        [weights.x if attr in present else 0.0 for attr in weights.dictionary],
        dtype=np.float64,
    )
    return DatasetVector(dataset_id=meta.id, base=base, weights=weight_vec)


def pairwise_distances(vectors) -> np.ndarray:
    """Symmetric cosine-distance matrix: d = 1 - cos, clamped to [0, 2]."""
    if len(vectors) < 2:
        raise ValueError("need at least two vectors")
    full = np.stack([v.full for v in vectors])
    norms = np.linalg.norm(full, axis=1)
    for v, norm in zip(vectors, norms):
        if norm == 0.0:
            raise ZeroVector(f"dataset {v.dataset_id!r} has a zero vector")
    unit = full / norms[:, None]
    dist = 1.0 - unit @ unit.T
    np.clip(dist, 0.0, 2.0, out=dist)
    dist = (dist + dist.T) / 2.0
    np.fill_diagonal(dist, 0.0)
    return dist
