import random
import string

import numpy as np
import pytest

from joinrisk.corpus import PrivacyDictionary
from joinrisk.embedding import (
    DatasetVector,
    EmbeddingProvider,
    WeightConfig,
    dataset_vector,
    embed_token,
    load_vector_file,
    pairwise_distances,
)
from joinrisk.errors import ZeroVector

from conftest import make_meta


def small_dictionary():
    return PrivacyDictionary(("age", "gender", "race"))


class TestEmbedToken:
    def test_repeat_call_identical(self):
        p = EmbeddingProvider(dimension=50, seed=3)
        assert np.array_equal(embed_token(p, "age"), embed_token(p, "age"))

    def test_equal_seeds_equal_vectors(self):
        a = EmbeddingProvider(dimension=50, seed=3)
        b = EmbeddingProvider(dimension=50, seed=3)
        assert np.array_equal(embed_token(a, "race"), embed_token(b, "race"))

    def test_different_seeds_differ(self):
        a = EmbeddingProvider(dimension=50, seed=3)
        b = EmbeddingProvider(dimension=50, seed=4)
        assert not np.array_equal(embed_token(a, "race"),
                                  embed_token(b, "race"))

    def test_unit_norm_over_random_tokens(self):
        p = EmbeddingProvider(dimension=120, seed=9)
        rng = random.Random(7)
        for _ in range(100):
            token = "".join(
                rng.choices(string.ascii_lowercase + string.digits,
                            k=rng.randint(1, 18))
            )
            norm = np.linalg.norm(embed_token(p, token))
            assert abs(norm - 1.0) <= 1e-9

    def test_external_vectors_with_fallback(self, tmp_path):
        path = tmp_path / "vectors.txt"
        path.write_text("age " + " ".join(["0.5"] * 4) + "\n",
                        encoding="utf-8")
        vectors = load_vector_file(path, dimension=4)
        p = EmbeddingProvider(dimension=4, seed=1, vectors=vectors)
        assert np.allclose(p.embed("age"), [0.5, 0.5, 0.5, 0.5])
        oov = p.embed("zebra")
        assert abs(np.linalg.norm(oov) - 1.0) <= 1e-9


class TestDatasetVector:
    def test_weight_pattern_single_attribute(self):
        cfg = WeightConfig(x=8.0, dictionary=small_dictionary())
        meta = make_meta("d", ["age"])
        vec = dataset_vector(meta, EmbeddingProvider(dimension=20), cfg)
        assert vec.weights.tolist() == [8.0, 0.0, 0.0]

    def test_weight_pattern_two_attributes(self):
        cfg = WeightConfig(x=8.0, dictionary=small_dictionary())
        meta = make_meta("d", ["age", "race"])
        vec = dataset_vector(meta, EmbeddingProvider(dimension=20), cfg)
        assert vec.weights.tolist() == [8.0, 0.0, 8.0]

    def test_full_length(self):
        cfg = WeightConfig(x=8.0, dictionary=small_dictionary())
        meta = make_meta("d", ["age", "zone"])
        vec = dataset_vector(meta, EmbeddingProvider(dimension=20), cfg)
        assert vec.full.shape == (23,)

    def test_zero_weight_reduces_to_base(self):
        p = EmbeddingProvider(dimension=20)
        cfg = WeightConfig(x=0.0, dictionary=small_dictionary())
        a = dataset_vector(make_meta("a", ["age", "zone"]), p, cfg)
        b = dataset_vector(make_meta("b", ["age", "street"]), p, cfg)
        assert not a.weights.any() and not b.weights.any()

        def cos(u, v):
            return float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))

        assert cos(a.full, b.full) == pytest.approx(cos(a.base, b.base),
                                                    abs=1e-12)

    def test_attribute_order_irrelevant(self):
        p = EmbeddingProvider(dimension=20)
        cfg = WeightConfig(x=8.0, dictionary=small_dictionary())
        fwd = dataset_vector(make_meta("a", ["age", "race", "zone"]), p, cfg)
        rev = dataset_vector(make_meta("a", ["zone", "race", "age"]), p, cfg)
        assert np.allclose(fwd.full, rev.full)

    def test_non_dictionary_attribute_touches_only_base(self):
        p = EmbeddingProvider(dimension=20)
        cfg = WeightConfig(x=8.0, dictionary=small_dictionary())
        before = dataset_vector(make_meta("a", ["age"]), p, cfg)
        after = dataset_vector(make_meta("a", ["age", "zone"]), p, cfg)
        assert np.array_equal(before.weights, after.weights)
        assert not np.array_equal(before.base, after.base)

    def test_tokens_come_from_underscore_split(self):
        p = EmbeddingProvider(dimension=20)
        cfg = WeightConfig(x=0.0, dictionary=small_dictionary())
        joined = dataset_vector(make_meta("a", ["victim age"]), p, cfg)
        split = dataset_vector(make_meta("b", ["victim", "age"]), p, cfg)
        assert np.allclose(joined.base, split.base)


class TestPairwiseDistances:
    def vec(self, i, arr, weights=()):
        return DatasetVector(dataset_id=f"d{i}",
                             base=np.array(arr, dtype=float),
                             weights=np.array(weights, dtype=float))

    def test_identical_is_zero(self):
        d = pairwise_distances([self.vec(0, [1, 2]), self.vec(1, [1, 2])])
        assert d[0, 1] == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_is_one(self):
        d = pairwise_distances([self.vec(0, [1, 0]), self.vec(1, [0, 1])])
        assert d[0, 1] == pytest.approx(1.0, abs=1e-12)

    def test_opposite_is_two(self):
        d = pairwise_distances([self.vec(0, [1, 1]), self.vec(1, [-1, -1])])
        assert d[0, 1] == pytest.approx(2.0, abs=1e-12)

    def test_zero_vector_reports_dataset(self):
        with pytest.raises(ZeroVector, match="d1"):
            pairwise_distances([self.vec(0, [1, 0]), self.vec(1, [0, 0])])

    def test_symmetric_zero_diagonal(self):
        rng = np.random.default_rng(5)
        vecs = [self.vec(i, rng.normal(size=6)) for i in range(5)]
        d = pairwise_distances(vecs)
        assert np.array_equal(d, d.T)
        assert np.all(np.diag(d) == 0)

    def test_larger_weight_pulls_shared_privacy_datasets_together(self):
        p = EmbeddingProvider(dimension=20)
        dictionary = small_dictionary()
        meta_a = make_meta("a", ["age", "zone"])
        meta_b = make_meta("b", ["age", "street"])
        gaps = []
        for x in (1.0, 8.0, 17.0):
            cfg = WeightConfig(x=x, dictionary=dictionary)
            va = dataset_vector(meta_a, p, cfg)
            vb = dataset_vector(meta_b, p, cfg)
            gaps.append(pairwise_distances([va, vb])[0, 1])
        assert gaps[0] > gaps[1] > gaps[2]
