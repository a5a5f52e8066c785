import math
import random

import pytest
from hypothesis import given, strategies as st

from joinrisk.corpus import PrivacyDictionary
from joinrisk.errors import InvalidCounts, NoSharedAttributes
from joinrisk.pairrisk import (
    assess_pair,
    column_entropy,
    normalize_risk,
    rank_pairs,
    risk_score,
    shannon_entropy,
    shared_attributes,
    suggest_join_key,
)

from oracles import entropy_reference

from conftest import make_table


@pytest.fixture
def dictionary():
    return PrivacyDictionary()


class TestEntropy:
    def test_constant_column_is_zero(self):
        table = make_table("t", ["status"], [["open"]] * 9)
        assert column_entropy(table.column("status")) == 0.0

    def test_uniform_column_is_ln_n(self):
        for n in (2, 5, 8):
            rows = [[f"cat{i}"] for i in range(n)]
            table = make_table("t", ["kind"], rows)
            assert column_entropy(table.column("kind")) == pytest.approx(
                math.log(n), abs=1e-12
            )

    def test_hand_computed_six_rows(self):
        table = make_table("t", ["v"],
                           [["a"], ["a"], ["b"], ["b"], ["b"], ["c"]])
        expected = -(2 / 6) * math.log(2 / 6) - (3 / 6) * math.log(3 / 6) \
            - (1 / 6) * math.log(1 / 6)
        assert column_entropy(table.column("v")) == pytest.approx(
            expected, abs=1e-12
        )

    def test_against_bruteforce_oracle(self):
        rng = random.Random(5)
        for _ in range(30):
            values = [f"c{rng.randint(0, 19)}"
                      for _ in range(rng.randint(1, 200))]
            table = make_table("t", ["v"], [[v] for v in values])
            assert column_entropy(table.column("v")) == pytest.approx(
                entropy_reference(values), abs=1e-9
            )

    def test_case_insensitive_categories(self):
        table = make_table("t", ["v"], [["F"], ["f"], [" f "]])
        assert column_entropy(table.column("v")) == 0.0

    def test_missing_excluded(self):
        table = make_table("t", ["v"], [["a"], [""], ["NA"], ["a"]])
        assert column_entropy(table.column("v")) == 0.0

    @given(st.lists(st.integers(min_value=1, max_value=50), min_size=1,
                    max_size=12))
    def test_nonnegative_and_bounded(self, counts):
        h = shannon_entropy(counts)
        assert 0.0 <= h <= math.log(len(counts)) + 1e-12


class TestSharedAttributes:
    def test_intersection_and_order(self, dictionary):
        a = make_table("a", ["age", "zone", "status"],
                       [["30", "z1", "open"], ["35", "z2", "open"],
                        ["40", "z3", "open"], ["47", "z4", "open"]])
        b = make_table("b", ["age", "zone", "status", "extra"],
                       [["30", "z1", "open", "x"]])
        shared = shared_attributes(a, b, dictionary)
        assert [s.name for s in shared] == ["age", "zone", "status"]
        assert shared[0].is_privacy and not shared[1].is_privacy

    def test_max_rule(self, dictionary):
        a = make_table("a", ["zone"], [["z1"], ["z1"], ["z1"]])
        b = make_table("b", ["zone"], [["z1"], ["z2"], ["z3"]])
        shared = shared_attributes(a, b, dictionary)
        assert shared[0].entropy_a == 0.0
        assert shared[0].entropy == pytest.approx(math.log(3))
        flipped = shared_attributes(b, a, dictionary)
        assert flipped[0].entropy == pytest.approx(math.log(3))

    def test_row_permutation_invariant(self, dictionary):
        rows = [["30", "z1"], ["31", "z2"], ["32", "z1"]]
        a1 = make_table("a", ["age", "zone"], rows)
        a2 = make_table("a", ["age", "zone"], rows[::-1])
        b = make_table("b", ["age", "zone"], rows)
        h1 = [s.entropy for s in shared_attributes(a1, b, dictionary)]
        h2 = [s.entropy for s in shared_attributes(a2, b, dictionary)]
        assert h1 == pytest.approx(h2, abs=1e-12)


class TestRiskScore:
    def test_paper_anchor(self):
        assert risk_score(2, 15) == 113.0

    def test_alpha_drops_out_without_privacy(self):
        assert risk_score(0, 7) == 7.0

    def test_all_privacy(self):
        assert risk_score(3, 3, 50) == 150.0

    def test_invalid_counts(self):
        with pytest.raises(InvalidCounts):
            risk_score(5, 3)
        with pytest.raises(InvalidCounts):
            risk_score(-1, 3)

    def test_strictly_increasing_in_each_argument(self):
        for c in range(1, 20):
            for p in range(0, c):
                assert risk_score(p + 1, c) > risk_score(p, c)
        for p in range(0, 5):
            for c in range(p, 20):
                assert risk_score(p, c + 1) > risk_score(p, c)


class TestNormalizeRisk:
    def test_endpoints_and_clamp(self):
        assert normalize_risk(0.0) == 0.0
        assert normalize_risk(182.0) == 5.0
        assert normalize_risk(364.0) == 5.0

    def test_monotone(self):
        values = [normalize_risk(v) for v in (0, 10, 50, 113, 182, 500)]
        assert values == sorted(values)


class TestSuggestJoinKey:
    def shared(self, dictionary, spec):
        # spec: [(name, entropy, ...)] turned into SharedAttribute-likes
        from joinrisk.pairrisk import SharedAttribute

        return [
            SharedAttribute(name=n, entropy_a=h, entropy_b=h,
                            is_privacy=n in dictionary)
            for n, h in spec
        ]

    def test_privacy_subset_wins(self, dictionary):
        shared = self.shared(dictionary,
                             [("age", 2.0), ("race", 1.0), ("notes", 4.0)])
        assert suggest_join_key(shared, dictionary) == ["age", "race"]

    def test_entropy_fill_without_privacy(self, dictionary):
        shared = self.shared(dictionary,
                             [("permit_id", 4.1), ("status", 0.3)])
        assert suggest_join_key(shared, dictionary) == ["permit_id", "status"]

    def test_one_privacy_one_fill(self, dictionary):
        shared = self.shared(dictionary,
                             [("sex", 0.6), ("incident_id", 5.0),
                              ("zone", 1.0)])
        assert suggest_join_key(shared, dictionary) == ["sex", "incident_id"]

    def test_single_shared_attribute(self, dictionary):
        shared = self.shared(dictionary, [("zone", 1.0)])
        assert suggest_join_key(shared, dictionary) == ["zone"]

    def test_empty_shared(self, dictionary):
        with pytest.raises(NoSharedAttributes):
            suggest_join_key([], dictionary)


class TestRankPairs:
    def corpus(self, n):
        tables = []
        for i in range(n):
            tables.append(make_table(
                f"d{i:02d}", ["age", f"col_{i}"],
                [[str(20 + j), f"v{j}"] for j in range(4)],
            ))
        return tables

    def test_pair_counts(self, dictionary):
        assert len(rank_pairs(self.corpus(7), dictionary)) == 21
        assert len(rank_pairs(self.corpus(10), dictionary)) == 45

    def test_equal_risk_breaks_on_mean_entropy(self, dictionary):
        low = make_table("low_a", ["zone", "status"],
                         [["z1", "open"]] * 4)
        low2 = make_table("low_b", ["zone", "status"],
                          [["z1", "open"]] * 4)
        high = make_table("high_a", ["hue", "shape"],
                          [["red", "disc"], ["blue", "ring"],
                           ["lime", "star"], ["teal", "cube"]])
        high2 = make_table("high_b", ["hue", "shape"],
                           [["red", "disc"], ["blue", "ring"],
                            ["pink", "star"], ["gray", "cube"]])
        ranked = rank_pairs([low, low2, high, high2], dictionary)
        top = ranked[0]
        assert {top.dataset_a, top.dataset_b} == {"high_a", "high_b"}

    def test_alpha_separation(self, dictionary):
        privacy = make_table("priv_a", ["age", "zone"],
                             [["30", "z1"], ["41", "z2"]])
        privacy2 = make_table("priv_b", ["age", "street"],
                              [["30", "s1"], ["55", "s2"]])
        plain = make_table("plain_a", ["zone", "street", "status"],
                           [["z1", "s1", "open"]])
        plain2 = make_table("plain_b", ["zone", "street", "status"],
                            [["z1", "s1", "open"]])
        ranked = rank_pairs([privacy, privacy2, plain, plain2], dictionary)
        top = ranked[0]
        assert {top.dataset_a, top.dataset_b} == {"priv_a", "priv_b"}
        assert top.p >= 1

    def test_assess_pair_is_order_insensitive(self, dictionary):
        a = make_table("aa", ["age", "zone"], [["30", "z1"]])
        b = make_table("bb", ["age", "zone"], [["31", "z2"]])
        one = assess_pair(a, b, dictionary)
        two = assess_pair(b, a, dictionary)
        assert one.dataset_a == two.dataset_a == "aa"
        assert one.risk == two.risk
