# End-to-end sweep over a small synthetic corpus: filter, group, profile
# vulnerability, rank pairs, join, suggest.  Mirrors what `joinrisk audit`
# does, but step by step with commentary.

from joinrisk import (
    PrivacyDictionary,
    ProjectionConfig,
    build_groups,
    build_profile,
    build_table,
    filter_corpus,
    join,
    rank_pairs,
    rank_vulnerable,
    relevance_score,
)

dictionary = PrivacyDictionary()

corpus = [
    build_table(
        ["age", "sex", "race", "date", "location", "charge"],
        [["34", "F", "hawaiian", "2020-03-20", "main st", "larceny"],
         ["21", "M", "white", "2020-01-03", "oak ave", "theft"],
         ["22", "F", "black", "2020-01-09", "elm st", "fraud"],
         ["25", "M", "white", "2020-02-11", "pine rd", "assault"]],
        id="arrests_a", tags=("crime",),
    ),
    build_table(
        ["age", "sex", "race", "date", "location", "disposition"],
        [["34", "f", "Hawaiian", "2020-03-20", "Main St", "open"],
         ["44", "M", "white", "2020-04-02", "river rd", "closed"],
         ["46", "F", "black", "2020-04-08", "park ln", "closed"],
         ["49", "M", "asian", "2020-04-21", "mill st", "open"]],
        id="arrests_b", tags=("crime",),
    ),
    build_table(
        ["permit_number", "fee", "status"],
        [["100", "50", "active"], ["101", "60", "expired"],
         ["102", "70", "active"]],
        id="permits", tags=("permits",), granularity="aggregated",
    ),
    build_table(
        ["branch", "visits", "events"],
        [["north", "120", "4"], ["south", "90", "2"], ["east", "150", "7"]],
        id="library", tags=("library",), granularity="aggregated",
    ),
]

# -- 1. metadata filters ------------------------------------------------------
crime = filter_corpus(corpus, tags={"crime"})
print("datasets tagged crime:", [t.meta.id for t in crime])

# -- 2. joinable groups -------------------------------------------------------
grouping = build_groups(corpus, dictionary,
                        projection_cfg=ProjectionConfig(seed=0))
print("weight chosen:", grouping.weight_chosen)
for g in grouping.groups:
    print(f"  group {g.group_id} rank {g.rank}: {g.members}")

# -- 3. vulnerability profiles ------------------------------------------------
profiles = [build_profile(t, dictionary) for t in crime]
for p in rank_vulnerable(profiles):
    worst = min((pt.c for pt in p.vulnerable_points), default=None)
    print(f"  {p.dataset_id}: {len(p.vulnerable_points)} vulnerable points, "
          f"rarest count {worst}")

# -- 4. which partners actually carry the vulnerable records? ------------------
top = rank_vulnerable(profiles)[0]
table = next(t for t in corpus if t.meta.id == top.dataset_id)
for other in corpus:
    if other.meta.id == top.dataset_id:
        continue
    score, matched = relevance_score(top.vulnerable_points, other, dictionary)
    print(f"  relevance of {other.meta.id}: {score:.2f} "
          f"({len(matched)} matched points)")

# -- 5. rank the pairs and join the riskiest ------------------------------------
pairs = rank_pairs(corpus, dictionary)
riskiest = pairs[0]
print("\nriskiest pair:", riskiest.dataset_a, "x", riskiest.dataset_b,
      "risk", riskiest.risk, "key", riskiest.suggested_key)
by_id = {t.meta.id: t for t in corpus}
outcome = join(by_id[riskiest.dataset_a], by_id[riskiest.dataset_b],
               riskiest.suggested_key)
print("matching records:", outcome.match_count)
if outcome.match_count:
    print("the planted individual:",
          outcome.matches[0].key_values)
