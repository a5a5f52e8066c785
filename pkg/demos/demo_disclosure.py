# Disclosure walkthrough: join a pair, read the parallel sets, grow the key.
#
# A single individual is planted in both arrest datasets.  Joining on the
# suggested quasi-identifiers surfaces exactly that record; the NMI
# suggestions then point at "disposition", which splits the matches.

import json

from joinrisk import PrivacyDictionary, build_table, join, match_detail, suggest_features
from joinrisk.pairrisk import assess_pair

dictionary = PrivacyDictionary()

juvenile = build_table(
    ["age", "sex", "race", "date", "location", "charge"],
    [["15", "M", "white", "2018-03-20", "coral ridge", "larceny"],
     ["14", "F", "black", "2018-01-11", "riverside", "theft"],
     ["16", "M", "asian", "2018-02-02", "downtown", "vandalism"],
     ["17", "F", "white", "2018-04-05", "harbor", "theft"]],
    id="juvenile_arrests",
)
adult = build_table(
    ["age", "sex", "race", "date", "location", "disposition"],
    [["15", "m", "White", "2018-03-20", "Coral Ridge", "open"],
     ["14", "F", "black", "2018-01-11", "riverside", "closed"],
     ["38", "M", "white", "2018-06-13", "downtown", "closed"],
     ["15", "m", "White", "2018-03-20", "Coral Ridge", "closed"]],
    id="adult_arrests",
)

# -- what does the engine suggest for this pair? ----------------------------
pair = assess_pair(juvenile, adult, dictionary)
print("suggested join key:", pair.suggested_key)

# -- join on it --------------------------------------------------------------
outcome = join(juvenile, adult, pair.suggested_key)
print("match_count:", outcome.match_count,
      " distinct key combos:", outcome.distinct_key_count)

# duplicates in the source (same incident filed twice) stay visible
for i, m in enumerate(outcome.matches):
    print(f"  match {i}: key={m.key_values} "
          f"rows a/b = {m.row_index_a}/{m.row_index_b}")

# -- parallel-sets data: stacks per key attribute, ribbons between them ------
print("\nstacks:", json.dumps(outcome.stacks, indent=2))
print("ribbon counts between", outcome.key[0], "and", outcome.key[1], ":",
      [(r["from"], r["to"], r["count"]) for r in outcome.ribbons[0]])

# -- record detail (the click-a-ribbon popup) --------------------------------
detail = match_detail(outcome, juvenile, adult, 0)
print("\nrecord detail for match 0:")
print("  juvenile row:", detail["row_a"])
print("  adult row:   ", detail["row_b"])

# -- feature suggestions for the next, tighter key ---------------------------
suggestions = suggest_features(outcome, juvenile, adult)
print("\ntop features by normalized mutual information:")
for side, items in suggestions.items():
    for s in items[:3]:
        print(f"  {side}: {s.attribute:12s} nmi={s.nmi:.3f} "
              f"dist={[(d['label'], d['count']) for d in s.distribution]}")
