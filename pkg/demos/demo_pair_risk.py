# Pair-risk walkthrough: shared attributes, entropy, and the risk scale.
#
# Builds four small tables and ranks the pairs.  The pair sharing
# age/sex/race must dominate regardless of how many mundane columns the
# permit datasets share, thanks to the alpha=50 weighting.

from joinrisk import PrivacyDictionary, build_table, rank_pairs, risk_score
from joinrisk.pairrisk import normalize_risk, shared_attributes

dictionary = PrivacyDictionary()

arrests_2018 = build_table(
    ["age", "sex", "race", "precinct", "charge"],
    [["19", "M", "white", "p1", "theft"],
     ["27", "F", "black", "p2", "fraud"],
     ["44", "M", "asian", "p1", "arson"],
     ["61", "F", "white", "p3", "theft"]],
    id="arrests_2018",
)
arrests_2019 = build_table(
    ["age", "sex", "race", "precinct", "disposition"],
    [["23", "F", "white", "p1", "open"],
     ["35", "M", "black", "p2", "closed"],
     ["52", "F", "asian", "p3", "open"],
     ["68", "M", "white", "p1", "closed"]],
    id="arrests_2019",
)
permits_a = build_table(
    ["permit_number", "fee", "status", "zone", "inspector"],
    [["101", "50", "active", "z1", "kim"],
     ["102", "75", "expired", "z2", "lee"],
     ["103", "60", "active", "z3", "kim"]],
    id="permits_a",
)
permits_b = build_table(
    ["permit_number", "fee", "status", "zone", "inspector"],
    [["201", "55", "active", "z1", "roy"],
     ["202", "80", "expired", "z4", "um"],
     ["203", "90", "active", "z2", "roy"]],
    id="permits_b",
)

# -- the risk formula on its own -------------------------------------------
print("risk(p=2, c=15) =", risk_score(2, 15))          # 113
print("risk(p=0, c=49) =", risk_score(0, 49))          # still below any p>=1
print("risk(p=1, c=1)  =", risk_score(1, 1))           # 50
print("display scale:", [round(normalize_risk(r), 2)
                         for r in (0, 50, 113, 182, 400)])

# -- shared attributes carry their entropy ----------------------------------
shared = shared_attributes(arrests_2018, arrests_2019, dictionary)
print("\nshared attributes of the arrest pair (entropy-sorted):")
for s in shared:
    flag = "privacy" if s.is_privacy else "       "
    print(f"  {flag}  {s.name:10s} H={s.entropy:.3f}")

# -- the ranking ------------------------------------------------------------
ranked = rank_pairs([arrests_2018, arrests_2019, permits_a, permits_b],
                    dictionary)
print("\npairs, riskiest first:")
for pr in ranked:
    print(f"  {pr.dataset_a:14s} x {pr.dataset_b:14s} "
          f"p={pr.p} c={pr.c} risk={pr.risk:6.1f} "
          f"bar={pr.normalized_risk:.2f}/5 key={pr.suggested_key}")
