"""Independent reference implementations used to cross-check the engine.

Everything here is deliberately naive (textbook pseudocode, pure-Python
loops, LP feasibility) and shares no code with the library paths it
verifies.
"""

import math

import numpy as np
from scipy.optimize import linprog


def dbscan_reference(points, eps, min_pts):
    """Textbook DBSCAN: seed-list expansion in index order over
    neighborhoods taken from an explicit O(n^2) distance double loop.

    Returns cluster id per point with None for noise.
    """
    pts = [tuple(map(float, p)) for p in points]
    n = len(pts)
    neighbors = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if math.dist(pts[i], pts[j]) <= eps:
                neighbors[i].append(j)

    labels = [None] * n
    visited = [False] * n
    cid = 0
    for i in range(n):
        if visited[i]:
            continue
        visited[i] = True
        if len(neighbors[i]) < min_pts:
            continue  # noise unless later claimed as a border point
        labels[i] = cid
        seeds = list(neighbors[i])
        k = 0
        while k < len(seeds):
            q = seeds[k]
            k += 1
            if not visited[q]:
                visited[q] = True
                if len(neighbors[q]) >= min_pts:
                    seeds.extend(neighbors[q])
            if labels[q] is None:
                labels[q] = cid
        cid += 1
    return labels


def same_partition(labels_a, labels_b):
    """True when two labelings induce the same clusters and noise set."""
    if len(labels_a) != len(labels_b):
        return False
    mapping = {}
    reverse = {}
    for a, b in zip(labels_a, labels_b):
        if (a is None) != (b is None):
            return False
        if a is None:
            continue
        if mapping.setdefault(a, b) != b:
            return False
        if reverse.setdefault(b, a) != a:
            return False
    return True


def entropy_reference(values):
    """Shannon entropy (nats) from a frequency table built by hand."""
    counts = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    total = sum(counts.values())
    h = 0.0
    for c in counts.values():
        h -= (c / total) * math.log(c / total)
    return h


def nmi_reference(xs, ys, mode="sqrt"):
    """Mutual information over the explicit joint distribution."""
    n = len(xs)
    joint = {}
    for pair in zip(xs, ys):
        joint[pair] = joint.get(pair, 0) + 1
    px = {}
    py = {}
    for (x, y), c in joint.items():
        px[x] = px.get(x, 0) + c
        py[y] = py.get(y, 0) + c
    info = 0.0
    for (x, y), c in joint.items():
        pxy = c / n
        info += pxy * math.log(pxy / ((px[x] / n) * (py[y] / n)))
    hx = entropy_reference(xs)
    hy = entropy_reference(ys)
    if hx == 0.0 or hy == 0.0:
        return 0.0
    denom = {
        "sqrt": math.sqrt(hx * hy),
        "min": min(hx, hy),
        "max": max(hx, hy),
        "mean": (hx + hy) / 2.0,
    }[mode]
    return max(info, 0.0) / denom


def _bin_label(v, lo, hi):
    if lo == hi:
        return f"{lo:g}-{hi:g}"
    width = (hi - lo) / 4
    idx = 3 if v >= hi else max(0, min(int((v - lo) / width), 3))
    if v <= lo:
        idx = 0
    return f"{lo + idx * width:g}-{hi if idx == 3 else lo + (idx + 1) * width:g}"


def join_reference(table_a, table_b, key, numeric_mode="binned"):
    """Nested-loop inner join; returns the multiset of matched index pairs."""

    def labels_for(table, other, name):
        col = table.column(name)
        o_col = other.column(name)
        both_numeric = col.kind.value == "numeric" and o_col.kind.value == "numeric"
        if both_numeric and numeric_mode == "binned":
            pool = [v for v in list(col.values) + list(o_col.values)
                    if v is not None]
            lo, hi = min(pool), max(pool)
            return [None if v is None else _bin_label(v, lo, hi)
                    for v in col.values]
        out = []
        for v in col.values:
            if v is None:
                out.append(None)
            elif col.kind.value == "numeric":
                out.append(f"{v:g}")
            else:
                out.append(v.strip().lower())
        return out

    keys_a = [labels_for(table_a, table_b, name) for name in key]
    keys_b = [labels_for(table_b, table_a, name) for name in key]
    tuples_a = [tuple(k[i] for k in keys_a)
                for i in range(table_a.meta.row_count)]
    tuples_b = [tuple(k[j] for k in keys_b)
                for j in range(table_b.meta.row_count)]
    matches = []
    for i, tup_a in enumerate(tuples_a):
        if any(v is None for v in tup_a):
            continue
        for j, tup_b in enumerate(tuples_b):
            if tup_a == tup_b:
                matches.append((i, j))
    return matches


def relevance_reference(vulnerable, other_points):
    """Set-intersection relevance: share of (a, v) pairs found in B."""
    want = {(p.a, str(p.v).strip().lower()) for p in vulnerable}
    have = {(p.a, str(p.v).strip().lower()) for p in other_points}
    return len(want & have) / len(want)


def separable_by_line(points_a, points_b):
    """LP feasibility search for a line w.x + b with margin 1 between
    the two point sets."""
    a = np.asarray(points_a, dtype=float)
    b = np.asarray(points_b, dtype=float)
    # variables: w1, w2, bias
    rows = []
    rhs = []
    for p in a:  # w.p + bias >= 1
        rows.append([-p[0], -p[1], -1.0])
        rhs.append(-1.0)
    for p in b:  # w.p + bias <= -1
        rows.append([p[0], p[1], 1.0])
        rhs.append(-1.0)
    result = linprog(
        c=[0.0, 0.0, 0.0],
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        bounds=[(None, None)] * 3,
        method="highs",
    )
    return result.status == 0


def calinski_harabasz_reference(points, labels):
    """Dispersion-ratio index computed straight from its definition."""
    pts = np.asarray(points, dtype=float)
    keep = [i for i, l in enumerate(labels) if l is not None]
    pts = pts[keep]
    labs = [labels[i] for i in keep]
    clusters = sorted(set(labs))
    m, k = len(pts), len(clusters)
    mean = pts.mean(axis=0)
    between = 0.0
    within = 0.0
    for c in clusters:
        members = pts[[i for i, l in enumerate(labs) if l == c]]
        centroid = members.mean(axis=0)
        between += len(members) * float(((centroid - mean) ** 2).sum())
        within += float(((members - centroid) ** 2).sum())
    return (between / (k - 1)) / (within / (m - k))
