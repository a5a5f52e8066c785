"""Equal-width discretization shared by profiling, entropy and joins.

Numeric columns are summarized with four equal-width bins over the
observed value range.  Bin labels are plain "lo-hi" strings so that the
same value range always produces the same label, which keeps labels
comparable across modules (record points, entropy, join equality,
parallel-sets stacks).  Bins are half-open [lo, hi) except the last,
which is closed so the maximum falls in bin 3.
"""

import math
from dataclasses import dataclass

from .errors import NoFiniteValues

DEFAULT_BIN_COUNT = 4


def _fmt(x: float) -> str:
    return f"{x:g}"


@dataclass(frozen=True)
class BinScheme:
    """Edges and labels for an equal-width binning of one value range."""

    edges: tuple  # len = bin_count + 1; degenerate range -> (v, v)
    labels: tuple

    @property
    def bin_count(self) -> int:
        return len(self.labels)

    def assign(self, value: float) -> str:
        """Label for ``value``; values outside the range clamp to the end bins."""
        lo, hi = self.edges[0], self.edges[-1]
        if self.bin_count == 1:
            return self.labels[0]
        if value >= hi:
            return self.labels[-1]
        if value <= lo:
            return self.labels[0]
        width = (hi - lo) / self.bin_count
        idx = min(int((value - lo) / width), self.bin_count - 1)
        return self.labels[idx]


def equal_width_bins(values, bin_count: int = DEFAULT_BIN_COUNT) -> BinScheme:
    """Build a bin scheme over the finite values in ``values``.

    A degenerate range (min == max) collapses to a single bin holding
    every value.  Raises NoFiniteValues when nothing is binnable.
    """
    finite = [v for v in values if v is not None and math.isfinite(v)]
    if not finite:
        raise NoFiniteValues("no finite values to bin")
    lo, hi = min(finite), max(finite)
    if lo == hi:
        return BinScheme(edges=(lo, hi), labels=(f"{_fmt(lo)}-{_fmt(hi)}",))
    width = (hi - lo) / bin_count
    edges = tuple(lo + i * width for i in range(bin_count)) + (hi,)
    labels = tuple(
        f"{_fmt(edges[i])}-{_fmt(edges[i + 1])}" for i in range(bin_count)
    )
    return BinScheme(edges=edges, labels=labels)


def bin_counts(values, scheme: BinScheme) -> dict:
    """Frequency of each occupied bin label, in bin order."""
    counts = {}
    for label in scheme.labels:
        counts[label] = 0
    for v in values:
        if v is None or not math.isfinite(v):
            continue
        counts[scheme.assign(v)] += 1
    return {label: n for label, n in counts.items() if n > 0}
