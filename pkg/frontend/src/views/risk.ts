// Risk assessment view: pairs sorted by the engine, each with its
// shared-attribute entropy bars (privacy in violet), a grey-to-red risk
// gradient bar with a marker at the normalized score, and the key used
// in the previous join highlighted in golden yellow.  The risk-score
// histogram doubles as a client-side brush filter.

import { clear, el, svg } from "../dom";
import type { PairRisk } from "../types";

export const PRIVACY_COLOR = "#8e4b8e"; // plum for privacy attributes
export const LAST_KEY_COLOR = "#d4a017"; // golden yellow
export const RISK_SCALE_MAX = 5;
const HISTOGRAM_BINS = 10;
const ENTROPY_BAR_HEIGHT = 40;

export interface RiskCallbacks {
  onSelectPair(pair: PairRisk, key: string[]): void;
  onBrush(range: [number, number] | null): void;
}

export function histogramCounts(pairs: PairRisk[]): number[] {
  const counts = new Array(HISTOGRAM_BINS).fill(0);
  for (const pair of pairs) {
    const bin = Math.min(
      Math.floor((pair.normalized_risk / RISK_SCALE_MAX) * HISTOGRAM_BINS),
      HISTOGRAM_BINS - 1,
    );
    counts[bin] += 1;
  }
  return counts;
}

export function binRange(bin: number): [number, number] {
  const width = RISK_SCALE_MAX / HISTOGRAM_BINS;
  return [bin * width, (bin + 1) * width];
}

/** Client-side brush: keep the pairs whose normalized risk falls inside. */
export function applyBrush(
  pairs: PairRisk[],
  range: [number, number] | null,
): PairRisk[] {
  if (!range) return pairs;
  const [lo, hi] = range;
  return pairs.filter(
    (p) => p.normalized_risk >= lo && p.normalized_risk <= hi,
  );
}

function riskHistogram(
  pairs: PairRisk[],
  active: [number, number] | null,
  callbacks: RiskCallbacks,
): HTMLElement {
  const counts = histogramCounts(pairs);
  const top = Math.max(...counts, 1);
  const box = el("div", { class: "risk-histogram" });
  counts.forEach((count, bin) => {
    const [lo, hi] = binRange(bin);
    const selected = active !== null && lo >= active[0] && hi <= active[1];
    const bar = el("span", {
      class: selected ? "hist-bar selected" : "hist-bar",
      style: `height: ${(count / top) * 36}px`,
      "data-bin": bin,
      "data-count": count,
      title: `${lo.toFixed(1)}-${hi.toFixed(1)}: ${count} pairs`,
    });
    bar.addEventListener("click", () => {
      callbacks.onBrush(selected ? null : [lo, hi]);
    });
    box.append(bar);
  });
  return box;
}

function entropyBars(pair: PairRisk): SVGElement {
  const width = Math.max(pair.shared.length * 14, 14);
  const plot = svg("svg", {
    class: "entropy-bars",
    width,
    height: ENTROPY_BAR_HEIGHT,
  });
  const maxEntropy = Math.max(...pair.shared.map((s) => s.H), 1e-9);
  pair.shared.forEach((attr, i) => {
    const h = (attr.H / maxEntropy) * (ENTROPY_BAR_HEIGHT - 12);
    const lastUsed = pair.last_used_key?.includes(attr.name) ?? false;
    plot.append(
      svg("rect", {
        class:
          (attr.is_privacy ? "entropy-bar privacy" : "entropy-bar") +
          (lastUsed ? " last-used" : ""),
        x: i * 14 + 2,
        y: ENTROPY_BAR_HEIGHT - h,
        width: 10,
        height: Math.max(h, 1),
        fill: lastUsed
          ? LAST_KEY_COLOR
          : attr.is_privacy
            ? PRIVACY_COLOR
            : "#b0b0b0",
        "data-attribute": attr.name,
        "data-entropy": attr.H.toFixed(6),
      }),
    );
  });
  return plot;
}

function riskGradientBar(pair: PairRisk): HTMLElement {
  const width = 120;
  const marker = (pair.normalized_risk / RISK_SCALE_MAX) * width;
  return el("div", { class: "risk-gradient", style: `width: ${width}px` }, [
    el("span", {
      class: "risk-marker",
      style: `left: ${marker.toFixed(1)}px`,
      "data-normalized-risk": pair.normalized_risk.toFixed(4),
    }),
  ]);
}

export function renderRiskView(
  container: HTMLElement,
  pairs: PairRisk[],
  brushRange: [number, number] | null,
  callbacks: RiskCallbacks,
): void {
  clear(container);
  if (!pairs.length) {
    container.append(el("p", { class: "empty-state" }, ["No pairs to assess."]));
    return;
  }
  container.append(riskHistogram(pairs, brushRange, callbacks));
  const visible = applyBrush(pairs, brushRange);
  const list = el("div", { class: "pair-list" });
  for (const pair of visible) {
    const row = el("div", {
      class: "pair-row",
      "data-a": pair.a,
      "data-b": pair.b,
    });
    const pick = el("button", { class: "pair-pick" }, [
      `${pair.a} × ${pair.b}`,
    ]);
    pick.addEventListener("click", () =>
      callbacks.onSelectPair(pair, pair.suggested_key),
    );
    row.append(pick);
    row.append(entropyBars(pair));
    row.append(riskGradientBar(pair));
    row.append(
      el("span", { class: "suggested-key" }, [
        `suggested key: ${pair.suggested_key.join(", ") || "(none)"}`,
      ]),
    );
    if (pair.last_used_key?.length) {
      row.append(
        el(
          "span",
          {
            class: "last-used-key",
            style: `color: ${LAST_KEY_COLOR}`,
          },
          [`last join: ${pair.last_used_key.join(", ")}`],
        ),
      );
    }
    list.append(row);
  }
  container.append(list);
}
