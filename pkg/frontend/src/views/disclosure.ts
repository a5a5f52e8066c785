// Disclosure evaluation view: a modified parallel-sets rendering of the
// matched records.  Each key attribute is a stacked bar (a histogram for
// binned numerics), adjacent attributes are connected by ribbons whose
// pixel width is proportional to the number of matching records, and
// clicking a ribbon fetches the underlying record detail.  Feature
// suggestions flank the diagram; clicking one re-joins with the key
// extended by that attribute.

import { clear, el, svg } from "../dom";
import type {
  FeatureSuggestion,
  JoinResponse,
  MatchDetail,
  Ribbon,
} from "../types";

export const VIEW_HEIGHT = 240; // usable pixel height of one stack column
const COLUMN_WIDTH = 120;
const STACK_WIDTH = 26;
const STACK_GAP = 2;

export interface DisclosureCallbacks {
  onRibbonClick(ribbon: Ribbon, columnIndex: number): void;
  onSuggestionClick(suggestion: FeatureSuggestion): void;
}

/** Pixel height of `count` matches out of `total` in one column. */
export function ribbonWidth(count: number, total: number): number {
  if (total <= 0) return 0;
  return (count / total) * VIEW_HEIGHT;
}

interface Segment {
  label: string;
  y0: number;
  y1: number;
}

function stackSegments(
  entries: { label: string; count: number }[],
  total: number,
): Map<string, Segment> {
  const segments = new Map<string, Segment>();
  let y = 0;
  for (const entry of entries) {
    const h = ribbonWidth(entry.count, total);
    segments.set(entry.label, { label: entry.label, y0: y, y1: y + h });
    y += h;
  }
  return segments;
}

export function renderDisclosureView(
  container: HTMLElement,
  response: JoinResponse | null,
  callbacks: DisclosureCallbacks,
): void {
  clear(container);
  if (!response) {
    container.append(
      el("p", { class: "empty-state" }, ["Join a pair to evaluate matches."]),
    );
    return;
  }
  const { outcome, suggestions } = response;
  container.append(
    el("h3", {}, [
      `${outcome.a} ⋈ ${outcome.b} on [${outcome.key.join(", ")}]: ` +
        `${outcome.match_count} matching records ` +
        `(${outcome.distinct_key_count} distinct key combinations)`,
    ]),
  );
  if (!outcome.match_count) {
    container.append(
      el("p", { class: "empty-state" }, [
        "No matching records: this pair can be joined safely under this key.",
      ]),
    );
    return;
  }

  const layout = el("div", { class: "disclosure-layout" });
  layout.append(suggestionPanel("from_a", suggestions.from_a, callbacks));
  layout.append(parallelSets(response, callbacks));
  layout.append(suggestionPanel("from_b", suggestions.from_b, callbacks));
  container.append(layout);
  container.append(el("div", { class: "record-detail" }));
}

function parallelSets(
  response: JoinResponse,
  callbacks: DisclosureCallbacks,
): SVGElement {
  const { outcome } = response;
  const width = outcome.key.length * COLUMN_WIDTH;
  const plot = svg("svg", {
    class: "parallel-sets",
    width,
    height: VIEW_HEIGHT + 40,
    viewBox: `0 0 ${width} ${VIEW_HEIGHT + 40}`,
  });

  const columns = outcome.key.map((attr) =>
    stackSegments(outcome.stacks[attr] ?? [], outcome.match_count),
  );

  outcome.key.forEach((attr, i) => {
    const x = i * COLUMN_WIDTH;
    plot.append(
      svg("text", { x: x + STACK_WIDTH / 2, y: 14, "font-size": 11,
                    "text-anchor": "middle" }, [attr]),
    );
    for (const segment of columns[i].values()) {
      plot.append(
        svg("rect", {
          class: "stack-segment",
          x,
          y: 20 + segment.y0 + STACK_GAP / 2,
          width: STACK_WIDTH,
          height: Math.max(segment.y1 - segment.y0 - STACK_GAP, 1),
          "data-attribute": attr,
          "data-label": segment.label,
        }),
      );
      plot.append(
        svg("text", {
          x: x + STACK_WIDTH + 4,
          y: 20 + (segment.y0 + segment.y1) / 2,
          "font-size": 9,
          "dominant-baseline": "central",
          class: "stack-label",
        }, [segment.label]),
      );
    }
  });

  // ribbons between adjacent key attributes; width ∝ match count
  outcome.ribbons.forEach((ribbons, i) => {
    const xLeft = i * COLUMN_WIDTH + STACK_WIDTH;
    const xRight = (i + 1) * COLUMN_WIDTH;
    const fromOffsets = new Map<string, number>();
    const toOffsets = new Map<string, number>();
    for (const ribbon of ribbons) {
      const h = ribbonWidth(ribbon.count, outcome.match_count);
      const from = columns[i].get(ribbon.from);
      const to = columns[i + 1].get(ribbon.to);
      if (!from || !to) continue;
      const fromOffset = fromOffsets.get(ribbon.from) ?? 0;
      const toOffset = toOffsets.get(ribbon.to) ?? 0;
      const y0 = 20 + from.y0 + fromOffset + h / 2;
      const y1 = 20 + to.y0 + toOffset + h / 2;
      fromOffsets.set(ribbon.from, fromOffset + h);
      toOffsets.set(ribbon.to, toOffset + h);
      const line = svg("path", {
        class: "ribbon",
        d: `M ${xLeft} ${y0} C ${(xLeft + xRight) / 2} ${y0}, ` +
          `${(xLeft + xRight) / 2} ${y1}, ${xRight} ${y1}`,
        fill: "none",
        "stroke-width": h,
        "data-count": ribbon.count,
        "data-from": ribbon.from,
        "data-to": ribbon.to,
        "data-match-indices": ribbon.match_indices.join(","),
      });
      line.addEventListener("click", () =>
        callbacks.onRibbonClick(ribbon, i),
      );
      plot.append(line);
    }
  });
  return plot;
}

function suggestionPanel(
  side: "from_a" | "from_b",
  items: FeatureSuggestion[],
  callbacks: DisclosureCallbacks,
): HTMLElement {
  const panel = el("div", { class: `suggestions ${side}` });
  panel.append(
    el("h4", {}, [side === "from_a" ? "Suggested from A" : "Suggested from B"]),
  );
  if (!items.length) {
    panel.append(el("p", { class: "empty-state" }, ["No suggestions."]));
    return panel;
  }
  for (const suggestion of items) {
    const entry = el("div", {
      class: "suggestion",
      "data-attribute": suggestion.attribute,
    });
    const head = el("button", { class: "suggestion-pick" }, [
      `${suggestion.attribute} (nmi ${suggestion.nmi.toFixed(3)})`,
    ]);
    head.addEventListener("click", () =>
      callbacks.onSuggestionClick(suggestion),
    );
    entry.append(head);
    const maxCount = Math.max(...suggestion.distribution.map((d) => d.count), 1);
    for (const bucket of suggestion.distribution) {
      entry.append(
        el("div", { class: "bar-row" }, [
          el("span", { class: "bar-label" }, [bucket.label]),
          el("span", {
            class: "bar",
            style: `width: ${(bucket.count / maxCount) * 60}px`,
          }),
          el("span", { class: "bar-count" }, [String(bucket.count)]),
        ]),
      );
    }
    panel.append(entry);
  }
  return panel;
}

export function renderRecordDetail(
  container: HTMLElement,
  detail: MatchDetail,
): void {
  const popup = el("div", { class: "record-popup" });
  popup.append(el("h4", {}, [`Match on [${detail.key_values.join(", ")}]`]));
  const table = el("table", { class: "record-table" });
  const attributes = new Set([
    ...Object.keys(detail.row_a),
    ...Object.keys(detail.row_b),
  ]);
  table.append(
    el("tr", {}, [
      el("th", {}, ["attribute"]),
      el("th", {}, ["dataset A"]),
      el("th", {}, ["dataset B"]),
    ]),
  );
  for (const attr of attributes) {
    table.append(
      el("tr", {}, [
        el("td", {}, [attr]),
        el("td", {}, [String(detail.row_a[attr] ?? "")]),
        el("td", {}, [String(detail.row_b[attr] ?? "")]),
      ]),
    );
  }
  popup.append(table);
  clear(container);
  container.append(popup);
}
