// Projection view: one small-multiple panel per joinable group, most
// vulnerable first.  Members of the focused group are red, everything
// else grey; coincident datasets collapse into one marker with the
// count inscribed.  Word cloud and frequency bars explain the group
// signature; clicking a word feeds the dictionary editor.

import { clear, el, svg } from "../dom";
import type { GroupingResult, JoinableGroup, Marker } from "../types";

export interface ProjectionCallbacks {
  onWordClick(attribute: string): void;
  onGroupSelect(group: JoinableGroup): void;
}

const PLOT_SIZE = 160;
const PLOT_PAD = 12;
const DOT_RADIUS = 4;
const MARKER_RADIUS = 9;

interface Extent {
  minX: number;
  maxX: number;
  minY: number;
  maxY: number;
}

function extentOf(result: GroupingResult): Extent {
  const xs: number[] = [];
  const ys: number[] = [];
  for (const group of result.groups) {
    for (const [x, y] of Object.values(group.coords)) {
      xs.push(x);
      ys.push(y);
    }
  }
  for (const [x, y] of Object.values(result.noise)) {
    xs.push(x);
    ys.push(y);
  }
  if (!xs.length) return { minX: 0, maxX: 1, minY: 0, maxY: 1 };
  return {
    minX: Math.min(...xs),
    maxX: Math.max(...xs),
    minY: Math.min(...ys),
    maxY: Math.max(...ys),
  };
}

function toPlot(value: number, lo: number, hi: number): number {
  const span = hi - lo || 1;
  return PLOT_PAD + ((value - lo) / span) * (PLOT_SIZE - 2 * PLOT_PAD);
}

function renderMarkers(
  plot: SVGElement,
  markers: Marker[],
  extent: Extent,
  cls: string,
): void {
  for (const marker of markers) {
    const cx = toPlot(marker.x, extent.minX, extent.maxX);
    const cy = PLOT_SIZE - toPlot(marker.y, extent.minY, extent.maxY);
    const overlapping = marker.count > 1;
    plot.append(
      svg("circle", {
        class: `dot ${cls}`,
        cx,
        cy,
        r: overlapping ? MARKER_RADIUS : DOT_RADIUS,
        "data-count": marker.count,
        "data-members": marker.members.join(","),
      }),
    );
    if (overlapping) {
      plot.append(
        svg(
          "text",
          {
            class: "marker-count",
            x: cx,
            y: cy,
            "text-anchor": "middle",
            "dominant-baseline": "central",
            "font-size": 9,
          },
          [String(marker.count)],
        ),
      );
    }
  }
}

function wordCloud(
  group: JoinableGroup,
  callbacks: ProjectionCallbacks,
): HTMLElement {
  const cloud = el("div", { class: "word-cloud" });
  const counts = Object.values(group.attribute_frequencies);
  const top = counts.length ? Math.max(...counts) : 1;
  for (const [attr, count] of Object.entries(group.attribute_frequencies)) {
    const word = el(
      "span",
      {
        class: "cloud-word",
        "data-attribute": attr,
        style: `font-size: ${10 + Math.round((count / top) * 12)}px`,
      },
      [attr],
    );
    word.addEventListener("click", () => callbacks.onWordClick(attr));
    cloud.append(word);
  }
  return cloud;
}

/** Frequency bars with every present privacy attribute listed first. */
export function frequencyBarOrder(
  group: JoinableGroup,
): Array<{ attribute: string; count: number; privacy: boolean }> {
  const privacy = Object.entries(group.privacy_frequencies)
    .sort((x, y) => y[1] - x[1] || x[0].localeCompare(y[0]))
    .map(([attribute, count]) => ({ attribute, count, privacy: true }));
  const privacyNames = new Set(privacy.map((p) => p.attribute));
  const rest = Object.entries(group.attribute_frequencies)
    .filter(([attribute]) => !privacyNames.has(attribute))
    .sort((x, y) => y[1] - x[1] || x[0].localeCompare(y[0]))
    .map(([attribute, count]) => ({ attribute, count, privacy: false }));
  return [...privacy, ...rest];
}

function frequencyBars(group: JoinableGroup): HTMLElement {
  const box = el("div", { class: "frequency-bars" });
  const rows = frequencyBarOrder(group);
  const top = rows.length ? Math.max(...rows.map((r) => r.count)) : 1;
  for (const row of rows) {
    box.append(
      el("div", { class: "bar-row", "data-attribute": row.attribute }, [
        el("span", { class: "bar-label" }, [row.attribute]),
        el("span", {
          class: row.privacy ? "bar privacy" : "bar",
          style: `width: ${(row.count / top) * 120}px`,
        }),
        el("span", { class: "bar-count" }, [String(row.count)]),
      ]),
    );
  }
  return box;
}

export function renderProjectionView(
  container: HTMLElement,
  result: GroupingResult | null,
  callbacks: ProjectionCallbacks,
): void {
  clear(container);
  if (!result || !result.groups.length) {
    container.append(
      el("p", { class: "empty-state" }, [
        "No joinable groups for the current selection.",
      ]),
    );
    return;
  }
  const extent = extentOf(result);
  for (const group of result.groups) {
    const panel = el("section", {
      class: "group-panel",
      "data-group-id": group.id,
      "data-rank": group.rank,
    });
    panel.append(
      el("h3", {}, [
        `Group ${group.rank} (${group.members.length} datasets)`,
      ]),
    );
    const plot = svg("svg", {
      class: "projection-plot",
      width: PLOT_SIZE,
      height: PLOT_SIZE,
      viewBox: `0 0 ${PLOT_SIZE} ${PLOT_SIZE}`,
    });
    // grey context first: other groups and noise
    for (const other of result.groups) {
      if (other.id !== group.id) {
        renderMarkers(plot, other.markers, extent, "other");
      }
    }
    const noiseMarkers: Marker[] = Object.entries(result.noise).map(
      ([id, [x, y]]) => ({ x, y, count: 1, members: [id] }),
    );
    renderMarkers(plot, noiseMarkers, extent, "other");
    renderMarkers(plot, group.markers, extent, "member");
    plot.addEventListener("click", () => callbacks.onGroupSelect(group));
    panel.append(plot);
    panel.append(wordCloud(group, callbacks));
    panel.append(frequencyBars(group));
    container.append(panel);
  }
}
