// Vulnerability view: per privacy attribute, the distribution of record
// points as bars; bins with too few records light up red.

import { clear, el } from "../dom";
import type { RecordPoint, VulnerabilityProfile } from "../types";

export const VULNERABLE_THRESHOLD = 4;
export const VULNERABLE_COLOR = "#d62728";

export function barWidth(count: number, maxCount: number): number {
  const cap = 160;
  return Math.max(4, (count / Math.max(maxCount, 1)) * cap);
}

function attributeBlock(
  attribute: string,
  points: RecordPoint[],
  threshold: number,
): HTMLElement {
  const block = el("div", { class: "attribute-block", "data-attribute": attribute });
  block.append(el("h4", {}, [attribute]));
  const maxCount = Math.max(...points.map((p) => p.c));
  for (const point of points) {
    const vulnerable = point.c <= threshold;
    block.append(
      el("div", { class: "bar-row", "data-value": point.v }, [
        el("span", { class: "bar-label" }, [point.v]),
        el("span", {
          class: vulnerable ? "bar vulnerable" : "bar",
          style:
            `width: ${barWidth(point.c, maxCount)}px;` +
            (vulnerable ? ` background: ${VULNERABLE_COLOR};` : ""),
          "data-count": point.c,
        }),
        el("span", { class: "bar-count" }, [String(point.c)]),
      ]),
    );
  }
  return block;
}

export function renderVulnerabilityView(
  container: HTMLElement,
  profile: VulnerabilityProfile | null,
  threshold: number = VULNERABLE_THRESHOLD,
): void {
  clear(container);
  if (!profile) {
    container.append(
      el("p", { class: "empty-state" }, ["Select a dataset to profile."]),
    );
    return;
  }
  container.append(
    el("h3", {}, [
      `${profile.dataset_id}: ${profile.vulnerable.length} vulnerable record points`,
    ]),
  );
  const byAttribute = new Map<string, RecordPoint[]>();
  for (const point of profile.record_points) {
    const bucket = byAttribute.get(point.a) ?? [];
    bucket.push(point);
    byAttribute.set(point.a, bucket);
  }
  for (const [attribute, points] of byAttribute) {
    container.append(attributeBlock(attribute, points, threshold));
  }
}
