// Projection view contract: overlap markers, word-cloud interaction,
// privacy-first frequency bars, and the empty state.

import { describe, expect, it, vi } from "vitest";

import {
  frequencyBarOrder,
  renderProjectionView,
} from "../src/views/projection";
import type { GroupingResult } from "../src/types";
import { loadFixture, panel } from "./helpers";

const grouping = loadFixture<GroupingResult>("grouping_overlap.json");

const noop = { onWordClick: () => {}, onGroupSelect: () => {} };

describe("projection view", () => {
  it("renders the 7-overlap marker with the count inscribed", () => {
    const container = panel();
    renderProjectionView(container, grouping, noop);
    const marker = container.querySelector('circle[data-count="7"]');
    expect(marker).not.toBeNull();
    const labels = [...container.querySelectorAll("text.marker-count")].map(
      (t) => t.textContent,
    );
    expect(labels).toContain("7");
  });

  it("marks the focused group red and the rest grey", () => {
    const container = panel();
    renderProjectionView(container, grouping, noop);
    const first = container.querySelector("section.group-panel");
    expect(first).not.toBeNull();
    expect(first!.querySelectorAll("circle.dot.member").length).toBeGreaterThan(0);
    expect(first!.querySelectorAll("circle.dot.other").length).toBeGreaterThan(0);
  });

  it("orders frequency bars with privacy attributes first", () => {
    const withPrivacy = grouping.groups.find(
      (g) => Object.keys(g.privacy_frequencies).length > 0,
    )!;
    const order = frequencyBarOrder(withPrivacy);
    const privacyCount = Object.keys(withPrivacy.privacy_frequencies).length;
    expect(order.slice(0, privacyCount).every((r) => r.privacy)).toBe(true);
    expect(order.slice(privacyCount).every((r) => !r.privacy)).toBe(true);
  });

  it("feeds clicked word-cloud attributes to the dictionary editor", () => {
    const container = panel();
    const onWordClick = vi.fn();
    renderProjectionView(container, grouping, { ...noop, onWordClick });
    const word = container.querySelector(".cloud-word") as HTMLElement;
    expect(word).not.toBeNull();
    word.click();
    expect(onWordClick).toHaveBeenCalledWith(word.dataset.attribute);
  });

  it("shows an empty state instead of crashing on an empty grouping", () => {
    const container = panel();
    renderProjectionView(
      container,
      { weight_chosen: 8, quality: null, dictionary_version: 1, groups: [],
        noise: {} },
      noop,
    );
    expect(container.querySelector(".empty-state")).not.toBeNull();
  });
});
