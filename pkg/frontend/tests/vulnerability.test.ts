// Vulnerability view contract: low-count bars carry the red style.

import { describe, expect, it } from "vitest";

import {
  renderVulnerabilityView,
  VULNERABLE_COLOR,
} from "../src/views/vulnerability";
import type { VulnerabilityProfile } from "../src/types";
import { loadFixture, panel } from "./helpers";

const profile = loadFixture<VulnerabilityProfile>("vulnerability.json");

describe("vulnerability view", () => {
  it("paints every bar with count <= 4 red, and only those", () => {
    const container = panel();
    renderVulnerabilityView(container, profile);
    const bars = [...container.querySelectorAll(".bar")] as HTMLElement[];
    expect(bars.length).toBe(profile.record_points.length);
    for (const bar of bars) {
      const count = Number(bar.dataset.count);
      const red = bar.classList.contains("vulnerable");
      expect(red).toBe(count <= 4);
      if (red) {
        expect(bar.getAttribute("style")).toContain(VULNERABLE_COLOR);
      }
    }
    // the fixture exercises both sides of the threshold
    const flags = bars.map((b) => b.classList.contains("vulnerable"));
    expect(flags).toContain(true);
    expect(flags).toContain(false);
  });

  it("groups bars under their attribute", () => {
    const container = panel();
    renderVulnerabilityView(container, profile);
    const attributes = new Set(profile.record_points.map((p) => p.a));
    expect(container.querySelectorAll(".attribute-block").length).toBe(
      attributes.size,
    );
  });

  it("renders a prompt when no dataset is selected", () => {
    const container = panel();
    renderVulnerabilityView(container, null);
    expect(container.querySelector(".empty-state")).not.toBeNull();
  });
});
