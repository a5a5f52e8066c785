// Application wiring: one ApiClient, one Store, four coordinated views.
// Defender decisions (dictionary edits, group picks, join keys, feature
// suggestions) flow back into engine recomputation through the API; the
// browser itself never computes a risk number.

import { ApiClient } from "./api";
import { clear, el } from "./dom";
import { isStale, Store } from "./state";
import type {
  FeatureSuggestion,
  GroupingResult,
  JoinableGroup,
  JoinResponse,
  PairRisk,
  Ribbon,
} from "./types";
import { renderDisclosureView, renderRecordDetail } from "./views/disclosure";
import { renderProjectionView } from "./views/projection";
import { renderRiskView } from "./views/risk";
import { renderVulnerabilityView } from "./views/vulnerability";

export interface AppPanels {
  filters: HTMLElement;
  projection: HTMLElement;
  vulnerability: HTMLElement;
  risk: HTMLElement;
  disclosure: HTMLElement;
}

export class App {
  readonly store = new Store();
  grouping: GroupingResult | null = null;
  pairs: PairRisk[] = [];
  lastJoin: JoinResponse | null = null;

  constructor(
    readonly api: ApiClient,
    readonly panels: AppPanels,
  ) {}

  async start(): Promise<void> {
    const dictionary = await this.api.getDictionary();
    this.store.update({
      dictionaryEditor: dictionary.attributes,
      appliedDictionaryVersion: dictionary.version,
    });
    this.renderDictionaryEditor();
    await this.recomputeGroups();
  }

  renderDictionaryEditor(): void {
    const box = this.panels.filters;
    clear(box);
    box.append(el("h3", {}, ["Privacy attributes"]));
    const editor = el("textarea", {
      class: "dictionary-editor",
      rows: 4,
    }) as HTMLTextAreaElement;
    editor.value = this.store.state.dictionaryEditor.join(", ");
    editor.addEventListener("change", () => {
      this.store.update({
        dictionaryEditor: editor.value
          .split(",")
          .map((s) => s.trim())
          .filter(Boolean),
      });
    });
    const apply = el("button", { class: "apply-dictionary" }, [
      "Apply & regroup",
    ]);
    apply.addEventListener("click", () => {
      void this.applyDictionary();
    });
    box.append(editor, apply);
  }

  /** Dictionary edits always trigger a fresh grouping computation. */
  async applyDictionary(): Promise<void> {
    this.api.cancelActive();
    const updated = await this.api.putDictionary(
      this.store.state.dictionaryEditor,
    );
    this.store.update({ appliedDictionaryVersion: updated.version });
    await this.recomputeGroups();
  }

  async recomputeGroups(): Promise<void> {
    const created = await this.api.postGrouping({});
    const job = await this.api.pollGrouping(created.id);
    if (job.status !== "done" || !job.result) {
      this.grouping = null;
    } else if (isStale(job.result.dictionary_version, this.store.state)) {
      // never show artifacts computed against an older dictionary
      this.grouping = null;
      this.panels.projection.append(
        el("p", { class: "stale-prompt" }, [
          "Privacy attributes changed: recompute the grouping.",
        ]),
      );
      return;
    } else {
      this.grouping = job.result;
    }
    this.renderAll();
  }

  renderAll(): void {
    renderProjectionView(this.panels.projection, this.grouping, {
      onWordClick: (attribute) => this.addToDictionaryEditor(attribute),
      onGroupSelect: (group) => {
        void this.selectGroup(group);
      },
    });
    renderRiskView(
      this.panels.risk,
      this.pairs,
      this.store.state.brushRange,
      {
        onSelectPair: (pair, key) => {
          void this.joinPair(pair, key);
        },
        onBrush: (range) => {
          this.store.update({ brushRange: range });
          this.renderAll();
        },
      },
    );
    renderDisclosureView(this.panels.disclosure, this.lastJoin, {
      onRibbonClick: (ribbon, column) => {
        void this.showRibbonDetail(ribbon, column);
      },
      onSuggestionClick: (suggestion) => {
        void this.extendKey(suggestion);
      },
    });
  }

  addToDictionaryEditor(attribute: string): void {
    const current = this.store.state.dictionaryEditor;
    if (!current.includes(attribute)) {
      this.store.update({ dictionaryEditor: [...current, attribute] });
      this.renderDictionaryEditor();
    }
  }

  async selectGroup(group: JoinableGroup): Promise<void> {
    this.store.update({ selectedGroup: group.id, brushRange: null });
    const response = await this.api.postPairs(group.members);
    this.pairs = response.pairs;
    const first = group.members[0];
    renderVulnerabilityView(
      this.panels.vulnerability,
      first ? await this.api.getVulnerability(first).catch(() => null) : null,
    );
    this.renderAll();
  }

  async joinPair(pair: PairRisk, key: string[]): Promise<void> {
    this.store.update({
      selectedPair: { a: pair.a, b: pair.b },
      selectedKey: key,
    });
    this.lastJoin = await this.api.postJoin(pair.a, pair.b, key);
    this.renderAll();
  }

  /** A ribbon click opens the record detail for its first match. */
  async showRibbonDetail(ribbon: Ribbon, _column: number): Promise<void> {
    if (!this.lastJoin || !ribbon.match_indices.length) return;
    const detail = await this.api.getMatchDetail(
      this.lastJoin.join_id,
      ribbon.match_indices[0],
    );
    const slot = this.panels.disclosure.querySelector(".record-detail");
    if (slot) renderRecordDetail(slot as HTMLElement, detail);
  }

  async extendKey(suggestion: FeatureSuggestion): Promise<void> {
    const pair = this.store.state.selectedPair;
    if (!pair || !this.lastJoin) return;
    const key = this.lastJoin.outcome.key;
    if (key.includes(suggestion.attribute)) return;
    await this.joinPair(
      this.pairs.find((p) => p.a === pair.a && p.b === pair.b) ?? {
        ...emptyPair(pair.a, pair.b),
      },
      [...key, suggestion.attribute],
    );
  }
}

function emptyPair(a: string, b: string): PairRisk {
  return {
    a,
    b,
    shared: [],
    p: 0,
    c: 0,
    risk: 0,
    normalized_risk: 0,
    suggested_key: [],
    last_used_key: null,
  };
}

export function mount(root: HTMLElement, baseUrl = ""): App {
  const panels: AppPanels = {
    filters: el("aside", { class: "panel filters" }),
    projection: el("section", { class: "panel projection" }),
    vulnerability: el("section", { class: "panel vulnerability" }),
    risk: el("section", { class: "panel risk" }),
    disclosure: el("section", { class: "panel disclosure" }),
  };
  clear(root);
  root.append(
    panels.filters,
    panels.projection,
    panels.vulnerability,
    panels.risk,
    panels.disclosure,
  );
  return new App(new ApiClient(baseUrl), panels);
}
