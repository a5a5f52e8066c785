// Single view state driving every panel.  Views are pure functions of
// (API data, ViewState); interactions mutate the state through the
// store and trigger a re-render.

export interface ViewState {
  filters: { tags: string[]; portals: string[]; granularity: string | null };
  dictionaryEditor: string[]; // editor contents, maybe not applied yet
  appliedDictionaryVersion: number;
  selectedGroup: number | null;
  selectedPair: { a: string; b: string } | null;
  selectedKey: string[];
  brushRange: [number, number] | null; // normalized-risk window, 0..5
}

export function initialState(): ViewState {
  return {
    filters: { tags: [], portals: [], granularity: null },
    dictionaryEditor: [],
    appliedDictionaryVersion: 0,
    selectedGroup: null,
    selectedPair: null,
    selectedKey: [],
    brushRange: null,
  };
}

/** Artifacts stamped with an older dictionary must not be shown as-is. */
export function isStale(
  artifactVersion: number,
  state: ViewState,
): boolean {
  return artifactVersion !== state.appliedDictionaryVersion;
}

export class Store {
  private listeners: Array<(state: ViewState) => void> = [];

  constructor(public state: ViewState = initialState()) {}

  update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: (state: ViewState) => void): void {
    this.listeners.push(listener);
  }
}
