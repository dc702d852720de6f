/** Explorer view state and its allowed transitions. */

export interface ViewState {
  selectedEntity: string | null;
  dateRange: { from: string; to: string };
  selectedDate: string | null; // always within dateRange
  selectedTerm: string | null; // always one of the displayed bubble terms
  bubbleLimit: number;
  tweetLimit: number;
  topicMode: "global" | "category" | "entity";
}

export function initialState(): ViewState {
  return {
    selectedEntity: null,
    dateRange: { from: "", to: "" },
    selectedDate: null,
    selectedTerm: null,
    bubbleLimit: 30,
    tweetLimit: 20,
    topicMode: "entity",
  };
}

export function withinRange(state: ViewState, date: string): boolean {
  return state.dateRange.from <= date && date <= state.dateRange.to;
}

export function selectEntity(state: ViewState, entityId: string): ViewState {
  return { ...state, selectedEntity: entityId, selectedDate: null, selectedTerm: null };
}

export function setRange(state: ViewState, from: string, to: string): ViewState {
  const next = { ...state, dateRange: { from, to }, selectedTerm: null };
  if (next.selectedDate !== null && !withinRange(next, next.selectedDate)) {
    next.selectedDate = null;
  }
  return next;
}

export function selectDate(state: ViewState, date: string): ViewState {
  if (!withinRange(state, date)) return state;
  return { ...state, selectedDate: date, selectedTerm: null };
}

/** Picks the most recent day with data, falling back to the range end. */
export function defaultDate(
  points: { date: string; count: number }[],
  rangeTo: string,
): string {
  for (let i = points.length - 1; i >= 0; i--) {
    const point = points[i]!;
    if (point.count > 0) return point.date;
  }
  return rangeTo;
}

/** Click on a bubble: select its term; clicking the same term clears it. */
export function toggleTerm(
  state: ViewState,
  term: string,
  displayedTerms: string[],
): ViewState {
  if (state.selectedTerm === term) {
    return { ...state, selectedTerm: null };
  }
  if (!displayedTerms.includes(term)) return state;
  return { ...state, selectedTerm: term };
}
