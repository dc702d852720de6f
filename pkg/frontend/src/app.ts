/** Explorer controller: entity + date-range input driving the four panels
 * (bubbles, example texts, trendline, topics) over the analytics API.
 *
 * Each panel has a latest-wins loader: a response only renders if no newer
 * request for that panel has started since, so stale answers are dropped.
 * API failures show a banner and leave the current panel content in place.
 */

import { ApiClient } from "./api.js";
import { renderBubbles } from "./bubblesPanel.js";
import { renderTopics, type TopicsView } from "./topicsPanel.js";
import { renderTrend } from "./trendPanel.js";
import { renderTweets } from "./tweetsPanel.js";
import {
  defaultDate,
  initialState,
  selectDate,
  selectEntity,
  setRange,
  toggleTerm,
  type ViewState,
} from "./state.js";
import type { Bubble } from "./types.js";

class PanelLoader {
  private token = 0;

  next(): number {
    return ++this.token;
  }

  isCurrent(token: number): boolean {
    return token === this.token;
  }
}

const PANEL_IDS = [
  "entity-select", "from-input", "to-input", "mode-select", "load-button",
  "error-banner", "bubbles-panel", "tweets-panel", "trend-panel", "topics-panel",
] as const;

export function buildSkeleton(root: HTMLElement): void {
  root.innerHTML = `
    <header class="controls">
      <label>entity <select id="entity-select"></select></label>
      <label>from <input id="from-input" type="date" /></label>
      <label>to <input id="to-input" type="date" /></label>
      <label>topic scope
        <select id="mode-select">
          <option value="entity">entity</option>
          <option value="category">category</option>
          <option value="global">global</option>
        </select>
      </label>
      <button id="load-button">load</button>
    </header>
    <p id="error-banner" class="error-banner" hidden></p>
    <main class="panels">
      <section class="panel"><h2>terms of the day</h2><div id="bubbles-panel"></div></section>
      <section class="panel"><h2>example texts</h2><div id="tweets-panel"></div></section>
      <section class="panel"><h2>records per day</h2><div id="trend-panel"></div></section>
      <section class="panel"><h2>topics</h2><div id="topics-panel"></div></section>
    </main>`;
}

export class ExplorerApp {
  state: ViewState = initialState();
  private displayedBubbles: Bubble[] = [];
  private readonly el: Record<(typeof PANEL_IDS)[number], HTMLElement>;
  private readonly loaders = {
    trend: new PanelLoader(),
    bubbles: new PanelLoader(),
    topics: new PanelLoader(),
    tweets: new PanelLoader(),
  };

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    buildSkeleton(root);
    const found = {} as Record<(typeof PANEL_IDS)[number], HTMLElement>;
    for (const id of PANEL_IDS) {
      const element = root.querySelector<HTMLElement>(`#${id}`);
      if (!element) throw new Error(`missing element #${id}`);
      found[id] = element;
    }
    this.el = found;
    this.el["load-button"].addEventListener("click", () => this.onLoadClick());
    this.el["mode-select"].addEventListener("change", () => {
      this.state.topicMode = (this.el["mode-select"] as HTMLSelectElement)
        .value as ViewState["topicMode"];
      void this.loadTopics();
    });
  }

  /** Populates the entity selector; call once after construction. */
  async start(): Promise<void> {
    const result = await this.api.entities();
    if (!result.ok) {
      this.showError(`failed to load entities: ${result.error.message}`);
      return;
    }
    const select = this.el["entity-select"] as HTMLSelectElement;
    select.replaceChildren(
      ...result.body.map((entity) => {
        const option = document.createElement("option");
        option.value = entity.id;
        option.textContent = `${entity.canonical_name} (${entity.category})`;
        return option;
      }),
    );
  }

  private showError(message: string): void {
    this.el["error-banner"].textContent = message;
    this.el["error-banner"].hidden = false;
  }

  private clearError(): void {
    this.el["error-banner"].hidden = true;
  }

  onLoadClick(): void {
    const entity = (this.el["entity-select"] as HTMLSelectElement).value;
    const from = (this.el["from-input"] as HTMLInputElement).value;
    const to = (this.el["to-input"] as HTMLInputElement).value;
    if (!entity || !from || !to || from > to) {
      this.showError("pick an entity and a valid date range");
      return;
    }
    this.state = setRange(selectEntity(this.state, entity), from, to);
    void this.loadTrend();
  }

  async loadTrend(): Promise<void> {
    const entity = this.state.selectedEntity;
    if (!entity) return;
    const token = this.loaders.trend.next();
    const result = await this.api.trend(
      entity, this.state.dateRange.from, this.state.dateRange.to,
    );
    if (!this.loaders.trend.isCurrent(token)) return;
    if (!result.ok) {
      this.showError(`trend: ${result.error.message}`);
      return;
    }
    this.clearError();
    if (this.state.selectedDate === null) {
      this.state = selectDate(
        this.state, defaultDate(result.body, this.state.dateRange.to),
      );
    }
    renderTrend(this.el["trend-panel"], result.body, this.state.selectedDate, {
      onDateClick: (date) => this.onDateClick(date),
    });
    void this.loadDay();
  }

  onDateClick(date: string): void {
    const next = selectDate(this.state, date);
    if (next === this.state) return;
    this.state = next;
    // refresh the selection marker without refetching the series
    const panel = this.el["trend-panel"];
    for (const dot of panel.querySelectorAll(".trend-point")) {
      const isSelected = dot.getAttribute("data-date") === date;
      dot.classList.toggle("selected", isSelected);
      dot.setAttribute("r", isSelected ? "6" : "4");
    }
    void this.loadDay();
  }

  /** Reloads the three per-day panels for the selected (entity, date). */
  async loadDay(): Promise<void> {
    await Promise.all([this.loadBubbles(), this.loadTopics(), this.loadTweets()]);
  }

  async loadBubbles(): Promise<void> {
    const { selectedEntity, selectedDate } = this.state;
    if (!selectedEntity || !selectedDate) return;
    const token = this.loaders.bubbles.next();
    const result = await this.api.bubbles(
      selectedEntity, selectedDate, this.state.bubbleLimit,
    );
    if (!this.loaders.bubbles.isCurrent(token)) return;
    if (!result.ok) {
      this.showError(`bubbles: ${result.error.message}`);
      return;
    }
    this.displayedBubbles = result.body;
    renderBubbles(this.el["bubbles-panel"], result.body, this.state.selectedTerm, {
      onTermClick: (term) => this.onBubbleClick(term),
    });
  }

  onBubbleClick(term: string): void {
    const previousTerm = this.state.selectedTerm;
    const next = toggleTerm(
      this.state, term, this.displayedBubbles.map((b) => b.term),
    );
    if (next === this.state) return;
    this.state = next;
    this.markSelectedBubble();
    void this.loadTweets().then((loaded) => {
      if (!loaded && this.state.selectedTerm === next.selectedTerm) {
        // failed reload: banner is up, restore the previous selection
        this.state = { ...this.state, selectedTerm: previousTerm };
        this.markSelectedBubble();
      }
    });
  }

  private markSelectedBubble(): void {
    for (const group of this.el["bubbles-panel"].querySelectorAll(".bubble")) {
      group.classList.toggle(
        "selected",
        group.getAttribute("data-term") === this.state.selectedTerm,
      );
    }
  }

  async loadTopics(): Promise<void> {
    const { selectedEntity, selectedDate } = this.state;
    if (!selectedEntity || !selectedDate) return;
    const token = this.loaders.topics.next();
    const result = await this.api.topics(
      selectedEntity, selectedDate, this.state.topicMode,
    );
    if (!this.loaders.topics.isCurrent(token)) return;
    let view: TopicsView;
    if (result.ok) {
      view = { kind: "topics", topics: result.body };
    } else if (result.status === 409) {
      view = { kind: "no-model" };
    } else {
      this.showError(`topics: ${result.error.message}`);
      return;
    }
    renderTopics(this.el["topics-panel"], view);
  }

  async loadTweets(): Promise<boolean> {
    const { selectedEntity, selectedDate, selectedTerm } = this.state;
    if (!selectedEntity || !selectedDate) return false;
    const token = this.loaders.tweets.next();
    const result = await this.api.tweets(
      selectedEntity, selectedDate, selectedTerm, this.state.tweetLimit,
    );
    if (!this.loaders.tweets.isCurrent(token)) return true; // superseded
    if (!result.ok) {
      this.showError(`texts: ${result.error.message}`);
      return false;
    }
    renderTweets(this.el["tweets-panel"], result.body, selectedTerm);
    return true;
  }
}

export function mountExplorer(root: HTMLElement, api = new ApiClient()): ExplorerApp {
  const app = new ExplorerApp(root, api);
  void app.start();
  return app;
}

// self-mount in the browser bundle; tests import the pieces instead
if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) mountExplorer(root);
}
