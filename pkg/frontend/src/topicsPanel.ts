/** Topic panel: each topic shown as its identifying word set plus weight. */

import type { TopicEntry } from "./types.js";

export type TopicsView =
  | { kind: "topics"; topics: TopicEntry[] }
  | { kind: "no-data" } // 200 with an empty list: no document that day
  | { kind: "no-model" }; // 409: the scope has no fitted model

export function renderTopics(container: HTMLElement, view: TopicsView): void {
  container.replaceChildren();
  if (view.kind === "no-model") {
    const message = document.createElement("p");
    message.className = "empty-state no-model";
    message.textContent = "no topic model built for this scope";
    container.append(message);
    return;
  }
  if (view.kind === "no-data" || view.topics.length === 0) {
    const message = document.createElement("p");
    message.className = "empty-state no-data";
    message.textContent = "no topics for this day";
    container.append(message);
    return;
  }

  const list = document.createElement("ol");
  list.className = "topic-list";
  for (const topic of view.topics) {
    const row = document.createElement("li");
    row.className = "topic-row";
    row.dataset.topicId = String(topic.topic_id);

    const weight = document.createElement("span");
    weight.className = "topic-weight";
    weight.textContent = topic.weight.toFixed(2);

    const words = document.createElement("span");
    words.className = "topic-words";
    // API order is already weight-descending within the topic
    words.textContent = topic.topic_terms.map((t) => t.term).join(" ");

    row.append(weight, words);
    list.append(row);
  }
  container.append(list);
}
