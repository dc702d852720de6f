/** Example texts with sentiment-colored term highlights from API spans. */

import { polarityColor } from "./colors.js";
import { segmentText } from "./highlight.js";
import type { Tweet } from "./types.js";

export function renderTweets(
  container: HTMLElement,
  tweets: Tweet[],
  filterTerm: string | null,
): void {
  container.replaceChildren();

  if (filterTerm) {
    const note = document.createElement("p");
    note.className = "filter-note";
    note.textContent = `showing texts containing "${filterTerm}" (click the bubble again to clear)`;
    container.append(note);
  }
  if (tweets.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = filterTerm ? "no texts contain this term" : "no texts for this day";
    container.append(empty);
    return;
  }

  const list = document.createElement("ul");
  list.className = "tweet-list";
  for (const tweet of tweets) {
    const item = document.createElement("li");
    item.className = "tweet";
    item.dataset.recordId = tweet.record_id;

    const body = document.createElement("p");
    body.className = "tweet-text";
    for (const segment of segmentText(tweet.text, tweet.spans)) {
      if (segment.polarity === null) {
        body.append(document.createTextNode(segment.text));
      } else {
        const mark = document.createElement("mark");
        mark.textContent = segment.text;
        mark.style.color = polarityColor(segment.polarity);
        mark.dataset.polarity = String(segment.polarity);
        body.append(mark);
      }
    }

    const meta = document.createElement("time");
    meta.className = "tweet-time";
    meta.dateTime = tweet.timestamp;
    meta.textContent = tweet.timestamp.replace("T", " ").replace("+00:00", " UTC");

    item.append(body, meta);
    list.append(item);
  }
  container.append(list);
}
