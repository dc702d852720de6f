/** The bubble panel: one circle per term, sized by scale, colored by polarity. */

import { polarityColor } from "./colors.js";
import { layoutBounds, packBubbles } from "./layout.js";
import type { Bubble } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface BubbleHandlers {
  onTermClick: (term: string) => void;
}

export function renderBubbles(
  container: HTMLElement,
  bubbles: Bubble[],
  selectedTerm: string | null,
  handlers: BubbleHandlers,
): void {
  container.replaceChildren();
  if (bubbles.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "no data for this day";
    container.append(empty);
    return;
  }

  const placed = packBubbles(bubbles);
  const bounds = layoutBounds(placed);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute(
    "viewBox",
    `${bounds.minX} ${bounds.minY} ${bounds.width} ${bounds.height}`,
  );
  svg.setAttribute("class", "bubble-chart");

  for (const { bubble, x, y, r } of placed) {
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "bubble");
    group.setAttribute("data-term", bubble.term);
    if (bubble.term === selectedTerm) group.classList.add("selected");

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(x));
    circle.setAttribute("cy", String(y));
    circle.setAttribute("r", String(r));
    circle.setAttribute("fill", polarityColor(bubble.polarity));

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(x));
    label.setAttribute("y", String(y));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("dominant-baseline", "central");
    label.setAttribute("font-size", String(Math.max(9, r / 2.6)));
    label.textContent = bubble.term;

    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${bubble.term}: ${bubble.frequency}`;

    group.append(circle, label, title);
    group.addEventListener("click", () => handlers.onTermClick(bubble.term));
    svg.append(group);
  }
  container.append(svg);
}
