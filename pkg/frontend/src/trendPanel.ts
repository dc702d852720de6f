/** Trendline: records per day as an SVG line; clicking a day selects it. */

import type { TrendPoint } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 160;
const PAD = { left: 34, right: 12, top: 10, bottom: 22 };

export interface TrendHandlers {
  onDateClick: (date: string) => void;
}

export function renderTrend(
  container: HTMLElement,
  points: TrendPoint[],
  selectedDate: string | null,
  handlers: TrendHandlers,
): void {
  container.replaceChildren();
  if (points.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "no days in range";
    container.append(empty);
    return;
  }

  const maxCount = Math.max(1, ...points.map((p) => p.count));
  const innerWidth = WIDTH - PAD.left - PAD.right;
  const innerHeight = HEIGHT - PAD.top - PAD.bottom;
  const xFor = (i: number) =>
    PAD.left + (points.length === 1 ? innerWidth / 2 : (i * innerWidth) / (points.length - 1));
  const yFor = (count: number) => PAD.top + innerHeight * (1 - count / maxCount);

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "trend-chart");

  const axis = document.createElementNS(SVG_NS, "line");
  axis.setAttribute("x1", String(PAD.left));
  axis.setAttribute("y1", String(PAD.top + innerHeight));
  axis.setAttribute("x2", String(PAD.left + innerWidth));
  axis.setAttribute("y2", String(PAD.top + innerHeight));
  axis.setAttribute("class", "axis");
  svg.append(axis);

  const line = document.createElementNS(SVG_NS, "polyline");
  line.setAttribute(
    "points",
    points.map((p, i) => `${xFor(i)},${yFor(p.count)}`).join(" "),
  );
  line.setAttribute("fill", "none");
  line.setAttribute("class", "trend-line");
  svg.append(line);

  points.forEach((point, i) => {
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(xFor(i)));
    dot.setAttribute("cy", String(yFor(point.count)));
    dot.setAttribute("r", point.date === selectedDate ? "6" : "4");
    dot.setAttribute("class", "trend-point");
    dot.setAttribute("data-date", point.date);
    dot.setAttribute("data-count", String(point.count));
    if (point.date === selectedDate) dot.classList.add("selected");

    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${point.date}: ${point.count}`;
    dot.append(title);
    dot.addEventListener("click", () => handlers.onDateClick(point.date));
    svg.append(dot);
  });

  // first/last tick labels keep the axis readable without crowding
  const first = points[0]!;
  const last = points[points.length - 1]!;
  for (const [point, i] of [[first, 0], [last, points.length - 1]] as const) {
    const tick = document.createElementNS(SVG_NS, "text");
    tick.setAttribute("x", String(xFor(i)));
    tick.setAttribute("y", String(HEIGHT - 6));
    tick.setAttribute("text-anchor", i === 0 ? "start" : "end");
    tick.setAttribute("class", "tick-label");
    tick.textContent = point.date;
    svg.append(tick);
  }

  container.append(svg);
}
