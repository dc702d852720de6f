/** Deterministic circle packing for the bubble panel.
 *
 * Radius grows strictly with the API-provided scale; placement walks an
 * Archimedean spiral whose start angle is seeded by the term's hash, so the
 * same payload always produces the same picture.
 */

import type { Bubble } from "./types.js";

export const MIN_RADIUS = 14;
export const MAX_RADIUS = 60;

export function radiusForScale(scale: number): number {
  // sqrt keeps areas roughly proportional to frequency; strictly increasing
  return MIN_RADIUS + (MAX_RADIUS - MIN_RADIUS) * Math.sqrt(scale);
}

/** FNV-1a, enough to spread start angles; stable across runs and platforms. */
export function hashTerm(term: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < term.length; i++) {
    hash ^= term.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

export interface PlacedBubble {
  bubble: Bubble;
  x: number;
  y: number;
  r: number;
}

const SPIRAL_STEP = 4; // px of radial growth per probe
const SPIRAL_TURN = 0.9; // radians advanced per probe

function collides(placed: PlacedBubble[], x: number, y: number, r: number): boolean {
  for (const other of placed) {
    const dx = other.x - x;
    const dy = other.y - y;
    const minDist = other.r + r + 2;
    if (dx * dx + dy * dy < minDist * minDist) return true;
  }
  return false;
}

/** Packs bubbles around the origin, biggest first; never overlaps. */
export function packBubbles(bubbles: Bubble[]): PlacedBubble[] {
  const ordered = [...bubbles].sort(
    (a, b) => b.scale - a.scale || a.term.localeCompare(b.term),
  );
  const placed: PlacedBubble[] = [];
  for (const bubble of ordered) {
    const r = radiusForScale(bubble.scale);
    const startAngle = (hashTerm(bubble.term) % 360) * (Math.PI / 180);
    let x = 0;
    let y = 0;
    for (let step = 0; collides(placed, x, y, r); step++) {
      const angle = startAngle + step * SPIRAL_TURN;
      const dist = SPIRAL_STEP * step;
      x = dist * Math.cos(angle);
      y = dist * Math.sin(angle);
    }
    placed.push({ bubble, x, y, r });
  }
  return placed;
}

export interface Bounds {
  minX: number;
  minY: number;
  width: number;
  height: number;
}

export function layoutBounds(placed: PlacedBubble[], padding = 8): Bounds {
  if (placed.length === 0) {
    return { minX: 0, minY: 0, width: 0, height: 0 };
  }
  const minX = Math.min(...placed.map((p) => p.x - p.r)) - padding;
  const maxX = Math.max(...placed.map((p) => p.x + p.r)) + padding;
  const minY = Math.min(...placed.map((p) => p.y - p.r)) - padding;
  const maxY = Math.max(...placed.map((p) => p.y + p.r)) + padding;
  return { minX, minY, width: maxX - minX, height: maxY - minY };
}
