/** Splits raw text into plain/highlighted segments from API byte spans.
 *
 * Span offsets and lengths address the UTF-8 encoding of the text, so the
 * text is encoded once and segments are decoded back from byte ranges.
 */

import type { Span } from "./types.js";

export interface Segment {
  text: string;
  polarity: number | null; // null = not highlighted
}

export function segmentText(text: string, spans: Span[]): Segment[] {
  const bytes = new TextEncoder().encode(text);
  const decoder = new TextDecoder();
  const segments: Segment[] = [];
  let cursor = 0;
  for (const span of spans) {
    if (span.offset > cursor) {
      segments.push({
        text: decoder.decode(bytes.subarray(cursor, span.offset)),
        polarity: null,
      });
    }
    const end = span.offset + span.length;
    segments.push({
      text: decoder.decode(bytes.subarray(span.offset, end)),
      polarity: span.polarity,
    });
    cursor = end;
  }
  if (cursor < bytes.length) {
    segments.push({ text: decoder.decode(bytes.subarray(cursor)), polarity: null });
  }
  return segments;
}
