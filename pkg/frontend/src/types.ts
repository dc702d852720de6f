/** Payload shapes of the analytics API, mirrored field for field. */

export interface EntityInfo {
  id: string;
  canonical_name: string;
  category: string;
}

export interface Bubble {
  term: string;
  frequency: number;
  polarity: number; // -1 | 0 | 1
  scale: number; // (0, 1], frequency / day maximum
}

export interface TrendPoint {
  date: string; // ISO date
  count: number;
}

export interface TopicTerm {
  term: string;
  weight: number;
}

export interface TopicEntry {
  topic_id: number;
  topic_terms: TopicTerm[];
  weight: number;
}

/** Highlight span in UTF-8 byte coordinates over the raw text. */
export interface Span {
  offset: number;
  length: number;
  polarity: number;
}

export interface Tweet {
  record_id: string;
  timestamp: string;
  text: string;
  spans: Span[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
