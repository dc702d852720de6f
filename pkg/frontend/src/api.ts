/** Thin typed client over the analytics API.
 *
 * Every call resolves to a discriminated result instead of throwing, so the
 * panels can distinguish "no data" (ok, empty list) from "no model" (409)
 * and transport failures.  The fetch function is injectable for tests.
 */

import type {
  ApiErrorBody,
  Bubble,
  EntityInfo,
  TopicEntry,
  TrendPoint,
  Tweet,
} from "./types.js";

export type ApiResult<T> =
  | { ok: true; body: T }
  | { ok: false; status: number; error: ApiErrorBody };

export type FetchLike = (url: string) => Promise<Response>;

declare global {
  interface Window {
    __API_BASE__?: string;
  }
}

export function defaultApiBase(): string {
  return (typeof window !== "undefined" && window.__API_BASE__) || "/api";
}

export class ApiClient {
  constructor(
    private readonly base: string = defaultApiBase(),
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<ApiResult<T>> {
    let response: Response;
    try {
      response = await this.fetchFn(this.base + path);
    } catch (err) {
      return {
        ok: false,
        status: 0,
        error: { code: "network_error", message: String(err) },
      };
    }
    if (!response.ok) {
      let error: ApiErrorBody;
      try {
        error = (await response.json()) as ApiErrorBody;
      } catch {
        error = { code: "http_error", message: `status ${response.status}` };
      }
      return { ok: false, status: response.status, error };
    }
    return { ok: true, body: (await response.json()) as T };
  }

  entities(): Promise<ApiResult<EntityInfo[]>> {
    return this.get("/entities");
  }

  bubbles(entityId: string, date: string, limit?: number): Promise<ApiResult<Bubble[]>> {
    const query = limit === undefined ? "" : `&limit=${limit}`;
    return this.get(`/entities/${encodeURIComponent(entityId)}/bubbles?date=${date}${query}`);
  }

  trend(entityId: string, from: string, to: string): Promise<ApiResult<TrendPoint[]>> {
    return this.get(`/entities/${encodeURIComponent(entityId)}/trend?from=${from}&to=${to}`);
  }

  topics(
    entityId: string,
    date: string,
    mode: string,
    nTopics?: number,
    nWords?: number,
  ): Promise<ApiResult<TopicEntry[]>> {
    let query = `date=${date}&mode=${mode}`;
    if (nTopics !== undefined) query += `&n_topics=${nTopics}`;
    if (nWords !== undefined) query += `&n_words=${nWords}`;
    return this.get(`/entities/${encodeURIComponent(entityId)}/topics?${query}`);
  }

  tweets(
    entityId: string,
    date: string,
    term?: string | null,
    limit?: number,
  ): Promise<ApiResult<Tweet[]>> {
    let query = `date=${date}`;
    if (term) query += `&term=${encodeURIComponent(term)}`;
    if (limit !== undefined) query += `&limit=${limit}`;
    return this.get(`/entities/${encodeURIComponent(entityId)}/tweets?${query}`);
  }
}
