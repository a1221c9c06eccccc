// Typed client for the storypath service. All UI surfaces go through this;
// nothing in the extension talks to providers or repository hosts directly.

import type {
  NudgePayloadResponse,
  RadarDatumResponse,
  ReflectionResponse,
  ResourceResponse,
  SnapshotResponse,
  StoryResponse,
  TagResponse,
  ThreadResponse,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    public readonly code: string,
    public readonly status: number,
    detail?: string,
  ) {
    super(detail ?? code);
    this.name = "ServiceError";
  }
}

export interface ClientOptions {
  baseUrl: string;
  token?: string;
  fetchImpl?: FetchLike;
}

export class ServiceClient {
  private readonly baseUrl: string;
  private readonly token?: string;
  private readonly fetchImpl: FetchLike;

  constructor(options: ClientOptions) {
    this.baseUrl = options.baseUrl.replace(/\/$/, "");
    this.token = options.token;
    this.fetchImpl = options.fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) {
      headers.Authorization = `Bearer ${this.token}`;
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const code = parsed && typeof parsed.error === "string" ? parsed.error : "error";
      throw new ServiceError(code, response.status, parsed?.detail);
    }
    return parsed as T;
  }

  addResource(url: string, title: string, kind = "web-page"): Promise<ResourceResponse> {
    return this.request("POST", "/resources", { url, title, kind });
  }

  rateResource(resourceId: string, rating: number): Promise<ResourceResponse> {
    return this.request("POST", `/resources/${resourceId}/rating`, { rating });
  }

  listResources(): Promise<ResourceResponse[]> {
    return this.request("GET", "/resources");
  }

  addReflection(
    resourceId: string,
    text: string,
    kind = "note",
    videoOffset?: number,
  ): Promise<ReflectionResponse> {
    return this.request("POST", "/reflections", {
      resource_id: resourceId,
      text,
      kind,
      video_offset: videoOffset ?? null,
    });
  }

  listReflections(resourceId?: string): Promise<ReflectionResponse[]> {
    const query = resourceId ? `?resource_id=${encodeURIComponent(resourceId)}` : "";
    return this.request("GET", `/reflections${query}`);
  }

  createTag(name: string): Promise<TagResponse> {
    return this.request("POST", "/tags", { name });
  }

  listTags(): Promise<TagResponse[]> {
    return this.request("GET", "/tags");
  }

  assignTag(tagId: string, resourceId: string): Promise<unknown> {
    return this.request("POST", `/tags/${tagId}/assign`, { resource_id: resourceId });
  }

  tagResources(tagId: string): Promise<ResourceResponse[]> {
    return this.request("GET", `/tags/${tagId}/resources`);
  }

  generateStory(tagId: string, minResources = 1): Promise<StoryResponse> {
    return this.request("POST", "/stories", { tag_id: tagId, min_resources: minResources });
  }

  latestStory(tagId?: string): Promise<StoryResponse> {
    const query = tagId ? `?tag_id=${encodeURIComponent(tagId)}` : "";
    return this.request("GET", `/stories/latest${query}`);
  }

  adaptStory(storyId: string, platform: string): Promise<ThreadResponse> {
    return this.request("POST", `/stories/${storyId}/adapt?platform=${encodeURIComponent(platform)}`);
  }

  exportTag(tag: string): Promise<{ receipt: unknown; files: string[] }> {
    return this.request("POST", `/export/${encodeURIComponent(tag)}`);
  }

  activitySnapshot(): Promise<SnapshotResponse> {
    return this.request("GET", "/activity/snapshot");
  }

  activityRadar(): Promise<RadarDatumResponse[]> {
    return this.request("GET", "/activity/radar");
  }

  evaluateNudge(visitedHost: string, lastNudgeAt?: string): Promise<NudgePayloadResponse | null> {
    return this.request<{ nudge: NudgePayloadResponse | null }>("POST", "/nudge/evaluate", {
      visited_host: visitedHost,
      last_nudge_at: lastNudgeAt ?? null,
    }).then((body) => body.nudge);
  }
}
