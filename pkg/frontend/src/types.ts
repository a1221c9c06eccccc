// Wire types mirroring the service's JSON responses. The UI never reshapes
// these; displayed values stay byte-equal to what the service sent.

export interface ResourceResponse {
  id: string;
  url: string;
  title: string;
  kind: "web-page" | "video" | "other";
  added_at: string;
  rating: number | null;
}

export interface ReflectionResponse {
  id: string;
  resource_id: string;
  text: string;
  kind: "note" | "question" | "intention";
  created_at: string;
  video_offset: number | null;
}

export interface TagResponse {
  id: string;
  name: string;
  created_at: string;
}

export interface StoryEntryResponse {
  text: string;
  resource_url: string;
  anchored_url: string | null;
}

export interface StoryResponse {
  id: string;
  tag_id: string;
  title: string;
  listing: StoryEntryResponse[];
  keywords: string[];
  ai_feedback: string;
  created_at: string;
  provider_id: string;
}

export interface ThreadPostResponse {
  index: number;
  total: number;
  body: string;
}

export interface ThreadResponse {
  platform: string;
  posts: ThreadPostResponse[];
}

export interface KindRecencyResponse {
  last_at: string;
  elapsed_seconds: number;
}

export interface SnapshotResponse {
  computed_at: string;
  kinds: Record<string, KindRecencyResponse | null>;
}

export interface RadarDatumResponse {
  tag_name: string;
  resource_count: number;
}

export interface NudgePayloadResponse {
  snapshot: SnapshotResponse;
  story_id: string | null;
  story_title: string | null;
}

export interface BalloonMarker {
  reflectionId: string;
  videoOffset: number;
  // Fraction of the timeline width, videoOffset / videoDuration clamped to [0, 1].
  horizontalPosition: number;
}

export interface ShareDraft {
  platform: string;
  posts: string[];
  copied: boolean;
  guidance?: string;
}
