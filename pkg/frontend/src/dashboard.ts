// Dashboard views. These produce the exact strings the page displays; every
// value is passed through from the service response untouched, so a
// recording fake can assert byte-equality end to end.

import type {
  RadarDatumResponse,
  SnapshotResponse,
  StoryResponse,
  ThreadPostResponse,
} from "./types";

export interface StoryDetailEntry {
  text: string;
  resourceUrl: string;
  anchoredUrl: string | null;
}

export interface StoryView {
  title: string;
  feedback: string;
  keywords: string[];
  providerId: string;
  createdAt: string;
  // Expandable details: reflections with their links.
  details: StoryDetailEntry[];
}

export function renderStoryView(story: StoryResponse): StoryView {
  return {
    title: story.title,
    feedback: story.ai_feedback,
    keywords: story.keywords,
    providerId: story.provider_id,
    createdAt: story.created_at,
    details: story.listing.map((entry) => ({
      text: entry.text,
      resourceUrl: entry.resource_url,
      anchoredUrl: entry.anchored_url,
    })),
  };
}

export function renderThread(posts: ThreadPostResponse[]): string[] {
  return posts.map((post) => post.body);
}

export interface RadarRow {
  label: string;
  value: number;
}

export function renderRadarRows(data: RadarDatumResponse[]): RadarRow[] {
  return data.map((datum) => ({ label: datum.tag_name, value: datum.resource_count }));
}

export interface ActivityRow {
  kind: string;
  lastAt: string | null;
  elapsedSeconds: number | null;
}

export function renderActivityRows(snapshot: SnapshotResponse): ActivityRow[] {
  return Object.entries(snapshot.kinds).map(([kind, recency]) => ({
    kind,
    lastAt: recency ? recency.last_at : null,
    elapsedSeconds: recency ? recency.elapsed_seconds : null,
  }));
}
