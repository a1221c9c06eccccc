// Curation popup: one submitted form maps one-to-one onto service calls.
// Nothing is batched or coalesced client-side, so a reflection can never be
// silently dropped between the popup and the store.

import { ServiceClient } from "./api";
import type { ReflectionResponse, ResourceResponse, TagResponse } from "./types";

export interface ReflectionDraft {
  text: string;
  kind?: "note" | "question" | "intention";
  videoOffset?: number;
}

export interface CurationForm {
  url: string;
  title: string;
  kind?: "web-page" | "video" | "other";
  rating?: number;
  tagName?: string;
  reflections: ReflectionDraft[];
}

export interface CurationResult {
  resource: ResourceResponse;
  tag: TagResponse | null;
  reflections: ReflectionResponse[];
}

export async function submitCuration(
  client: ServiceClient,
  form: CurationForm,
): Promise<CurationResult> {
  const resource = await client.addResource(form.url, form.title, form.kind ?? "web-page");
  if (form.rating !== undefined) {
    await client.rateResource(resource.id, form.rating);
  }
  let tag: TagResponse | null = null;
  if (form.tagName) {
    tag = await client.createTag(form.tagName);
    await client.assignTag(tag.id, resource.id);
  }
  const reflections: ReflectionResponse[] = [];
  for (const draft of form.reflections) {
    reflections.push(
      await client.addReflection(resource.id, draft.text, draft.kind ?? "note", draft.videoOffset),
    );
  }
  return { resource, tag, reflections };
}
