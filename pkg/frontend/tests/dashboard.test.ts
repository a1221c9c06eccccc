import { describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api";
import {
  renderActivityRows,
  renderRadarRows,
  renderStoryView,
  renderThread,
} from "../src/dashboard";
import { RecordingFakeService, sampleStory } from "./fake-service";

function makeClient(service: RecordingFakeService): ServiceClient {
  return new ServiceClient({ baseUrl: "http://service.test", fetchImpl: service.fetch });
}

describe("dashboard pass-through fidelity", () => {
  it("renders the story view byte-equal to the service response", async () => {
    const service = new RecordingFakeService();
    // Awkward strings on purpose: unicode, emoji, trailing spaces, newlines.
    service.latestStory = sampleStory({
      title: "Learning story: vue-basics — 日本語 🚀  ",
      ai_feedback: "line one\nline two  \twith tabs",
      keywords: ["vue", "v-model", "模块"],
    });
    const story = await makeClient(service).latestStory();
    const view = renderStoryView(story);
    expect(view.title).toBe(service.latestStory.title);
    expect(view.feedback).toBe(service.latestStory.ai_feedback);
    expect(view.keywords).toEqual(service.latestStory.keywords);
    expect(view.providerId).toBe(service.latestStory.provider_id);
    expect(view.createdAt).toBe(service.latestStory.created_at);
    view.details.forEach((detail, i) => {
      const entry = service.latestStory!.listing[i]!;
      expect(detail.text).toBe(entry.text);
      expect(detail.resourceUrl).toBe(entry.resource_url);
      expect(detail.anchoredUrl).toBe(entry.anchored_url);
    });
  });

  it("exposes expandable details with links for every reflection", async () => {
    const service = new RecordingFakeService();
    service.latestStory = sampleStory();
    const view = renderStoryView(await makeClient(service).latestStory());
    expect(view.details).toHaveLength(2);
    expect(view.details[1]!.anchoredUrl).toContain("t=75s");
  });

  it("renders thread bodies without rewriting", async () => {
    const service = new RecordingFakeService();
    service.latestStory = sampleStory();
    const bodies = ["exact body one  (1/2)", "exact\nbody two (2/2)"];
    service.thread = {
      platform: "x",
      posts: bodies.map((body, i) => ({ index: i + 1, total: 2, body })),
    };
    const thread = await makeClient(service).adaptStory("story-abc", "x");
    expect(renderThread(thread.posts)).toEqual(bodies);
  });

  it("renders radar rows with service values untouched", async () => {
    const service = new RecordingFakeService();
    service.radar = [
      { tag_name: "vue-basics", resource_count: 5 },
      { tag_name: "докер", resource_count: 0 },
    ];
    const data = await makeClient(service).activityRadar();
    expect(renderRadarRows(data)).toEqual([
      { label: "vue-basics", value: 5 },
      { label: "докер", value: 0 },
    ]);
  });

  it("renders activity rows including absent kinds", async () => {
    const service = new RecordingFakeService();
    service.snapshot = {
      computed_at: "2025-06-02T00:00:00+00:00",
      kinds: {
        resource_added: { last_at: "2025-06-01T00:00:00+00:00", elapsed_seconds: 86400 },
        reflection_added: null,
        tag_created: null,
        story_created: null,
      },
    };
    const snapshot = await makeClient(service).activitySnapshot();
    const rows = renderActivityRows(snapshot);
    expect(rows).toHaveLength(4);
    expect(rows[0]).toEqual({
      kind: "resource_added",
      lastAt: "2025-06-01T00:00:00+00:00",
      elapsedSeconds: 86400,
    });
    expect(rows[1]).toEqual({ kind: "reflection_added", lastAt: null, elapsedSeconds: null });
  });
});
