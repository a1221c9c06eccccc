import { describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api";
import { submitCuration } from "../src/popup";
import { RecordingFakeService } from "./fake-service";

function makeClient(service: RecordingFakeService): ServiceClient {
  return new ServiceClient({ baseUrl: "http://service.test", fetchImpl: service.fetch });
}

describe("submitCuration", () => {
  it("maps one form submission to exactly one call per action", async () => {
    const service = new RecordingFakeService();
    const result = await submitCuration(makeClient(service), {
      url: "https://vuejs.org/guide",
      title: "Vue Guide",
      rating: 4,
      tagName: "Vue Basics",
      reflections: [
        { text: "first note" },
        { text: "a question", kind: "question" },
        { text: "watch again", kind: "intention" },
      ],
    });
    expect(service.callsTo("POST", "/resources").length).toBe(2); // create + rating
    expect(service.callsTo("POST", "/tags").length).toBe(2); // create + assign
    const reflectionCalls = service.callsTo("POST", "/reflections");
    expect(reflectionCalls.map((call) => (call.body as any).text)).toEqual([
      "first note",
      "a question",
      "watch again",
    ]);
    expect(result.reflections).toHaveLength(3);
    expect(result.tag?.name).toBe("vue-basics");
  });

  it("never drops a reflection: n drafts means n service calls", async () => {
    const service = new RecordingFakeService();
    const drafts = Array.from({ length: 7 }, (_, i) => ({ text: `reflection ${i}` }));
    await submitCuration(makeClient(service), {
      url: "https://a.test/x",
      title: "X",
      reflections: drafts,
    });
    expect(service.callsTo("POST", "/reflections")).toHaveLength(7);
  });

  it("skips rating and tag calls when the form leaves them out", async () => {
    const service = new RecordingFakeService();
    await submitCuration(makeClient(service), {
      url: "https://a.test/x",
      title: "X",
      reflections: [],
    });
    expect(service.calls.map((call) => call.path)).toEqual(["/resources"]);
  });

  it("passes video offsets through to the service", async () => {
    const service = new RecordingFakeService();
    await submitCuration(makeClient(service), {
      url: "https://www.youtube.com/watch?v=abc",
      title: "Vid",
      kind: "video",
      reflections: [{ text: "confused here", videoOffset: 75 }],
    });
    const call = service.callsTo("POST", "/reflections")[0]!;
    expect((call.body as any).video_offset).toBe(75);
  });
});
