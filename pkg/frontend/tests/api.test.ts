import { describe, expect, it } from "vitest";

import { ServiceClient, ServiceError } from "../src/api";
import { RecordingFakeService } from "./fake-service";

describe("ServiceClient", () => {
  it("sends the bearer token on every request", async () => {
    const service = new RecordingFakeService();
    const client = new ServiceClient({
      baseUrl: "http://service.test/",
      token: "secret-token",
      fetchImpl: service.fetch,
    });
    await client.listResources().catch(() => undefined);
    await client.activityRadar();
    for (const call of service.calls) {
      expect(call.headers.Authorization).toBe("Bearer secret-token");
    }
  });

  it("omits the authorization header without a token", async () => {
    const service = new RecordingFakeService();
    const client = new ServiceClient({ baseUrl: "http://service.test", fetchImpl: service.fetch });
    await client.activityRadar();
    expect(service.calls[0]!.headers.Authorization).toBeUndefined();
  });

  it("surfaces the service's stable error code", async () => {
    const service = new RecordingFakeService();
    service.latestStory = null;
    const client = new ServiceClient({ baseUrl: "http://service.test", fetchImpl: service.fetch });
    const error = await client.latestStory().catch((e) => e);
    expect(error).toBeInstanceOf(ServiceError);
    expect(error.code).toBe("no-story");
    expect(error.status).toBe(404);
  });

  it("unwraps the nudge envelope", async () => {
    const service = new RecordingFakeService();
    service.nudge = null;
    const client = new ServiceClient({ baseUrl: "http://service.test", fetchImpl: service.fetch });
    expect(await client.evaluateNudge("x.com")).toBeNull();
  });
});
