// Activity nudge: the pop-up renders only when the service says so. A null
// payload (disabled policy, unwatched host, fresh activity, rate limit)
// means nothing is shown at all.

import { ServiceClient } from "./api";
import type { NudgePayloadResponse } from "./types";

export interface NudgeView {
  show(payload: NudgePayloadResponse): void;
}

export async function maybeShowNudge(
  client: ServiceClient,
  view: NudgeView,
  visitedHost: string,
  lastNudgeAt?: string,
): Promise<NudgePayloadResponse | null> {
  const payload = await client.evaluateNudge(visitedHost, lastNudgeAt);
  if (payload !== null) {
    view.show(payload);
  }
  return payload;
}
