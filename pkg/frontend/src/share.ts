// Share popup: fetch the latest story, adapt it for a platform via the
// service, and copy the thread to the clipboard. The posts are used exactly
// as the service returned them; the UI never recomputes thread content.

import { ServiceClient, ServiceError } from "./api";
import type { ShareDraft } from "./types";

export interface ClipboardLike {
  writeText(text: string): Promise<void>;
}

export const NO_STORY_GUIDANCE =
  "No story yet. Generate a learning story from one of your tags first.";

export async function copyShareThread(
  client: ServiceClient,
  clipboard: ClipboardLike,
  platform: string,
): Promise<ShareDraft> {
  let storyId: string;
  try {
    storyId = (await client.latestStory()).id;
  } catch (error) {
    if (error instanceof ServiceError && error.code === "no-story") {
      return { platform, posts: [], copied: false, guidance: NO_STORY_GUIDANCE };
    }
    throw error;
  }
  const thread = await client.adaptStory(storyId, platform);
  const posts = thread.posts.map((post) => post.body);
  await clipboard.writeText(posts.join("\n\n"));
  return { platform: thread.platform, posts, copied: true };
}
