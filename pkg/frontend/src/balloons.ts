// Video-annotation overlay: reflections with offsets become balloons on the
// timeline, and clicking one seeks the page's player to that moment.

import type { BalloonMarker, ReflectionResponse } from "./types";

export interface VideoPlayer {
  seekTo(seconds: number): void;
  currentTime(): number;
}

export type ClickResult = { ok: true } | { ok: false; message: string };

export function placeBalloons(
  reflections: ReflectionResponse[],
  videoDuration: number,
): BalloonMarker[] {
  if (!(videoDuration > 0)) {
    throw new RangeError(`videoDuration must be positive, got ${videoDuration}`);
  }
  const markers: BalloonMarker[] = [];
  for (const reflection of reflections) {
    if (reflection.video_offset === null || reflection.video_offset === undefined) {
      continue; // non-video reflections carry no timeline position
    }
    const fraction = reflection.video_offset / videoDuration;
    markers.push({
      reflectionId: reflection.id,
      videoOffset: reflection.video_offset,
      horizontalPosition: Math.min(1, Math.max(0, fraction)),
    });
  }
  return markers;
}

export function balloonClick(marker: BalloonMarker, player: VideoPlayer | null): ClickResult {
  if (player === null) {
    return { ok: false, message: "Video player not found on this page; try reloading." };
  }
  player.seekTo(marker.videoOffset);
  return { ok: true };
}
