export { ServiceClient, ServiceError } from "./api";
export type { ClientOptions, FetchLike } from "./api";
export { balloonClick, placeBalloons } from "./balloons";
export type { ClickResult, VideoPlayer } from "./balloons";
export {
  renderActivityRows,
  renderRadarRows,
  renderStoryView,
  renderThread,
} from "./dashboard";
export type { ActivityRow, RadarRow, StoryView } from "./dashboard";
export { maybeShowNudge } from "./nudge";
export type { NudgeView } from "./nudge";
export { submitCuration } from "./popup";
export type { CurationForm, CurationResult, ReflectionDraft } from "./popup";
export { copyShareThread, NO_STORY_GUIDANCE } from "./share";
export type { ClipboardLike } from "./share";
export type * from "./types";
