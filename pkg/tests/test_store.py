import random
from datetime import timedelta

import pytest
from hypothesis import given
from hypothesis import strategies as st

from storypath.errors import (
    EmptyNameError,
    EmptyTextError,
    InvalidUrlError,
    NotAVideoError,
    OffsetOnNonVideoError,
    RatingOutOfRangeError,
    SelfMergeError,
    UnknownResourceError,
    UnknownTagError,
)
from storypath.store import CurationStore, anchored_url, normalize_tag_name, normalize_url

from genutil import build_random_store


# -- add_resource ---------------------------------------------------------------

def test_add_resource_fresh_insert(store):
    resource = store.add_resource("https://vuejs.org/guide/", "Vue Guide", "web-page")
    assert resource.url == "https://vuejs.org/guide/"
    assert resource.title == "Vue Guide"
    assert resource.kind == "web-page"
    assert resource.rating is None


def test_add_resource_is_idempotent_upsert(store):
    first = store.add_resource("https://vuejs.org/guide/", "Vue Guide", "web-page")
    second = store.add_resource("https://vuejs.org/guide/", "Vue Guide", "web-page")
    assert second.id == first.id
    assert len(store.resources()) == 1


def test_add_resource_upsert_matches_normalized_url_and_updates_title(store):
    first = store.add_resource("https://vuejs.org/guide/", "Vue Guide", "web-page")
    second = store.add_resource("HTTPS://VUEJS.ORG/guide", "Vue Guide v2", "web-page")
    assert second.id == first.id
    assert first.title == "Vue Guide v2"
    assert len(store.resources()) == 1


def test_add_resource_rejects_unparseable_url(store):
    with pytest.raises(InvalidUrlError):
        store.add_resource("not a url", "nope", "web-page")


def test_add_resource_rejects_relative_url(store):
    with pytest.raises(InvalidUrlError):
        store.add_resource("/guide/intro", "relative", "web-page")


def test_add_resource_rejects_unknown_kind(store):
    with pytest.raises(ValueError):
        store.add_resource("https://a.test/x", "x", "pdf")


def test_added_at_never_decreases(store):
    stamps = [store.add_resource(f"https://a.test/{i}", str(i)).added_at for i in range(10)]
    assert stamps == sorted(stamps)


def test_normalize_url_keeps_query_and_case_of_path():
    assert normalize_url("HTTPS://WWW.YouTube.com/watch?v=AbC") == "https://www.youtube.com/watch?v=AbC"
    assert normalize_url("https://a.test/Path/") == "https://a.test/Path"


# -- rate_resource ----------------------------------------------------------------

def test_rate_resource_stores_rating(store):
    resource = store.add_resource("https://a.test/1", "one")
    store.rate_resource(resource.id, 4)
    assert resource.rating == 4


def test_rate_resource_overwrites(store):
    resource = store.add_resource("https://a.test/1", "one")
    store.rate_resource(resource.id, 4)
    store.rate_resource(resource.id, 2)
    assert resource.rating == 2


@pytest.mark.parametrize("bad", [0, 6, -1, True])
def test_rate_resource_rejects_out_of_range(store, bad):
    resource = store.add_resource("https://a.test/1", "one")
    with pytest.raises(RatingOutOfRangeError):
        store.rate_resource(resource.id, bad)


def test_rate_resource_unknown(store):
    with pytest.raises(UnknownResourceError):
        store.rate_resource("res-missing", 3)


# -- add_reflection ----------------------------------------------------------------

def test_add_reflection_on_video_with_offset(store):
    video = store.add_resource("https://www.youtube.com/watch?v=abc", "vid", "video")
    reflection = store.add_reflection(video.id, "confused by v-model here", "note", 75)
    assert reflection.video_offset == 75
    assert reflection.resource_id == video.id


def test_add_reflection_without_offset(store):
    page = store.add_resource("https://a.test/1", "one")
    reflection = store.add_reflection(page.id, "read later: routing chapter", "intention")
    assert reflection.video_offset is None
    assert reflection.kind == "intention"


def test_add_reflection_offset_on_non_video(store):
    page = store.add_resource("https://a.test/1", "one")
    with pytest.raises(OffsetOnNonVideoError):
        store.add_reflection(page.id, "anything", "note", 30)


def test_add_reflection_rejects_blank_text(store):
    page = store.add_resource("https://a.test/1", "one")
    with pytest.raises(EmptyTextError):
        store.add_reflection(page.id, "   \n ", "note")


def test_add_reflection_unknown_resource(store):
    with pytest.raises(UnknownResourceError):
        store.add_reflection("res-missing", "text", "note")


def test_reflections_for_resource_ordered_by_created_at(store):
    page = store.add_resource("https://a.test/1", "one")
    first = store.add_reflection(page.id, "first", "note")
    second = store.add_reflection(page.id, "second", "note")
    assert [r.id for r in store.reflections_for_resource(page.id)] == [first.id, second.id]


# -- tags ---------------------------------------------------------------------------

def test_create_tag_normalizes_name(store):
    tag = store.create_tag("Vue Basics")
    assert tag.name == "vue-basics"


def test_create_tag_idempotent_by_normalized_name(store):
    first = store.create_tag("Vue Basics")
    second = store.create_tag("vue-basics")
    assert second.id == first.id
    assert len(store.tags()) == 1


def test_create_tag_rejects_blank(store):
    with pytest.raises(EmptyNameError):
        store.create_tag("   ")


def test_normalize_tag_name_collapses_internal_whitespace():
    assert normalize_tag_name("  Vue   Basics \t two ") == "vue-basics-two"


def test_assign_tag_records_pair(store):
    tag = store.create_tag("t")
    resource = store.add_resource("https://a.test/1", "one")
    assignment = store.assign_tag(tag.id, resource.id)
    assert (assignment.tag_id, assignment.resource_id) == (tag.id, resource.id)


def test_assign_tag_twice_keeps_one_assignment(store):
    tag = store.create_tag("t")
    resource = store.add_resource("https://a.test/1", "one")
    store.assign_tag(tag.id, resource.id)
    store.assign_tag(tag.id, resource.id)
    assert len(store.assignments()) == 1


def test_assign_tag_unknown_tag(store):
    resource = store.add_resource("https://a.test/1", "one")
    with pytest.raises(UnknownTagError):
        store.assign_tag("tag-missing", resource.id)


# -- merge_tags -----------------------------------------------------------------------

def _setup_merge(store):
    r1 = store.add_resource("https://a.test/1", "one")
    r2 = store.add_resource("https://a.test/2", "two")
    r3 = store.add_resource("https://a.test/3", "three")
    x = store.create_tag("x")
    y = store.create_tag("y")
    store.assign_tag(x.id, r1.id)
    store.assign_tag(x.id, r2.id)
    store.assign_tag(y.id, r2.id)
    store.assign_tag(y.id, r3.id)
    return x, y, (r1, r2, r3)


def test_merge_tags_target_holds_union_and_source_gone(store):
    x, y, (r1, r2, r3) = _setup_merge(store)
    # Independent oracle: the union computed directly over assignments.
    expected = {a.resource_id for a in store.assignments() if a.tag_id in (x.id, y.id)}
    merged = store.merge_tags(x.id, y.id)
    assert merged.id == y.id
    assert {r.id for r in store.resources_by_tag(y.id)} == expected == {r1.id, r2.id, r3.id}
    with pytest.raises(UnknownTagError):
        store.get_tag(x.id)
    assert len([a for a in store.assignments() if a.tag_id == y.id]) == len(expected)


def test_merge_tags_empty_source(store):
    x = store.create_tag("x")
    y = store.create_tag("y")
    r1 = store.add_resource("https://a.test/1", "one")
    store.assign_tag(y.id, r1.id)
    store.merge_tags(x.id, y.id)
    assert [r.id for r in store.resources_by_tag(y.id)] == [r1.id]


def test_merge_tags_self_merge_rejected(store):
    x = store.create_tag("x")
    with pytest.raises(SelfMergeError):
        store.merge_tags(x.id, x.id)


def test_merge_tags_relinks_stories(store):
    from storypath.stories import collect_story_input, fallback_generate

    x, y, _ = _setup_merge(store)
    store.add_reflection(store.resources_by_tag(x.id)[0].id, "note on one", "note")
    story = fallback_generate(collect_story_input(store, x.id))
    store.add_story(story)
    store.merge_tags(x.id, y.id)
    assert store.get_story(story.id).tag_id == y.id


def test_merge_tags_union_matches_brute_force_for_random_stores():
    for seed in range(30):
        rng = random.Random(seed)
        store, tag_ids = build_random_store(rng)
        if len(tag_ids) < 2:
            continue
        source, target = rng.sample(tag_ids, 2)
        expected = {a.resource_id for a in store.assignments() if a.tag_id in (source, target)}
        store.merge_tags(source, target)
        assert {r.id for r in store.resources_by_tag(target)} == expected
        assert len([a for a in store.assignments() if a.tag_id == target]) == len(expected)


# -- resources_by_tag ----------------------------------------------------------------

def test_resources_by_tag_ordered_by_added_at(store):
    tag = store.create_tag("t")
    r1 = store.add_resource("https://a.test/1", "one")
    r2 = store.add_resource("https://a.test/2", "two")
    store.assign_tag(tag.id, r2.id)
    store.assign_tag(tag.id, r1.id)
    assert [r.id for r in store.resources_by_tag(tag.id)] == [r1.id, r2.id]


def test_resources_by_tag_empty(store):
    tag = store.create_tag("t")
    assert store.resources_by_tag(tag.id) == []


def test_resources_by_tag_unknown(store):
    with pytest.raises(UnknownTagError):
        store.resources_by_tag("tag-missing")


def test_resources_by_tag_stable_under_requery(store):
    _, y, _ = _setup_merge(store)
    first = [r.id for r in store.resources_by_tag(y.id)]
    second = [r.id for r in store.resources_by_tag(y.id)]
    assert first == second


# -- anchored_url -----------------------------------------------------------------------

def test_anchored_url_appends_with_ampersand_when_query_exists(store):
    video = store.add_resource("https://www.youtube.com/watch?v=abc", "vid", "video")
    assert anchored_url(video, 75) == "https://www.youtube.com/watch?v=abc&t=75s"


def test_anchored_url_uses_question_mark_without_query(store):
    video = store.add_resource("https://videos.test/clip", "vid", "video")
    assert anchored_url(video, 30) == "https://videos.test/clip?t=30s"


def test_anchored_url_zero_offset_returns_base(store):
    video = store.add_resource("https://www.youtube.com/watch?v=abc", "vid", "video")
    assert anchored_url(video, 0) == "https://www.youtube.com/watch?v=abc"


def test_anchored_url_rejects_non_video(store):
    page = store.add_resource("https://a.test/1", "one")
    with pytest.raises(NotAVideoError):
        anchored_url(page, 10)


@given(st.sets(st.integers(min_value=1, max_value=10_000), min_size=2, max_size=20))
def test_anchored_url_injective_over_positive_offsets(offsets):
    store = CurationStore()
    video = store.add_resource("https://www.youtube.com/watch?v=abc", "vid", "video")
    urls = {anchored_url(video, offset) for offset in offsets}
    assert len(urls) == len(offsets)


# -- idempotency as state equality ----------------------------------------------------

def test_repeat_mutations_leave_state_identical(store):
    resource = store.add_resource("https://a.test/1", "one")
    tag = store.create_tag("t")
    store.assign_tag(tag.id, resource.id)
    before = store.to_dict()
    store.add_resource("https://a.test/1", "one")
    store.create_tag("t")
    store.assign_tag(tag.id, resource.id)
    assert store.to_dict() == before
