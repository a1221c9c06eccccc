from datetime import datetime, timedelta, timezone

import pytest

from storypath.store import CurationStore


class FakeClock:
    """Deterministic clock; every call advances by one step."""

    def __init__(self, start=None, step=timedelta(seconds=1)):
        self.current = start or datetime(2025, 1, 1, tzinfo=timezone.utc)
        self.step = step

    def __call__(self) -> datetime:
        moment = self.current
        self.current = moment + self.step
        return moment

    def advance(self, delta: timedelta) -> None:
        self.current += delta


@pytest.fixture
def clock() -> FakeClock:
    return FakeClock()


@pytest.fixture
def store(clock) -> CurationStore:
    return CurationStore(clock=clock)
