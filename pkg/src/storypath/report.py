"""Offline learning report: radar figure plus delimited summaries.

Writes radar.png (resource spread across learning paths), radar.csv, and
activity.csv into an output directory. The radar polygon needs at least three
tags; with fewer, a bar chart stands in so the figure is always meaningful.
"""

from __future__ import annotations

import csv
import math
from datetime import datetime
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .activity import compute_snapshot, radar_data
from .models import iso_seconds, utc_now
from .store import CurationStore


def write_radar_csv(store: CurationStore, path: Path) -> Path:
    data = radar_data(store)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["tag_name", "resource_count"])
        for datum in data:
            writer.writerow([datum.tag_name, datum.resource_count])
    return path


def write_activity_csv(store: CurationStore, path: Path, now: Optional[datetime] = None) -> Path:
    snapshot = compute_snapshot(store.events(), now if now is not None else utc_now())
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["kind", "last_at", "elapsed_seconds"])
        from .activity import EVENT_KINDS

        for kind in EVENT_KINDS:
            recency = snapshot.kinds.get(kind)
            if recency is None:
                writer.writerow([kind, "", ""])
            else:
                writer.writerow(
                    [kind, iso_seconds(recency.last_at), f"{recency.elapsed.total_seconds():.0f}"]
                )
    return path


def render_radar_png(store: CurationStore, path: Path) -> Optional[Path]:
    """Radar (or bar, below three tags) figure of per-tag resource counts."""
    data = radar_data(store)
    if not data:
        return None
    names = [d.tag_name for d in data]
    counts = [d.resource_count for d in data]
    if len(data) >= 3:
        angles = [2 * math.pi * i / len(data) for i in range(len(data))]
        fig, ax = plt.subplots(figsize=(6, 6), subplot_kw={"polar": True})
        ax.plot(angles + angles[:1], counts + counts[:1], color="tab:blue")
        ax.fill(angles + angles[:1], counts + counts[:1], color="tab:blue", alpha=0.25)
        ax.set_xticks(angles)
        ax.set_xticklabels(names)
        ax.set_title("Resources per learning path")
    else:
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.bar(names, counts, color="tab:blue")
        ax.set_ylabel("resources")
        ax.set_title("Resources per learning path")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_report(store: CurationStore, out_dir: Path, now: Optional[datetime] = None) -> list[Path]:
    """Render every report artifact; returns the paths written."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [
        write_radar_csv(store, out_dir / "radar.csv"),
        write_activity_csv(store, out_dir / "activity.csv", now=now),
    ]
    figure = render_radar_png(store, out_dir / "radar.png")
    if figure is not None:
        written.append(figure)
    return written
