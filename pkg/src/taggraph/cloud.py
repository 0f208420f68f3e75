"""Sized, alphabetically ordered tag clouds from popularity counts.

Font size scales linearly with popularity across the tags that survive the
max_tags cut, so the rendered cloud always uses its full dynamic range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping


@dataclass(frozen=True)
class CloudConfig:
    min_size: float
    max_size: float
    max_tags: int

    def __post_init__(self) -> None:
        if self.min_size <= 0 or self.max_size <= 0:
            raise ValueError("cloud sizes must be positive")
        if self.min_size > self.max_size:
            raise ValueError("min_size must not exceed max_size")
        if self.max_tags < 1:
            raise ValueError("max_tags must be at least 1")


@dataclass(frozen=True)
class SizedTag:
    label: str
    count: int
    size: float


def build_cloud(counts: Mapping[str, int], cfg: CloudConfig) -> list[SizedTag]:
    """Pick the max_tags most popular tags and size them linearly.

    Ties on count keep the lexicographically earlier label. Sizes
    interpolate between min_size and max_size over the kept tags; a
    uniform-count cloud sits at the midpoint. Output is alphabetical.
    """
    if not counts:
        return []
    if min(counts.values()) < 1:
        raise ValueError("cloud counts must be >= 1")
    kept = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[: cfg.max_tags]
    c_min = min(c for _, c in kept)
    c_max = max(c for _, c in kept)
    span = cfg.max_size - cfg.min_size

    def size_of(count: int) -> float:
        if c_max == c_min:
            return (cfg.min_size + cfg.max_size) / 2
        value = cfg.min_size + span * (count - c_min) / (c_max - c_min)
        # guard the [min_size, max_size] bound against float round-off
        return min(max(value, cfg.min_size), cfg.max_size)

    return sorted(
        (SizedTag(label, count, size_of(count)) for label, count in kept),
        key=lambda st: st.label,
    )
