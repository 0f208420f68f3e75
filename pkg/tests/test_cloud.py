from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taggraph import CloudConfig, build_cloud

counts_st = st.dictionaries(
    st.sampled_from([f"tag{i}" for i in range(12)]),
    st.integers(min_value=1, max_value=500),
    min_size=1,
    max_size=12,
)


def test_worked_example_linear_spread():
    cfg = CloudConfig(min_size=10.0, max_size=20.0, max_tags=10)
    cloud = build_cloud({"a": 1, "b": 2, "c": 3}, cfg)
    assert [(t.label, t.size) for t in cloud] == [
        ("a", 10.0),
        ("b", 15.0),
        ("c", 20.0),
    ]


def test_uniform_counts_take_midpoint():
    cfg = CloudConfig(min_size=10.0, max_size=20.0, max_tags=10)
    cloud = build_cloud({"x": 5, "y": 5}, cfg)
    assert [t.size for t in cloud] == [15.0, 15.0]


def test_max_tags_keeps_most_frequent_breaking_ties_alphabetically():
    cfg = CloudConfig(min_size=10.0, max_size=20.0, max_tags=2)
    cloud = build_cloud({"a": 1, "c": 9, "b": 9}, cfg)
    assert [t.label for t in cloud] == ["b", "c"]


def test_output_is_alphabetical():
    cfg = CloudConfig(min_size=10.0, max_size=20.0, max_tags=10)
    cloud = build_cloud({"zebra": 3, "apple": 1, "mango": 2}, cfg)
    assert [t.label for t in cloud] == ["apple", "mango", "zebra"]


def test_empty_counts_give_empty_cloud():
    assert build_cloud({}, CloudConfig(10.0, 20.0, 5)) == []


def test_nonpositive_count_rejected():
    with pytest.raises(ValueError):
        build_cloud({"a": 0}, CloudConfig(10.0, 20.0, 5))


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        CloudConfig(min_size=20.0, max_size=10.0, max_tags=5)
    with pytest.raises(ValueError):
        CloudConfig(min_size=10.0, max_size=20.0, max_tags=0)


@given(counts_st)
@settings(max_examples=100, deadline=None)
def test_sizes_within_bounds_and_monotone(counts):
    cfg = CloudConfig(min_size=12.0, max_size=30.0, max_tags=8)
    cloud = build_cloud(counts, cfg)
    assert len(cloud) <= cfg.max_tags
    by_label = {t.label: t for t in cloud}
    assert sorted(by_label) == [t.label for t in cloud]
    for t in cloud:
        assert cfg.min_size <= t.size <= cfg.max_size
        assert t.count == counts[t.label]
    ordered = sorted(cloud, key=lambda t: t.count)
    for a, b in zip(ordered, ordered[1:]):
        assert a.size <= b.size


@given(counts_st, st.integers(min_value=2, max_value=9))
@settings(max_examples=60, deadline=None)
def test_scaling_counts_preserves_selection_and_order(counts, factor):
    cfg = CloudConfig(min_size=10.0, max_size=24.0, max_tags=6)
    base = build_cloud(counts, cfg)
    scaled = build_cloud({k: v * factor for k, v in counts.items()}, cfg)
    assert [t.label for t in base] == [t.label for t in scaled]
    for a, b in zip(base, base[1:]):
        a2 = next(t for t in scaled if t.label == a.label)
        b2 = next(t for t in scaled if t.label == b.label)
        if a.size < b.size:
            assert a2.size < b2.size
        elif a.size > b.size:
            assert a2.size > b2.size
        else:
            assert a2.size == b2.size


@given(counts_st)
@settings(max_examples=60, deadline=None)
def test_extremes_hit_the_bounds(counts):
    cfg = CloudConfig(min_size=12.0, max_size=30.0, max_tags=20)
    cloud = build_cloud(counts, cfg)
    lo = min(t.count for t in cloud)
    hi = max(t.count for t in cloud)
    if lo == hi:
        assert all(t.size == 21.0 for t in cloud)
    else:
        assert any(t.size == cfg.min_size for t in cloud if t.count == lo)
        assert any(t.size == cfg.max_size for t in cloud if t.count == hi)
