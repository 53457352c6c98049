"""Cache selection, LRU behavior and transfer timing tests."""
from __future__ import annotations

import math
import random

import pytest

from pilotsim.datacache import (
    EARTH_RADIUS_KM,
    CacheNode,
    haversine_km,
    nearest_cache,
    stage_files,
)

MB = 1 << 20


def node(name="c0", geo=(0.0, 0.0), capacity=64 * MB, bw=100e6, obw=10e6, bs=MB):
    return CacheNode(name, geo, capacity, bw, obw, block_size=bs)


# --- nearest-cache selection --------------------------------------------------


def test_single_cache_is_nearest():
    c = node("only")
    assert nearest_cache((50.0, 8.0), [c]) is c


def test_meridian_monotonicity():
    near = node("near", geo=(0.0, 10.0))
    far = node("far", geo=(0.0, 20.0))
    assert nearest_cache((0.0, 0.0), [far, near]) is near


def test_tie_breaks_by_name():
    a = node("aa", geo=(0.0, 10.0))
    b = node("bb", geo=(0.0, -10.0))
    assert nearest_cache((0.0, 0.0), [b, a]) is a


def test_empty_cache_list_is_error():
    with pytest.raises(ValueError):
        nearest_cache((0.0, 0.0), [])


def _brute_force_nearest(geo, caches):
    # Independent oracle: textbook haversine, scan all, smallest (d, name).
    best = None
    best_key = None
    for c in caches:
        lat1, lon1, lat2, lon2 = map(math.radians, (geo[0], geo[1], c.geo[0], c.geo[1]))
        h = (
            math.sin((lat2 - lat1) / 2) ** 2
            + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
        )
        d = 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(h))
        key = (d, c.name)
        if best_key is None or key < best_key:
            best, best_key = c, key
    return best


def test_nearest_matches_brute_force_on_random_instances():
    rng = random.Random(4242)
    for _ in range(1000):
        caches = [
            node(f"c{i:02d}", geo=(rng.uniform(-90, 90), rng.uniform(-180, 180)))
            for i in range(rng.randint(1, 8))
        ]
        geo = (rng.uniform(-90, 90), rng.uniform(-180, 180))
        assert nearest_cache(geo, caches) is _brute_force_nearest(geo, caches)


def test_nearest_is_permutation_invariant():
    rng = random.Random(5)
    caches = [node(f"c{i}", geo=(rng.uniform(-90, 90), rng.uniform(-180, 180))) for i in range(6)]
    geo = (10.0, 10.0)
    expected = nearest_cache(geo, caches)
    for _ in range(20):
        rng.shuffle(caches)
        assert nearest_cache(geo, caches) is expected


# --- fetch and LRU ------------------------------------------------------------


def test_second_fetch_is_all_hits():
    c = node(capacity=64 * MB)
    first = c.fetch("f", 8 * MB, 0, 8 * MB)
    assert first.bytes_from_origin == 8 * MB
    second = c.fetch("f", 8 * MB, 0, 8 * MB)
    assert second.bytes_from_origin == 0
    assert second.bytes_from_cache == 8 * MB
    assert second.duration < first.duration


def test_lru_evicts_oldest():
    c = node(capacity=2 * MB)
    c.fetch("a", MB, 0, MB)
    c.fetch("b", MB, 0, MB)
    c.fetch("c", MB, 0, MB)
    assert ("a", 0) not in c.resident()
    assert {("b", 0), ("c", 0)} <= c.resident()


def test_touch_refreshes_to_mru():
    c = node(capacity=2 * MB)
    c.fetch("a", MB, 0, MB)
    c.fetch("b", MB, 0, MB)
    c.fetch("a", MB, 0, MB)  # refresh a
    c.fetch("c", MB, 0, MB)  # should evict b, not a
    assert ("b", 0) not in c.resident()
    assert ("a", 0) in c.resident()


def test_zero_length_fetch():
    c = node()
    r = c.fetch("f", MB, 0, 0)
    assert (r.bytes_from_cache, r.bytes_from_origin, r.duration) == (0, 0, 0.0)


def test_oversized_block_passes_through():
    c = node(capacity=MB // 2)  # smaller than one block
    r = c.fetch("big", MB, 0, MB)
    assert r.bytes_from_origin == MB
    assert c.resident_bytes == 0
    # repeating stays a miss
    r2 = c.fetch("big", MB, 0, MB)
    assert r2.bytes_from_origin == MB


def test_partial_tail_block_accounting():
    c = node()
    size = MB + 1000
    r = c.fetch("f", size, 0, size)
    assert r.bytes_from_cache + r.bytes_from_origin == size
    r2 = c.fetch("f", size, MB, 1000)
    assert r2.bytes_from_cache == 1000


def test_block_rounding_covers_request():
    c = node()
    r = c.fetch("f", 10 * MB, 100, 1)  # one byte in the middle of block 0
    assert r.bytes_from_origin == MB


def test_serial_timing_model():
    c = node(bw=100.0, obw=10.0, bs=10, capacity=1000)
    r = c.fetch("f", 100, 0, 100)
    # all 100 bytes miss: 100/10 origin + 100/100 delivery
    assert r.duration == pytest.approx(100 / 10.0 + 100 / 100.0)
    r2 = c.fetch("f", 100, 0, 100)
    assert r2.duration == pytest.approx(100 / 100.0)


class _OracleLRU:
    """Reference stack-based LRU over block keys (independent of CacheNode)."""

    def __init__(self, capacity_blocks: int):
        self.capacity = capacity_blocks
        self.stack: list = []

    def access(self, key) -> bool:
        hit = key in self.stack
        if hit:
            self.stack.remove(key)
        self.stack.append(key)
        while len(self.stack) > self.capacity:
            self.stack.pop(0)
        return hit


def test_lru_matches_reference_oracle_on_random_trace():
    rng = random.Random(31337)
    cap_blocks = 16
    c = node(capacity=cap_blocks * MB)
    oracle = _OracleLRU(cap_blocks)
    files = {f"f{i}": 8 * MB for i in range(8)}  # 64 distinct blocks total
    for _ in range(10_000):
        fid = rng.choice(list(files))
        idx = rng.randrange(files[fid] // MB)
        r = c.fetch(fid, files[fid], idx * MB, MB)
        hit = oracle.access((fid, idx))
        assert (r.bytes_from_origin == 0) == hit
        assert c.resident_bytes <= c.capacity_bytes
        assert c.resident() == set(oracle.stack)


def test_replayed_epoch_within_capacity_hits_fully():
    rng = random.Random(9)
    c = node(capacity=32 * MB)
    epoch = [(f"f{i}", 4 * MB) for i in range(8)]  # working set == capacity
    rng.shuffle(epoch)
    for fid, size in epoch:
        c.fetch(fid, size, 0, size)
    misses_before = c.misses
    for fid, size in epoch:
        r = c.fetch(fid, size, 0, size)
        assert r.bytes_from_origin == 0
    assert c.misses == misses_before


# --- staging -------------------------------------------------------------------


def test_stage_no_inputs_is_zero():
    assert stage_files([], node()) == 0.0


def test_stage_two_cold_files_adds_up():
    c1 = node()
    d_a = c1.fetch("a", 2 * MB, 0, 2 * MB).duration
    d_b = c1.fetch("b", 3 * MB, 0, 3 * MB).duration
    c2 = node()
    assert stage_files([("a", 2 * MB), ("b", 3 * MB)], c2) == pytest.approx(d_a + d_b)


def test_warm_stage_is_strictly_faster():
    c = node(capacity=64 * MB, bw=100e6, obw=10e6)
    cold = stage_files([("a", 8 * MB), ("b", 8 * MB)], c)
    warm = stage_files([("a", 8 * MB), ("b", 8 * MB)], c)
    assert warm < cold
