"""Geo-aware block-cache data delivery.

Jobs read their inputs through the geographically nearest cache node.
Each node keeps whole blocks under LRU in front of an origin; a fetch
serves resident blocks at cache bandwidth and pulls missing blocks from
the origin first (serial model: origin pull, then delivery).
"""
from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Sequence

EARTH_RADIUS_KM = 6371.0

DEFAULT_BLOCK_SIZE = 1 << 20  # 1 MiB


def haversine_km(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Great-circle distance between (lat, lon) pairs in degrees."""
    lat1, lon1 = math.radians(a[0]), math.radians(a[1])
    lat2, lon2 = math.radians(b[0]), math.radians(b[1])
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(h))


@dataclass
class TransferResult:
    bytes_from_cache: int
    bytes_from_origin: int
    duration: float  # sim-seconds
    evicted_blocks: int


class CacheNode:
    """A block cache with LRU eviction and simple bandwidth timing."""

    def __init__(
        self,
        name: str,
        geo: tuple[float, float],
        capacity_bytes: int,
        bandwidth_bps: float,
        origin_bandwidth_bps: float,
        block_size: int = DEFAULT_BLOCK_SIZE,
    ):
        if block_size <= 0:
            raise ValueError("block size must be positive")
        if capacity_bytes < 0:
            raise ValueError("capacity must be nonnegative")
        if bandwidth_bps <= 0 or origin_bandwidth_bps <= 0:
            raise ValueError("bandwidths must be positive")
        self.name = name
        self.geo = geo
        self.capacity_bytes = capacity_bytes
        self.block_size = block_size
        self.bandwidth_bps = bandwidth_bps
        self.origin_bandwidth_bps = origin_bandwidth_bps
        # (file_id, block_index) -> resident bytes, LRU order front to back
        self._blocks: OrderedDict[tuple[str, int], int] = OrderedDict()
        self.resident_bytes = 0
        self.hits = 0
        self.misses = 0
        self.bytes_from_cache = 0
        self.bytes_from_origin = 0
        self.evictions = 0

    def resident(self) -> set[tuple[str, int]]:
        return set(self._blocks)

    def fetch(self, file_id: str, file_size: int, offset: int, length: int, now: int = 0) -> TransferResult:
        """Read [offset, offset+length) of a file through this cache.

        The request is rounded out to covering blocks; the last block of a
        file may be short.  A block larger than the whole cache is served
        pass-through without being cached.
        """
        if offset < 0 or length < 0 or offset + length > file_size:
            raise ValueError("read beyond end of file")
        if length == 0:
            return TransferResult(0, 0, 0.0, 0)
        first = offset // self.block_size
        last = (offset + length - 1) // self.block_size
        from_cache = 0
        from_origin = 0
        evicted = 0
        for idx in range(first, last + 1):
            start = idx * self.block_size
            size = min(self.block_size, file_size - start)
            key = (file_id, idx)
            if key in self._blocks:
                self._blocks.move_to_end(key)
                self.hits += 1
                from_cache += size
                continue
            self.misses += 1
            from_origin += size
            if size > self.capacity_bytes:
                continue  # pass-through, never cached
            self._blocks[key] = size
            self.resident_bytes += size
            while self.resident_bytes > self.capacity_bytes:
                _, dropped = self._blocks.popitem(last=False)
                self.resident_bytes -= dropped
                evicted += 1
        total = from_cache + from_origin
        duration = from_origin / self.origin_bandwidth_bps + total / self.bandwidth_bps
        self.bytes_from_cache += from_cache
        self.bytes_from_origin += from_origin
        self.evictions += evicted
        return TransferResult(from_cache, from_origin, duration, evicted)


def nearest_cache(job_geo: tuple[float, float], caches: Sequence[CacheNode]) -> CacheNode:
    """The cache at minimum great-circle distance; ties break by name."""
    if not caches:
        raise ValueError("no caches configured")
    return min(caches, key=lambda c: (haversine_km(job_geo, c.geo), c.name))


def stage_files(inputs: Iterable[tuple[str, int]], cache: CacheNode, now: int = 0) -> float:
    """Fetch each (file_id, size) input in order; returns total sim-seconds."""
    total = 0.0
    for file_id, size in inputs:
        result = cache.fetch(file_id, size, 0, size, now)
        total += result.duration
    return total
