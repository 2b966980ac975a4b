"""Catalog of small posets up to isomorphism, classified and cached.

Posets on ``n`` elements are generated from those on ``n - 1`` by adding a
new maximal element above an arbitrary down-set (every finite poset arises
this way, since removing a maximal element leaves a poset), then
deduplicated by :func:`~posetfix.poset.canonical_form`.
"""
from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .dismantle import is_dismantlable
from .errors import ConsistencyViolation, SizeLimit
from .fpp import has_fpp
from .mapspace import count_maps
from .poset import CANONICAL_MAX_N, Poset, bits, canonical_form, from_covers, is_connected, iter_down_sets
from .selection import SelectionMap, find_selection_map

log = logging.getLogger(__name__)

SCAN_MAX_N = 7
SCAN_MAX_MAPS = 20_000
CACHE_ENV = "FIXPOINT_CACHE"
CACHE_FILE = "records.jsonl"


@lru_cache(maxsize=None)
def posets_of_size(n: int) -> tuple[Poset, ...]:
    """One representative per isomorphism class on ``n`` elements, sorted by canonical form."""
    if n > CANONICAL_MAX_N:
        raise SizeLimit("element count for catalog generation", CANONICAL_MAX_N, n)
    if n == 0:
        return (Poset(np.zeros((0, 0), dtype=bool)),)
    seen: dict[bytes, Poset] = {}
    for P in posets_of_size(n - 1):
        for ideal in iter_down_sets(P):
            leq = np.zeros((n, n), dtype=bool)
            leq[: n - 1, : n - 1] = P.leq
            leq[n - 1, n - 1] = True
            for y in bits(ideal):
                leq[y, n - 1] = True
            Q = Poset(leq, check=False)
            key = canonical_form(Q)
            if key not in seen:
                seen[key] = Q
    return tuple(seen[k] for k in sorted(seen))


def catalog(max_n: int, min_n: int = 1) -> Iterator[Poset]:
    for n in range(min_n, max_n + 1):
        yield from posets_of_size(n)


@dataclass(frozen=True)
class ScanRecord:
    canonical: str
    n: int
    covers: tuple[tuple[int, int], ...]
    connected: bool
    fpp: bool
    dismantlable: bool
    selection: str  # "sat" | "unsat" | "skipped(size)"
    map_count: int | None  # None when skipped
    max_maps: int = SCAN_MAX_MAPS

    def check(self) -> None:
        problems = []
        if self.dismantlable and not self.fpp:
            problems.append("dismantlable but no FPP")
        if self.selection == "sat" and not self.fpp:
            problems.append("selection map but no FPP")
        if self.fpp and not self.connected:
            problems.append("FPP but disconnected")
        if problems:
            raise ConsistencyViolation(f"{self.canonical}: {'; '.join(problems)}")

    def poset(self) -> Poset:
        return from_covers(self.n, self.covers)

    def to_json(self) -> dict:
        d = asdict(self)
        d["covers"] = [list(c) for c in self.covers]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ScanRecord":
        d = dict(d)
        d["covers"] = tuple(tuple(c) for c in d["covers"])
        return cls(**d)


def classify(P: Poset, max_maps: int = SCAN_MAX_MAPS) -> ScanRecord:
    fpp = has_fpp(P).holds
    try:
        map_count = count_maps(P, P, max_maps)
    except SizeLimit:
        map_count = None
    if not fpp:
        selection = "unsat"
    elif map_count is None:
        selection = "skipped(size)"
    else:
        selection = "sat" if isinstance(find_selection_map(P, max_maps), SelectionMap) else "unsat"
    record = ScanRecord(
        canonical=canonical_form(P).hex(),
        n=P.n,
        covers=tuple(P.covers),
        connected=is_connected(P),
        fpp=fpp,
        dismantlable=is_dismantlable(P),
        selection=selection,
        map_count=map_count,
        max_maps=max_maps,
    )
    record.check()
    return record


class Cache:
    """Append-only JSON-lines store of scan records keyed by canonical form."""

    def __init__(self, directory: str | os.PathLike):
        self.path = Path(directory) / CACHE_FILE
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._records: dict[str, ScanRecord] = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    try:
                        rec = ScanRecord.from_json(json.loads(line))
                    except (ValueError, TypeError, KeyError) as exc:
                        log.warning("skipping corrupted cache line %d in %s: %s", lineno, self.path, exc)
                        continue
                    self._records[rec.canonical] = rec

    def __len__(self) -> int:
        return len(self._records)

    def lookup(self, canonical: str, max_maps: int | None = None) -> ScanRecord | None:
        rec = self._records.get(canonical)
        if rec is not None and max_maps is not None and rec.max_maps != max_maps:
            return None
        return rec

    def store(self, record: ScanRecord) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_json(), sort_keys=True) + "\n")
        self._records[record.canonical] = record


def default_cache_dir() -> str | None:
    return os.environ.get(CACHE_ENV)


def _classify_task(args):
    P, max_maps = args
    return classify(P, max_maps)


def scan(
    max_n: int,
    jobs: int | None = 1,
    cache: Cache | None = None,
    max_maps: int = SCAN_MAX_MAPS,
    limit_n: int = SCAN_MAX_N,
    stats: dict | None = None,
) -> Iterator[ScanRecord]:
    """Classify every poset with ``1..max_n`` elements, ordered by ``(n, canonical)``.

    ``jobs`` sets the worker pool size (``None``: all cores); results are
    emitted in catalog order regardless. Cached records are reused without
    recomputation; ``stats["computed"]`` counts the fresh classifications.
    """
    if max_n > limit_n:
        raise SizeLimit("scan size", limit_n, max_n)
    posets = list(catalog(max_n))
    keys = [canonical_form(P).hex() for P in posets]
    cached = [cache.lookup(k, max_maps) if cache is not None else None for k in keys]
    todo = [P for P, c in zip(posets, cached) if c is None]
    if stats is not None:
        stats["computed"] = len(todo)
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(todo) > 1:
        pool = ProcessPoolExecutor(max_workers=jobs)
        fresh = pool.map(_classify_task, [(P, max_maps) for P in todo], chunksize=8)
    else:
        pool = None
        fresh = (classify(P, max_maps) for P in todo)
    try:
        for c in cached:
            if c is not None:
                yield c
                continue
            rec = next(fresh)
            if cache is not None:
                cache.store(rec)
            yield rec
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)


def summarize(records: Iterable[ScanRecord]) -> dict[int, dict[str, int]]:
    out: dict[int, Counter] = {}
    for r in records:
        c = out.setdefault(r.n, Counter())
        c["classes"] += 1
        c["connected"] += r.connected
        c["fpp"] += r.fpp
        c["dismantlable"] += r.dismantlable
        c["sat"] += r.selection == "sat"
        c["skipped"] += r.selection.startswith("skipped")
        c["fpp_without_selection"] += r.fpp and r.selection == "unsat"
        c["fpp_not_dismantlable"] += r.fpp and not r.dismantlable
    return {n: dict(c) for n, c in sorted(out.items())}
