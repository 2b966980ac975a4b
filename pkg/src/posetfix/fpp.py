"""Fixed point property, its parametrised version, and the mapping-space reduction."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator

from ._search import Stats, first_monotone, iter_monotone
from .errors import DomainMismatch, NotMonotone
from .mapspace import ENUM_MAX_MAPS, ORDER_MAX_MAPS, MapPoset, enumerate_maps
from .poset import MonotoneMap, Poset, bits, components, product


@dataclass(frozen=True)
class FppReport:
    holds: bool
    witness: MonotoneMap | None = None
    nodes: int = 0
    elapsed: float = 0.0

    def __post_init__(self):
        if not self.holds:
            assert self.witness is not None
            assert all(v != x for x, v in enumerate(self.witness.image))

    def to_json(self) -> dict:
        return {
            "fpp": self.holds,
            "witness": list(self.witness.image) if self.witness is not None else None,
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class FamilyOfSelfMaps:
    """Monotone map ``T × X -> X``; entry ``t * X.n + x`` of ``table`` is ``f(t, x)``."""

    T: Poset
    X: Poset
    table: tuple[int, ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if self.check:
            MonotoneMap(product(self.T, self.X), self.X, self.table)

    def __call__(self, t: int, x: int) -> int:
        return self.table[t * self.X.n + x]

    def slice(self, t: int) -> MonotoneMap:
        n = self.X.n
        return MonotoneMap(self.X, self.X, self.table[t * n:(t + 1) * n], check=False)

    @classmethod
    def from_function(cls, T: Poset, X: Poset, fn) -> "FamilyOfSelfMaps":
        return cls(T, X, tuple(fn(t, x) for t in range(T.n) for x in range(X.n)))


@dataclass(frozen=True)
class FixedPointFamily:
    family: FamilyOfSelfMaps
    p: tuple[int, ...]

    def __post_init__(self):
        f = self.family
        MonotoneMap(f.T, f.X, self.p)
        for t, x in enumerate(self.p):
            if f(t, x) != x:
                raise NotMonotone(f"p({t})={x} is not a fixed point of the slice at {t}")


def _witness_order(P: Poset) -> list[int]:
    """Linear extension picking, among the available minimal elements, the one of highest degree."""
    deg = P.comparability_degree
    below = [P.down_masks[x] & ~(1 << x) for x in range(P.n)]
    placed = 0
    order = []
    for _ in range(P.n):
        ready = [x for x in range(P.n) if not placed >> x & 1 and below[x] & ~placed == 0]
        x = min(ready, key=lambda y: (-deg[y], y))
        order.append(x)
        placed |= 1 << x
    return order


def _prune(P: Poset, Q: Poset, doms: list[int]) -> bool:
    """Arc consistency for monotonicity between comparable elements; False on a wipe-out."""
    up_closure = {}
    down_closure = {}

    def upc(mask):
        if mask not in up_closure:
            m = 0
            for v in bits(mask):
                m |= Q.up_masks[v]
            up_closure[mask] = m
        return up_closure[mask]

    def downc(mask):
        if mask not in down_closure:
            m = 0
            for v in bits(mask):
                m |= Q.down_masks[v]
            down_closure[mask] = m
        return down_closure[mask]

    changed = True
    while changed:
        changed = False
        for x, y in P.strict_pairs:
            dx = doms[x] & downc(doms[y])
            dy = doms[y] & upc(doms[x])
            if dx != doms[x] or dy != doms[y]:
                doms[x], doms[y] = dx, dy
                changed = True
                if not dx or not dy:
                    return False
    return True


def _disconnected_witness(P: Poset) -> tuple[int, ...] | None:
    comps = components(P)
    if len(comps) < 2:
        return None
    first = comps[0]
    a = (first & -first).bit_length() - 1
    rest = comps[1]
    b = (rest & -rest).bit_length() - 1
    return tuple(b if first >> x & 1 else a for x in range(P.n))


def has_fpp(P: Poset) -> FppReport:
    """Decide whether every monotone self-map of ``P`` has a fixed point."""
    t0 = time.perf_counter()
    if P.n == 0:
        return FppReport(False, MonotoneMap(P, P, ()), 0, time.perf_counter() - t0)
    fast = _disconnected_witness(P)
    if fast is not None:
        witness = MonotoneMap(P, P, fast)
        return FppReport(False, witness, 0, time.perf_counter() - t0)
    full = (1 << P.n) - 1
    doms = [full & ~(1 << x) for x in range(P.n)]
    stats = Stats()
    found = None
    if _prune(P, P, doms):
        found = first_monotone(P, P, _witness_order(P), doms, stats)
    elapsed = time.perf_counter() - t0
    if found is None:
        return FppReport(True, None, stats.nodes, elapsed)
    return FppReport(False, MonotoneMap(P, P, found), stats.nodes, elapsed)


def has_fpp_bruteforce(P: Poset) -> bool:
    """Filter every monotone self-map; independent of :func:`has_fpp`'s search."""
    M = enumerate_maps(P, P)
    return all(any(m[x] == x for x in range(P.n)) for m in M.maps)


def find_fixed_point_family(f: FamilyOfSelfMaps, stats: Stats | None = None) -> FixedPointFamily | None:
    doms = []
    for t in range(f.T.n):
        mask = 0
        for x in range(f.X.n):
            if f(t, x) == x:
                mask |= 1 << x
        doms.append(mask)
    p = first_monotone(f.T, f.X, None, doms, stats)
    return None if p is None else FixedPointFamily(f, p)


def iter_families(X: Poset, T: Poset, max_maps: int = ENUM_MAX_MAPS) -> Iterator[FamilyOfSelfMaps]:
    TX = product(T, X)
    for table in iter_monotone(TX, X, limit=max_maps):
        yield FamilyOfSelfMaps(T, X, table, check=False)


def fpp_with_respect_to(X: Poset, T: Poset, max_maps: int = ENUM_MAX_MAPS):
    """Whether every family ``T × X -> X`` has a monotone family of fixed points.

    Families are generated one at a time and tested immediately. Returns
    ``(True, None)`` or ``(False, family)`` with the first family that admits
    no family of fixed points.
    """
    for f in iter_families(X, T, max_maps):
        if find_fixed_point_family(f) is None:
            return False, f
    return True, None


def fixed_point_families(f: FamilyOfSelfMaps) -> list[tuple[int, ...]]:
    """All monotone families of fixed points of ``f`` (exhaustive)."""
    doms = [sum(1 << x for x in range(f.X.n) if f(t, x) == x) for t in range(f.T.n)]
    return list(iter_monotone(f.T, f.X, domains=doms))


def family_to_selfmap_on_mapspace(f: FamilyOfSelfMaps, CTX: MapPoset | None = None):
    """Self-map of ``C(T, X)`` sending ``p`` to ``t -> f(t, p(t))``.

    Returns ``(CTX, phi)`` where ``phi`` is a :class:`MonotoneMap` on
    ``CTX.as_poset()``. Its fixed points are exactly the families of fixed
    points of ``f``.
    """
    if CTX is None:
        CTX = enumerate_maps(f.T, f.X)
    elif CTX.dom != f.T or CTX.cod != f.X:
        raise DomainMismatch("mapping space does not match the family")
    image = [CTX.index(tuple(f(t, p[t]) for t in range(f.T.n))) for p in CTX.maps]
    C = CTX.as_poset()
    phi = MonotoneMap(C, C, image)
    fixed = {CTX.maps[k] for k, v in enumerate(image) if k == v}
    assert fixed == set(fixed_point_families(f))
    return CTX, phi


def evaluation_family(M: MapPoset) -> FamilyOfSelfMaps:
    """The family ``C(X, X) × X -> X``, ``(g, x) -> g(x)``, over ``M`` as parameter poset."""
    if len(M) > ORDER_MAX_MAPS:
        from .errors import SizeLimit

        raise SizeLimit("maps for the evaluation family", ORDER_MAX_MAPS, len(M))
    T = M.as_poset()
    return FamilyOfSelfMaps(T, M.cod, tuple(M.table.reshape(-1).tolist()), check=False)


def has_universal_fpp(P: Poset, max_maps: int = ENUM_MAX_MAPS):
    """Decide the universal fixed point property through selection maps.

    Returns ``(True, selection_map)`` or ``(False, family)`` where ``family``
    is the evaluation family on ``C(P, P)`` (``None`` when the mapping space
    was never enumerated or is too large to turn into a parameter poset).
    """
    from .selection import SelectionMap, find_selection_map

    result = find_selection_map(P, max_maps=max_maps)
    if isinstance(result, SelectionMap):
        return True, result
    family = None
    if result.mapspace is not None and len(result.mapspace) <= ORDER_MAX_MAPS:
        family = evaluation_family(result.mapspace)
    return False, family


def left_alternative_fraction(X: Poset, T: Poset) -> tuple[int, int]:
    """Count self-maps of ``C(T, X)`` induced by some family, against all of them.

    Returns ``(induced, total)``.
    """
    CTX = enumerate_maps(T, X)
    induced = set()
    for f in iter_families(X, T):
        _, phi = family_to_selfmap_on_mapspace(f, CTX)
        induced.add(phi.image)
    C = CTX.as_poset()
    total = sum(1 for _ in iter_monotone(C, C))
    return len(induced), total
