"""The finite mapping space ``C(X, Y)`` of monotone maps under the pointwise order."""
from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from ._search import iter_monotone
from .errors import DomainMismatch, SizeLimit
from .poset import MonotoneMap, Poset, SubSet

ENUM_MAX_MAPS = 250_000
ORDER_MAX_MAPS = 4096
_CHUNK = 256


class MapPoset:
    """All monotone maps ``dom -> cod``, indexed deterministically.

    Index ``k`` refers to ``maps[k]``; the listing is lexicographic in the
    image tables read along ``dom.linear_extension``. The full pointwise
    order matrix is only built when there are at most ``ORDER_MAX_MAPS``
    maps; larger spaces answer order queries on demand.
    """

    def __init__(self, dom: Poset, cod: Poset, maps: Sequence[tuple[int, ...]]):
        self.dom = dom
        self.cod = cod
        self.maps = [tuple(m) for m in maps]
        self.table = np.array(self.maps, dtype=np.int64).reshape(len(self.maps), dom.n)
        self.table.flags.writeable = False
        self._index = {m: k for k, m in enumerate(self.maps)}

    def __len__(self) -> int:
        return len(self.maps)

    def __repr__(self) -> str:
        return f"MapPoset(|dom|={self.dom.n}, |cod|={self.cod.n}, maps={len(self)})"

    def index(self, image) -> int:
        if isinstance(image, MonotoneMap):
            image = image.image
        return self._index[tuple(image)]

    def get(self, k: int) -> MonotoneMap:
        return MonotoneMap(self.dom, self.cod, self.maps[k], check=False)

    def is_leq(self, a: int, b: int) -> bool:
        leq = self.cod.leq
        return all(leq[u, v] for u, v in zip(self.maps[a], self.maps[b]))

    def order_rows(self, rows: Sequence[int]) -> np.ndarray:
        """Rows of the pointwise order matrix for the maps ``rows``."""
        rows = np.asarray(rows, dtype=np.int64)
        out = np.ones((len(rows), len(self)), dtype=bool)
        leq = self.cod.leq
        for x in range(self.dom.n):
            out &= leq[np.ix_(self.table[rows, x], self.table[:, x])]
        return out

    def iter_order_chunks(self, chunk: int = _CHUNK):
        for start in range(0, len(self), chunk):
            rows = np.arange(start, min(start + chunk, len(self)))
            yield rows, self.order_rows(rows)

    @cached_property
    def order(self) -> np.ndarray:
        if len(self) > ORDER_MAX_MAPS:
            raise SizeLimit("maps for a materialised order matrix", ORDER_MAX_MAPS, len(self))
        out = self.order_rows(np.arange(len(self)))
        out.flags.writeable = False
        return out

    @cached_property
    def elementary_pairs(self) -> list[tuple[int, int]]:
        """Pairs ``a < b`` whose tables differ at exactly one element.

        Their reflexive-transitive closure is the full pointwise order: for
        ``f < g`` pick a maximal ``x`` with ``f(x) != g(x)``; raising ``f`` to
        ``g(x)`` at ``x`` alone stays monotone and lands between ``f`` and
        ``g``.
        """
        pairs = []
        strict_up = [[w for w in range(self.cod.n) if w != v and self.cod.leq[v, w]] for v in range(self.cod.n)]
        for a, m in enumerate(self.maps):
            t = list(m)
            for x in range(self.dom.n):
                old = t[x]
                for w in strict_up[old]:
                    t[x] = w
                    b = self._index.get(tuple(t))
                    if b is not None:
                        pairs.append((a, b))
                t[x] = old
        return pairs

    @cached_property
    def rank_sum(self) -> np.ndarray:
        """Strictly monotone along the pointwise order; sorting by it gives a linear extension."""
        rank = np.asarray(self.cod.rank, dtype=np.int64)
        if self.dom.n == 0:
            return np.zeros(len(self), dtype=np.int64)
        return rank[self.table].sum(axis=1)

    def as_poset(self) -> Poset:
        return Poset(self.order, check=False)


def enumerate_maps(dom: Poset, cod: Poset, max_maps: int = ENUM_MAX_MAPS) -> MapPoset:
    return MapPoset(dom, cod, list(iter_monotone(dom, cod, limit=max_maps)))


def count_maps(dom: Poset, cod: Poset, max_maps: int = ENUM_MAX_MAPS) -> int:
    return sum(1 for _ in iter_monotone(dom, cod, limit=max_maps))


def fixed_points(f: MonotoneMap) -> SubSet:
    if f.dom is not f.cod and f.dom != f.cod:
        raise DomainMismatch("fixed points need a self-map")
    return frozenset(x for x, y in enumerate(f.image) if x == y)


def compose(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """``f ∘ g``: first ``g``, then ``f``."""
    if g.cod is not f.dom and g.cod != f.dom:
        raise DomainMismatch("codomain of the inner map differs from domain of the outer map")
    return MonotoneMap(g.dom, f.cod, tuple(f.image[v] for v in g.image), check=False)


def evaluation_is_monotone(M: MapPoset, exhaustive: bool | None = None):
    """Check that ``(f, x) -> f(x)`` is monotone on ``C(P, P) × P``.

    Returns ``(True, None)`` or ``(False, ((a, x), (b, y)))`` with ``a <= b``,
    ``x <= y`` but ``maps[a][x] </= maps[b][y]``. Exhaustive over all pairs
    when the order matrix is small; otherwise checks the generating pairs
    (elementary map pairs and covers of ``P``), which suffices by transitivity.
    """
    P = M.cod
    if M.dom != P:
        raise DomainMismatch("evaluation check needs the space of self-maps")
    if exhaustive is None:
        exhaustive = len(M) <= ORDER_MAX_MAPS
    leq = P.leq
    tab = M.table
    if exhaustive:
        pairs = [(x, x) for x in range(P.n)] + P.strict_pairs
        for rows, block in M.iter_order_chunks():
            for x, y in pairs:
                bad = block & ~leq[np.ix_(tab[rows, x], tab[:, y])]
                if bad.any():
                    i, b = np.argwhere(bad)[0]
                    return False, ((int(rows[i]), x), (int(b), y))
        return True, None
    for a, b in M.elementary_pairs:
        for x in range(P.n):
            if not leq[tab[a, x], tab[b, x]]:
                return False, ((a, x), (b, x))
    for x, y in P.covers:
        col = leq[tab[:, x], tab[:, y]]
        if not col.all():
            a = int(np.flatnonzero(~col)[0])
            return False, ((a, x), (a, y))
    return True, None
