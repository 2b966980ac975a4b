"""Backtracking search for monotone maps with bitmask candidate sets.

Every routine that needs to enumerate or find order-preserving maps
(mapping spaces, fixed-point-free witnesses, retractions, families of fixed
points) goes through :func:`iter_monotone`.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from .errors import SizeLimit
from .poset import Poset, bits


class Stats:
    __slots__ = ("nodes",)

    def __init__(self):
        self.nodes = 0


def iter_monotone(
    dom: Poset,
    cod: Poset,
    order: Sequence[int] | None = None,
    domains: Sequence[int] | None = None,
    stats: Stats | None = None,
    limit: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield image tables of monotone maps ``dom -> cod``.

    ``order`` is the variable order (default: ``dom.linear_extension``);
    candidate values are tried in increasing index, so tables come out in
    lexicographic order read along ``order``. ``domains[x]`` restricts the
    image of ``x`` to a bitmask. After each assignment the candidate sets of
    comparable unassigned elements are narrowed (forward checking), and a
    branch dies as soon as one of them is empty.

    With ``limit`` set, :class:`SizeLimit` is raised as soon as more than
    ``limit`` tables would be produced.
    """
    n = dom.n
    order = list(dom.linear_extension if order is None else order)
    full = (1 << cod.n) - 1
    start = [full] * n if domains is None else [d & full for d in domains]
    if any(d == 0 for d in start):
        return
    if n == 0:
        yield ()
        return
    # element -> (strictly below it, strictly above it), as lists of positions
    pos = {x: k for k, x in enumerate(order)}
    later_below = []
    later_above = []
    for k, x in enumerate(order):
        later_below.append([y for y in bits(dom.down_masks[x]) if y != x and pos[y] > k])
        later_above.append([y for y in bits(dom.up_masks[x]) if y != x and pos[y] > k])
    cdown = cod.down_masks
    cup = cod.up_masks
    image = [0] * n
    count = 0
    if stats is None:
        stats = Stats()

    # iterative DFS; each frame holds the candidate mask still to try and the domain snapshot
    doms = list(start)
    frames: list[tuple[int, list[int]]] = [(doms[order[0]], doms)]
    while frames:
        k = len(frames) - 1
        cand, cur = frames[k]
        if cand == 0:
            frames.pop()
            continue
        low = cand & -cand
        frames[k] = (cand ^ low, cur)
        v = low.bit_length() - 1
        x = order[k]
        stats.nodes += 1
        nxt = cur
        ok = True
        if later_below[k] or later_above[k]:
            nxt = cur.copy()
            dv = cdown[v]
            for y in later_below[k]:
                d = nxt[y] & dv
                if not d:
                    ok = False
                    break
                nxt[y] = d
            if ok:
                uv = cup[v]
                for y in later_above[k]:
                    d = nxt[y] & uv
                    if not d:
                        ok = False
                        break
                    nxt[y] = d
        if not ok:
            continue
        image[x] = v
        if k + 1 == n:
            count += 1
            if limit is not None and count > limit:
                raise SizeLimit("number of monotone maps", limit, count)
            yield tuple(image)
        else:
            frames.append((nxt[order[k + 1]], nxt))


def first_monotone(dom, cod, order=None, domains=None, stats=None):
    return next(iter_monotone(dom, cod, order, domains, stats), None)
