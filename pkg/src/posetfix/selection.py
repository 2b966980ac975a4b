"""Selection maps: monotone choices of a fixed point for every monotone self-map.

A selection map for ``X`` assigns to each ``f`` in ``C(X, X)`` an element
``Φ(f)`` with ``f(Φ(f)) = Φ(f)``, monotonically in the pointwise order.
:func:`find_selection_map` searches for one; the remaining functions build
selection maps out of others (products, retracts) and turn them into
families of fixed points.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainMismatch, NotARetract, OracleFailure, SizeLimit, VerificationFailure
from .fpp import FamilyOfSelfMaps, FixedPointFamily, has_fpp
from .mapspace import ENUM_MAX_MAPS, MapPoset, compose, enumerate_maps
from .poset import MonotoneMap, Poset, bits, product

VERIFY_EXHAUSTIVE_MAX = 20_000


@dataclass(frozen=True)
class SelectionMap:
    mapspace: MapPoset
    choice: tuple[int, ...]

    @property
    def X(self) -> Poset:
        return self.mapspace.cod

    def __call__(self, f) -> int:
        return self.choice[self.mapspace.index(f)]

    def to_json(self) -> dict:
        return {"sat": True, "choice": {str(k): v for k, v in enumerate(self.choice)}}


@dataclass(frozen=True)
class Unsat:
    """No selection map exists.

    ``reason`` is ``"empty-domain"`` when some self-map has no fixed point
    (``witness`` is such a map) and ``"exhausted"`` when the search ran out;
    ``wiped`` then lists the map indices whose candidate sets were emptied at
    the deepest failure.
    """

    reason: str
    mapspace: MapPoset | None = None
    witness: MonotoneMap | None = None
    wiped: tuple[int, ...] = ()
    nodes: int = 0

    def to_json(self) -> dict:
        return {"sat": False, "choice": None, "reason": self.reason}


@dataclass
class _Closures:
    P: Poset
    up: dict = field(default_factory=dict)
    down: dict = field(default_factory=dict)

    def upc(self, mask: int) -> int:
        r = self.up.get(mask)
        if r is None:
            r = 0
            for v in bits(mask):
                r |= self.P.up_masks[v]
            self.up[mask] = r
        return r

    def downc(self, mask: int) -> int:
        r = self.down.get(mask)
        if r is None:
            r = 0
            for v in bits(mask):
                r |= self.P.down_masks[v]
            self.down[mask] = r
        return r


def _fixmasks(M: MapPoset) -> list[int]:
    out = []
    for m in M.maps:
        mask = 0
        for x, v in enumerate(m):
            if x == v:
                mask |= 1 << x
        out.append(mask)
    return out


def solve_selection(M: MapPoset, stats: dict | None = None) -> SelectionMap | Unsat:
    """CSP search for a selection map over an already enumerated ``C(X, X)``.

    Variables are map indices, domains their fixed-point sets. The
    monotonicity constraint is posted on the elementary pairs of ``M``
    and kept arc consistent after every assignment. Variables are taken in
    a linear extension of the pointwise order (smaller domains first among
    equal rank sums); values in increasing element index.
    """
    P = M.cod
    cl = _Closures(P)
    m = len(M)
    doms = _fixmasks(M)
    if any(d == 0 for d in doms):
        k = doms.index(0)
        return Unsat("empty-domain", M, M.get(k))
    succs: list[list[int]] = [[] for _ in range(m)]
    preds: list[list[int]] = [[] for _ in range(m)]
    for a, b in M.elementary_pairs:
        succs[a].append(b)
        preds[b].append(a)
    trail: list[tuple[int, int]] = []
    wiped: list[int] = []

    def propagate(queue: list[int]) -> bool:
        inq = set(queue)
        while queue:
            v = queue.pop()
            inq.discard(v)
            dv = doms[v]
            up = cl.upc(dv)
            for w in succs[v]:
                dw = doms[w]
                nw = dw & up
                if nw != dw:
                    if not nw:
                        wiped.append(w)
                        return False
                    trail.append((w, dw))
                    doms[w] = nw
                    if w not in inq:
                        inq.add(w)
                        queue.append(w)
            down = cl.downc(dv)
            for w in preds[v]:
                dw = doms[w]
                nw = dw & down
                if nw != dw:
                    if not nw:
                        wiped.append(w)
                        return False
                    trail.append((w, dw))
                    doms[w] = nw
                    if w not in inq:
                        inq.add(w)
                        queue.append(w)
        return True

    nodes = 0
    if not propagate(list(range(m))):
        return Unsat("exhausted", M, wiped=tuple(wiped), nodes=nodes)
    trail.clear()

    rank = M.rank_sum
    order = sorted(range(m), key=lambda k: (int(rank[k]), bin(doms[k]).count("1"), k))

    deepest = -1
    deepest_wiped: tuple[int, ...] = ()
    frames: list[list[int]] = []
    depth = 0
    descend = True
    while True:
        if descend:
            if depth == m:
                break
            var = order[depth]
            frames.append([var, doms[var], len(trail)])
        frame = frames[-1]
        var, cand, mark = frame
        while len(trail) > mark:
            w, old = trail.pop()
            doms[w] = old
        if cand == 0:
            frames.pop()
            depth -= 1
            if not frames:
                if stats is not None:
                    stats["nodes"] = nodes
                return Unsat("exhausted", M, wiped=deepest_wiped, nodes=nodes)
            descend = False
            continue
        low = cand & -cand
        frame[1] = cand ^ low
        nodes += 1
        ok = True
        if doms[var] != low:
            trail.append((var, doms[var]))
            doms[var] = low
            wiped.clear()
            ok = propagate([var])
        if ok:
            depth += 1
            descend = True
        else:
            if depth >= deepest:
                deepest = depth
                deepest_wiped = tuple(wiped)
            descend = False
    if stats is not None:
        stats["nodes"] = nodes
    choice = tuple(d.bit_length() - 1 for d in doms)
    return SelectionMap(M, choice)


def find_selection_map(P: Poset, max_maps: int = ENUM_MAX_MAPS, stats: dict | None = None) -> SelectionMap | Unsat:
    """Search for a selection map on ``P``.

    Posets without the fixed point property are answered with an
    ``"empty-domain"`` :class:`Unsat` before ``C(P, P)`` is enumerated.
    """
    t0 = time.perf_counter()
    report = has_fpp(P)
    if not report.holds:
        if stats is not None:
            stats["nodes"] = report.nodes
            stats["elapsed"] = time.perf_counter() - t0
        return Unsat("empty-domain", None, report.witness, nodes=report.nodes)
    M = enumerate_maps(P, P, max_maps)
    result = solve_selection(M, stats)
    if stats is not None:
        stats["elapsed"] = time.perf_counter() - t0
    return result


def verify_selection(P: Poset, phi: SelectionMap, exhaustive: bool | None = None):
    """Check the fixed-point and monotonicity conditions of ``phi``.

    Returns ``(True, None)`` or ``(False, violation)``; ``violation`` is
    ``("fixed-point", k)`` or ``("monotone", a, b)`` with ``maps[a] <= maps[b]``
    but ``choice[a] </= choice[b]``.
    """
    M = phi.mapspace
    if M.dom != P or M.cod != P:
        raise DomainMismatch("selection map is not over this poset")
    if len(phi.choice) != len(M):
        return False, ("length", len(phi.choice))
    choice = np.asarray(phi.choice, dtype=np.int64)
    for k, m in enumerate(M.maps):
        c = phi.choice[k]
        if not 0 <= c < P.n or m[c] != c:
            return False, ("fixed-point", k)
    if exhaustive is None:
        exhaustive = len(M) <= VERIFY_EXHAUSTIVE_MAX
    if exhaustive:
        for rows, block in M.iter_order_chunks():
            bad = block & ~P.leq[np.ix_(choice[rows], choice)]
            if bad.any():
                i, b = np.argwhere(bad)[0]
                return False, ("monotone", int(rows[i]), int(b))
    else:
        for a, b in M.elementary_pairs:
            if not P.leq[choice[a], choice[b]]:
                return False, ("monotone", a, b)
    return True, None


def iterate_selection(P: Poset, from_top: bool = True, M: MapPoset | None = None) -> SelectionMap:
    """Selection map ``f -> f^n(top)`` (or ``f^n(bottom)``), for posets with a greatest (least) element."""
    start = P.greatest() if from_top else P.least()
    if start is None:
        raise ValueError("poset has no greatest element" if from_top else "poset has no least element")
    if M is None:
        M = enumerate_maps(P, P)
    choice = []
    for m in M.maps:
        x = start
        for _ in range(P.n):
            x = m[x]
        choice.append(x)
    return SelectionMap(M, tuple(choice))


def criterion_family_selection(phi: SelectionMap, f: FamilyOfSelfMaps) -> FixedPointFamily:
    """Family of fixed points ``t -> Φ(f_t)`` for a family of self-maps ``f``."""
    if f.X != phi.X:
        raise DomainMismatch("family and selection map live on different posets")
    p = tuple(phi(f.slice(t)) for t in range(f.T.n))
    return FixedPointFamily(f, p)


def _first_fixed_point(g: MonotoneMap) -> int:
    for x, v in enumerate(g.image):
        if x == v:
            return x
    raise OracleFailure("self-map has no fixed point")


def selection_oracle(psi: SelectionMap) -> Callable[[MonotoneMap], int]:
    return lambda g: psi(g)


def product_fixed_point(
    phi_X: SelectionMap,
    f: MonotoneMap,
    Y: Poset,
    oracle: Callable[[MonotoneMap], int] | None = None,
) -> tuple[int, int]:
    """Fixed point ``(x, y)`` of a self-map ``f`` of ``X × Y`` from a selection map on ``X``.

    For each ``y`` the slice ``x -> pr_X f(x, y)`` gets the fixed point
    ``Φ(slice)``; feeding that back gives a monotone self-map of ``Y`` whose
    fixed point ``y`` (supplied by ``oracle``) determines the answer.
    """
    X = phi_X.X
    ny = Y.n
    if f.dom.n != X.n * ny:
        raise DomainMismatch("self-map is not on the product of the given posets")
    if oracle is None:
        oracle = _first_fixed_point
    img = f.image

    def x_of(y: int) -> int:
        return phi_X(tuple(img[x * ny + y] // ny for x in range(X.n)))

    g = MonotoneMap(Y, Y, tuple(img[x_of(y) * ny + y] % ny for y in range(ny)))
    y = oracle(g)
    if y is None or g.image[y] != y:
        raise OracleFailure(f"oracle returned {y}, not a fixed point")
    x = x_of(y)
    assert img[x * ny + y] == x * ny + y
    return x, y


def product_selection(phi_X: SelectionMap, phi_Y: SelectionMap, max_maps: int = ENUM_MAX_MAPS) -> SelectionMap:
    """Selection map on ``X × Y`` built from selection maps on both factors."""
    X, Y = phi_X.X, phi_Y.X
    XY = product(X, Y)
    M = enumerate_maps(XY, XY, max_maps)
    oracle = selection_oracle(phi_Y)
    choice = []
    for k in range(len(M)):
        x, y = product_fixed_point(phi_X, M.get(k), Y, oracle)
        choice.append(x * Y.n + y)
    result = SelectionMap(M, tuple(choice))
    ok, violation = verify_selection(XY, result)
    if not ok:
        raise VerificationFailure(f"product selection map fails: {violation}")
    return result


def transfer_selection_along_retract(phi_Y: SelectionMap, s: MonotoneMap, r: MonotoneMap) -> SelectionMap:
    """Selection map on a retract ``X`` of ``Y``: ``Φ_X(f) = r(Φ_Y(s f r))``."""
    X = s.dom
    if s.cod != phi_Y.X or r.dom != phi_Y.X or r.cod != X:
        raise DomainMismatch("retraction maps do not match the selection map")
    if compose(r, s).image != tuple(range(X.n)):
        raise NotARetract("r ∘ s is not the identity")
    M = enumerate_maps(X, X)
    choice = []
    for m in M.maps:
        g = tuple(s.image[m[r.image[y]]] for y in range(phi_Y.X.n))
        choice.append(r.image[phi_Y(g)])
    result = SelectionMap(M, tuple(choice))
    ok, violation = verify_selection(X, result)
    if not ok:
        raise VerificationFailure(f"transferred selection map fails: {violation}")
    return result
