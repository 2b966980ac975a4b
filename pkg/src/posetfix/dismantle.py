"""Beat points, cores, dismantlability and retractions between finite posets."""
from __future__ import annotations

from dataclasses import dataclass

from ._search import first_monotone, iter_monotone
from .errors import SizeLimit
from .poset import MonotoneMap, Poset, bits

DOWN_BEAT = "down-beat"
UP_BEAT = "up-beat"
RETRACTION_MAX_N = 16


def beat_points(P: Poset) -> list[tuple[int, str]]:
    """All beat points of ``P`` with their kind; an element may appear twice.

    ``x`` is a down-beat point when ``{y | y < x}`` has a greatest element
    and an up-beat point when ``{y | y > x}`` has a least element.
    """
    out = []
    for x in range(P.n):
        below = P.down_masks[x] & ~(1 << x)
        if below and any(P.down_masks[y] == below for y in bits(below)):
            out.append((x, DOWN_BEAT))
        above = P.up_masks[x] & ~(1 << x)
        if above and any(P.up_masks[y] == above for y in bits(above)):
            out.append((x, UP_BEAT))
    return out


@dataclass(frozen=True)
class CoreReport:
    """Removal sequence (original indices), the core and which original elements survive."""

    removal_sequence: tuple[tuple[int, str], ...]
    core: Poset
    core_elements: tuple[int, ...]

    @property
    def dismantlable(self) -> bool:
        return self.core.n == 1

    def to_json(self) -> dict:
        return {
            "dismantlable": self.dismantlable,
            "removal_sequence": [[x, kind] for x, kind in self.removal_sequence],
            "core": {"elements": list(self.core_elements), "covers": [
                [self.core_elements[a], self.core_elements[b]] for a, b in self.core.covers]},
        }


def core(P: Poset) -> CoreReport:
    """Strip beat points, smallest current index first, until none remain."""
    alive = list(range(P.n))
    Q = P
    seq = []
    while True:
        beats = beat_points(Q)
        if not beats:
            break
        x, kind = beats[0]
        seq.append((alive[x], kind))
        del alive[x]
        Q = P.induced(alive)
    return CoreReport(tuple(seq), Q, tuple(alive))


def replay(P: Poset, sequence) -> tuple[Poset, tuple[int, ...]]:
    """Remove the given original elements in order, checking each is a beat point of the right kind."""
    alive = list(range(P.n))
    Q = P
    for x, kind in sequence:
        i = alive.index(x)
        if (i, kind) not in beat_points(Q):
            raise ValueError(f"{x} is not a {kind} point at this stage")
        del alive[i]
        Q = P.induced(alive)
    return Q, tuple(alive)


def is_dismantlable(P: Poset) -> bool:
    return core(P).dismantlable


def find_retraction(Y: Poset, X: Poset, max_n: int = RETRACTION_MAX_N):
    """Find monotone ``s: X -> Y`` and ``r: Y -> X`` with ``r ∘ s = id``, or ``None``.

    ``s`` is tried in lexicographic order among order embeddings; for each,
    ``r`` is searched with ``r(s(x)) = x`` pinned.
    """
    if X.n > max_n or Y.n > max_n:
        raise SizeLimit("poset size for retraction search", max_n, max(X.n, Y.n))
    if X.n == 0:
        if Y.n:
            return None
        return MonotoneMap(X, Y, ()), MonotoneMap(Y, X, ())
    if Y.n < X.n:
        return None
    full = (1 << X.n) - 1
    for s in iter_monotone(X, Y):
        if len(set(s)) != X.n:
            continue
        if any(Y.leq[s[a], s[b]] and not X.leq[a, b] for a in range(X.n) for b in range(X.n)):
            continue
        doms = [full] * Y.n
        for x, y in enumerate(s):
            doms[y] = 1 << x
        r = first_monotone(Y, X, None, doms)
        if r is not None:
            return MonotoneMap(X, Y, s), MonotoneMap(Y, X, r)
    return None
