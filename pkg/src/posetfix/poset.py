"""Finite posets, finite T0 spaces and the translation between them.

Elements of a poset are the integers ``0..n-1``. The order is stored as a
read-only boolean matrix ``leq`` with ``leq[i, j]`` meaning ``i <= j``.
Subsets are passed around either as ``frozenset`` of indices or as integer
bitmasks (bit ``i`` set iff ``i`` is a member); the bitmask form is what the
search routines use internally.

Open sets of the associated finite space are the down-closed subsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DomainMismatch,
    IndexOutOfRange,
    InvalidPoset,
    InvalidSpace,
    NotAWitness,
    NotKolmogorov,
    NotMonotone,
    SizeLimit,
)

TO_SPACE_MAX_N = 20
CANONICAL_MAX_N = 8
PRODUCT_MAX_N = 4096

SubSet = frozenset


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(subset, n: int | None = None) -> int:
    """Convert a set of indices, a boolean sequence or an int into a bitmask."""
    if isinstance(subset, (int, np.integer)) and not isinstance(subset, bool):
        return int(subset)
    if isinstance(subset, np.ndarray) and subset.dtype == bool:
        subset = np.flatnonzero(subset).tolist()
    mask = 0
    for i in subset:
        if n is not None and not 0 <= i < n:
            raise IndexOutOfRange(f"element {i} not in 0..{n - 1}")
        mask |= 1 << int(i)
    return mask


def to_subset(mask: int) -> SubSet:
    return frozenset(bits(mask))


def _close(leq: np.ndarray) -> np.ndarray:
    leq = leq.copy()
    for k in range(leq.shape[0]):
        leq |= leq[:, [k]] & leq[[k], :]
    return leq


class Poset:
    """Immutable finite partial order on ``range(n)``.

    Construct with :func:`from_covers`, :meth:`from_leq` or the small
    factories :meth:`chain`, :meth:`antichain`, :meth:`crown`.
    """

    def __init__(self, leq, labels: Sequence[str] | None = None, check: bool = True):
        leq = np.array(leq, dtype=bool, copy=True)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise InvalidPoset(f"incidence matrix must be square, got shape {leq.shape}")
        n = leq.shape[0]
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise InvalidPoset("one label per element required")
        leq.flags.writeable = False
        self.n = n
        self.leq = leq
        self.labels = labels
        if check:
            self.validate()

    def validate(self) -> None:
        leq = self.leq
        n = self.n
        if not leq[np.arange(n), np.arange(n)].all():
            raise InvalidPoset("relation is not reflexive")
        both = leq & leq.T
        both[np.arange(n), np.arange(n)] = False
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise InvalidPoset(f"relation is not antisymmetric: {i} <= {j} <= {i}")
        comp = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if (comp & ~leq).any():
            i, j = map(int, np.argwhere(comp & ~leq)[0])
            raise InvalidPoset(f"relation is not transitive at ({i}, {j})")

    @classmethod
    def from_leq(cls, leq, labels=None) -> "Poset":
        return cls(leq, labels)

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def crown(cls) -> "Poset":
        """The 4-crown: minimal elements 0, 1 below both maximal elements 2, 3."""
        return from_covers(4, [(0, 2), (0, 3), (1, 2), (1, 3)])

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.leq, other.leq))

    def __hash__(self) -> int:
        return hash((self.n, self.leq.tobytes()))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={self.covers})"

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """``down_masks[x]`` is the bitmask of ``{y | y <= x}``."""
        return tuple(to_mask(np.flatnonzero(self.leq[:, x]).tolist()) for x in range(self.n))

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(np.flatnonzero(self.leq[x, :]).tolist()) for x in range(self.n))

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        lt = self.leq.copy()
        lt[np.arange(self.n), np.arange(self.n)] = False
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        return [(int(i), int(j)) for i, j in np.argwhere(lt & ~between)]

    @cached_property
    def strict_pairs(self) -> list[tuple[int, int]]:
        lt = self.leq.copy()
        lt[np.arange(self.n), np.arange(self.n)] = False
        return [(int(i), int(j)) for i, j in np.argwhere(lt)]

    @cached_property
    def comparability_degree(self) -> tuple[int, ...]:
        comp = self.leq | self.leq.T
        return tuple(int(d) - 1 for d in comp.sum(axis=1))

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """A strictly monotone integer function: the size of each down-set."""
        return tuple(int(c) for c in self.leq.sum(axis=0))

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.n), key=lambda x: (self.rank[x], x)))

    def greatest(self) -> int | None:
        for x in range(self.n):
            if self.leq[:, x].all():
                return x
        return None

    def least(self) -> int | None:
        for x in range(self.n):
            if self.leq[x, :].all():
                return x
        return None

    def induced(self, elements: Sequence[int]) -> "Poset":
        """Subposet on ``elements`` (relabelled ``0..k-1`` in the given order)."""
        idx = list(elements)
        labels = [self.label(i) for i in idx] if self.labels is not None else None
        return Poset(self.leq[np.ix_(idx, idx)], labels, check=False)

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Poset in which old element ``i`` becomes ``perm[i]``."""
        inv = np.argsort(perm)
        return Poset(self.leq[np.ix_(inv, inv)], check=False)


@dataclass(frozen=True)
class FiniteSpace:
    """A finite topological space given by its complete list of open sets (bitmasks)."""

    n: int
    opens: tuple[int, ...]

    def __post_init__(self):
        opens = tuple(sorted(set(to_mask(u, self.n) for u in self.opens)))
        object.__setattr__(self, "opens", opens)
        full = (1 << self.n) - 1
        present = set(opens)
        if 0 not in present or full not in present:
            raise InvalidSpace("open sets must include the empty set and the whole space")
        for u in opens:
            if u & ~full:
                raise InvalidSpace(f"open set {bin(u)} has elements outside 0..{self.n - 1}")
            for v in opens:
                if (u | v) not in present or (u & v) not in present:
                    raise InvalidSpace("open sets are not closed under union and intersection")

    def is_open(self, subset) -> bool:
        return to_mask(subset, self.n) in self.opens

    def min_nbhd(self, x: int) -> int:
        """Intersection of all open sets containing ``x``, as a bitmask."""
        if not 0 <= x < self.n:
            raise IndexOutOfRange(f"element {x} not in 0..{self.n - 1}")
        result = (1 << self.n) - 1
        for u in self.opens:
            if u >> x & 1:
                result &= u
        return result

    def is_continuous(self, image: Sequence[int]) -> bool:
        """Whether the self-map ``image`` pulls open sets back to open sets."""
        present = set(self.opens)
        for u in self.opens:
            pre = 0
            for i, fi in enumerate(image):
                if u >> fi & 1:
                    pre |= 1 << i
            if pre not in present:
                return False
        return True


@dataclass(frozen=True)
class MonotoneMap:
    """Order-preserving map stored as an image table; validated on construction."""

    dom: Poset
    cod: Poset
    image: tuple[int, ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        if not self.check:
            return
        if len(image) != self.dom.n:
            raise DomainMismatch(f"image table has length {len(image)}, domain has {self.dom.n} elements")
        for v in image:
            if not 0 <= v < self.cod.n:
                raise IndexOutOfRange(f"image value {v} not in codomain")
        for i, j in self.dom.strict_pairs:
            if not self.cod.leq[image[i], image[j]]:
                raise NotMonotone(f"{i} <= {j} but f({i})={image[i]} is not <= f({j})={image[j]}")

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __len__(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, P: Poset) -> "MonotoneMap":
        return cls(P, P, tuple(range(P.n)), check=False)

    @classmethod
    def constant(cls, dom: Poset, cod: Poset, y: int) -> "MonotoneMap":
        return cls(dom, cod, (y,) * dom.n)


def from_covers(n: int, covers: Iterable[tuple[int, int]], labels=None) -> Poset:
    """Reflexive-transitive closure of a cover relation given as ``(low, high)`` pairs."""
    covers = [(int(a), int(b)) for a, b in covers]
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"cover ({a}, {b}) out of range for n={n}")
        succ[a].append(b)
    cycle = _find_cycle(n, succ)
    if cycle is not None:
        raise CycleDetected(cycle)
    leq = np.eye(n, dtype=bool)
    for a, b in covers:
        leq[a, b] = True
    return Poset(_close(leq), labels, check=False)


def _find_cycle(n: int, succ: list[list[int]]) -> list[int] | None:
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * n
    for root in range(n):
        if colour[root] != WHITE:
            continue
        path = [root]
        stack = [iter(succ[root])]
        colour[root] = GREY
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                colour[path.pop()] = BLACK
                stack.pop()
            elif colour[nxt] == GREY:
                return path[path.index(nxt):] + [nxt]
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                path.append(nxt)
                stack.append(iter(succ[nxt]))
    return None


def iter_down_sets(P: Poset) -> Iterator[int]:
    """Yield every down-closed subset of ``P`` as a bitmask."""
    order = P.linear_extension
    below = [P.down_masks[x] & ~(1 << x) for x in order]

    def rec(k: int, chosen: int):
        if k == len(order):
            yield chosen
            return
        yield from rec(k + 1, chosen)
        if below[k] & ~chosen == 0:
            yield from rec(k + 1, chosen | 1 << order[k])

    yield from rec(0, 0)


def min_open_nbhd(P: Poset, x: int) -> SubSet:
    if not 0 <= x < P.n:
        raise IndexOutOfRange(f"element {x} not in 0..{P.n - 1}")
    return to_subset(P.down_masks[x])


def is_open(P: Poset, U) -> bool:
    mask = to_mask(U, P.n)
    return all(P.down_masks[x] & ~mask == 0 for x in bits(mask))


def to_space(P: Poset, max_n: int = TO_SPACE_MAX_N) -> FiniteSpace:
    if P.n > max_n:
        raise SizeLimit("element count for open-set enumeration", max_n, P.n)
    return FiniteSpace(P.n, tuple(iter_down_sets(P)))


def specialization_poset(S: FiniteSpace) -> Poset:
    nbhd = [S.min_nbhd(x) for x in range(S.n)]
    seen: dict[int, int] = {}
    for x, u in enumerate(nbhd):
        if u in seen:
            raise NotKolmogorov((seen[u], x))
        seen[u] = x
    leq = np.zeros((S.n, S.n), dtype=bool)
    for i in range(S.n):
        for j in range(S.n):
            leq[i, j] = nbhd[i] & ~nbhd[j] == 0
    return Poset(leq, check=False)


def t0_witness_map(S: FiniteSpace, x: int, x2: int) -> tuple[int, ...]:
    """Fixed-point-free continuous self-map built from two topologically indistinguishable points.

    Sends ``x`` to ``x2`` and everything else to ``x``.
    """
    if x == x2 or S.min_nbhd(x) != S.min_nbhd(x2):
        raise NotAWitness(f"points {x} and {x2} are separated by an open set")
    image = tuple(x2 if y == x else x for y in range(S.n))
    assert S.is_continuous(image)
    assert all(image[y] != y for y in range(S.n))
    return image


def product(P: Poset, Q: Poset, max_n: int = PRODUCT_MAX_N) -> Poset:
    """Product order; the pair ``(p, q)`` has index ``p * Q.n + q``."""
    if P.n * Q.n > max_n:
        raise SizeLimit("product size", max_n, P.n * Q.n)
    leq = np.kron(P.leq.astype(np.uint8), Q.leq.astype(np.uint8)).astype(bool)
    labels = None
    if P.labels is not None or Q.labels is not None:
        labels = [f"({P.label(p)},{Q.label(q)})" for p in range(P.n) for q in range(Q.n)]
    return Poset(leq, labels)


def dual(P: Poset) -> Poset:
    return Poset(P.leq.T, P.labels, check=False)


def components(P: Poset) -> list[int]:
    """Bitmasks of the connected components of the comparability graph."""
    comp = [P.down_masks[x] | P.up_masks[x] for x in range(P.n)]
    remaining = (1 << P.n) - 1
    out = []
    while remaining:
        frontier = remaining & -remaining
        seen = 0
        while frontier:
            seen |= frontier
            nxt = 0
            for x in bits(frontier):
                nxt |= comp[x]
            frontier = nxt & ~seen
        out.append(seen)
        remaining &= ~seen
    return out


def is_connected(P: Poset) -> bool:
    return len(components(P)) == 1


def _refined_classes(P: Poset) -> list[int]:
    """Isomorphism-invariant colour per element (iterated up/down-degree refinement)."""
    n = P.n
    colour = [(P.rank[x], bin(P.up_masks[x]).count("1")) for x in range(n)]
    while True:
        sig = [
            (colour[x],
             tuple(sorted(colour[y] for y in bits(P.down_masks[x]) if y != x)),
             tuple(sorted(colour[y] for y in bits(P.up_masks[x]) if y != x)))
            for x in range(n)
        ]
        keys = sorted(set(sig))
        new = [keys.index(s) for s in sig]
        old_count = len(set(colour))
        colour = new
        if len(keys) == old_count:
            return colour


def canonical_form(P: Poset, max_n: int = CANONICAL_MAX_N) -> bytes:
    """Byte string equal for two posets exactly when they are order-isomorphic.

    Minimises the relabelled relation over all orderings compatible with an
    invariant colouring. Elements with identical strict up- and down-sets are
    interchangeable, so only one representative of each such twin group is
    tried at every position.
    """
    n = P.n
    if n > max_n:
        raise SizeLimit("element count for exact canonical form", max_n, n)
    if n == 0:
        return b"\x00"
    colour = _refined_classes(P)
    twin = {}
    twin_of = []
    for x in range(n):
        key = (colour[x], P.down_masks[x] & ~(1 << x), P.up_masks[x] & ~(1 << x))
        twin_of.append(twin.setdefault(key, x))
    slots = sorted(range(n), key=lambda x: colour[x])
    slot_colour = [colour[x] for x in slots]
    leq = P.leq.tolist()

    best: list[int] | None = None
    placed: list[int] = []
    code: list[int] = []
    used = [False] * n

    def rec(k: int):
        nonlocal best
        if k == n:
            if best is None or code < best:
                best = code.copy()
            return
        tried = set()
        for x in range(n):
            if used[x] or colour[x] != slot_colour[k] or twin_of[x] in tried:
                continue
            tried.add(twin_of[x])
            start = len(code)
            for y in placed:
                code.append(leq[y][x])
                code.append(leq[x][y])
            if best is not None and code > best[: len(code)]:
                del code[start:]
                continue
            used[x] = True
            placed.append(x)
            rec(k + 1)
            placed.pop()
            used[x] = False
            del code[start:]

    rec(0)
    header = bytes([n]) + bytes(sorted(slot_colour))
    packed = np.packbits(np.array(best, dtype=bool)).tobytes() if best else b""
    return header + b"|" + packed


def is_isomorphic_bruteforce(P: Poset, Q: Poset) -> bool:
    """Try every bijection; only for tiny posets."""
    if P.n != Q.n or int(P.leq.sum()) != int(Q.leq.sum()):
        return False
    for perm in permutations(range(P.n)):
        if np.array_equal(P.leq, Q.leq[np.ix_(perm, perm)]):
            return True
    return False
