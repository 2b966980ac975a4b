"""Named posets used throughout the tests and demos."""
from __future__ import annotations

from .poset import Poset, from_covers

# Columns a (left), b (middle), c (right), each listed bottom to top.
# each listed bottom to top. Straight segments through a drawn node are read as
# two covers through that node.
RIVAL_LABELS = ("a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3")
RIVAL_COVERS = (
    (0, 1), (1, 2), (6, 7), (7, 8), (0, 4), (4, 8), (6, 4),
    (4, 2), (3, 1), (1, 5), (3, 7), (7, 5), (3, 4),
)


def rival() -> Poset:
    """Nine-element poset with the fixed point property and no beat points."""
    return from_covers(9, RIVAL_COVERS, labels=RIVAL_LABELS)


def chain(n: int) -> Poset:
    return Poset.chain(n)


def antichain(n: int) -> Poset:
    return Poset.antichain(n)


def crown() -> Poset:
    return Poset.crown()


def singleton() -> Poset:
    return Poset.chain(1)
