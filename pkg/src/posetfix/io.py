"""Reading and writing poset files.

Two formats are accepted:

JSON::

    {"name": "crown", "elements": ["a", "b", "c", "d"],
     "covers": [["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"]]}

Plain text: the element count on the first line, then one ``i j`` pair per
line meaning ``i < j`` is a cover. Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import DuplicateElement, ParseError
from .poset import Poset, from_covers


def parse_poset(source) -> Poset:
    """Parse a poset from a path or from the file contents themselves."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and os.path.exists(source)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = str(source)
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def _parse_json(text: str) -> Poset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict) or "elements" not in doc:
        raise ParseError("JSON poset needs an 'elements' list")
    elements = [str(e) for e in doc["elements"]]
    index: dict[str, int] = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElement(f"element {e!r} listed twice")
        index[e] = i
    covers = []
    for k, pair in enumerate(doc.get("covers", [])):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ParseError(f"cover #{k} is not a pair")
        lo, hi = (str(p) for p in pair)
        for e in (lo, hi):
            if e not in index:
                raise ParseError(f"cover #{k} mentions unknown element {e!r}")
        covers.append((index[lo], index[hi]))
    return from_covers(len(elements), covers, labels=elements)


def _parse_text(text: str) -> Poset:
    n = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(nums) != 1 or nums[0] < 0:
                raise ParseError("first line must be the element count", lineno)
            n = nums[0]
            continue
        if len(nums) != 2:
            raise ParseError("cover lines need exactly two indices", lineno)
        if not all(0 <= v < n for v in nums):
            raise ParseError(f"index out of range 0..{n - 1}", lineno)
        covers.append((nums[0], nums[1]))
    if n is None:
        raise ParseError("empty poset file")
    return from_covers(n, covers)


def poset_to_json(P: Poset, name: str = "") -> dict:
    labels = [P.label(i) for i in range(P.n)]
    return {"name": name, "elements": labels, "covers": [[labels[a], labels[b]] for a, b in P.covers]}


def poset_to_text(P: Poset) -> str:
    return "\n".join([str(P.n)] + [f"{a} {b}" for a, b in P.covers]) + "\n"
