"""Brute-force oracles shared by the test modules.

Nothing here calls into the search code of posetfix; only the Poset
container is used.
"""
import itertools

import numpy as np
import pytest

from posetfix.poset import Poset
from posetfix.zoo import rival


def brute_monotone(dom: Poset, cod: Poset):
    """All monotone tables dom -> cod, by filtering every table."""
    out = []
    pairs = [(i, j) for i in range(dom.n) for j in range(dom.n) if dom.leq[i, j]]
    for table in itertools.product(range(cod.n), repeat=dom.n):
        if all(cod.leq[table[i], table[j]] for i, j in pairs):
            out.append(table)
    return out


def labelled_posets_natural(n: int):
    """Every poset on n points with a natural labelling (i < j whenever i is below j).

    Enumerates all DAGs on upper-triangular edges and takes closures; every
    isomorphism class shows up at least once.
    """
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    for bits in range(1 << len(slots)):
        leq = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(slots):
            if bits >> k & 1:
                leq[i, j] = True
        for k in range(n):
            leq |= leq[:, [k]] & leq[[k], :]
        key = leq.tobytes()
        if key not in seen:
            seen.add(key)
            yield Poset(leq, check=False)


def brute_canonical(P: Poset) -> bytes:
    """Lexicographically least relabelled relation over all n! permutations."""
    best = None
    for perm in itertools.permutations(range(P.n)):
        code = P.leq[np.ix_(perm, perm)].tobytes()
        if best is None or code < best:
            best = code
    return bytes([P.n]) + (best or b"")


def iso_class_count(n: int) -> int:
    return len({brute_canonical(P) for P in labelled_posets_natural(n)})


@pytest.fixture(scope="session")
def rival_poset():
    return rival()


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[k])
