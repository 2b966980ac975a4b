import itertools

import pytest

from conftest import brute_monotone
from posetfix.catalog import catalog
from posetfix.dismantle import DOWN_BEAT, UP_BEAT, beat_points, core, find_retraction, replay
from posetfix.errors import SizeLimit
from posetfix.fpp import has_fpp
from posetfix.mapspace import compose
from posetfix.poset import canonical_form
from posetfix.zoo import antichain, chain, crown, singleton


def brute_beats(P):
    out = []
    for x in range(P.n):
        lower = [y for y in range(P.n) if y != x and P.leq[y, x]]
        upper = [y for y in range(P.n) if y != x and P.leq[x, y]]
        if any(all(P.leq[z, g] for z in lower) for g in lower):
            out.append((x, DOWN_BEAT))
        if any(all(P.leq[l, z] for z in upper) for l in upper):
            out.append((x, UP_BEAT))
    return out


def brute_retract(Y, X):
    ss = brute_monotone(X, Y)
    rs = brute_monotone(Y, X)
    return any(all(r[s[x]] == x for x in range(X.n)) for s in ss for r in rs)


def all_cores(P):
    """Cores reached by every possible removal order (as canonical forms)."""
    seen = {}

    def rec(alive):
        key = tuple(alive)
        if key in seen:
            return
        Q = P.induced(alive)
        beats = {x for x, _ in beat_points(Q)}
        seen[key] = None if beats else canonical_form(Q)
        for i in beats:
            rec(alive[:i] + alive[i + 1:])

    rec(list(range(P.n)))
    return {v for v in seen.values() if v is not None}


def test_beat_points_examples(rival_poset):
    assert beat_points(chain(2)) == [(0, UP_BEAT), (1, DOWN_BEAT)]
    assert beat_points(crown()) == []
    assert beat_points(rival_poset) == []
    assert brute_beats(rival_poset) == []


def test_beat_points_match_definition():
    for P in catalog(5):
        assert beat_points(P) == brute_beats(P)


@pytest.mark.parametrize("n", range(1, 7))
def test_chain_core(n):
    report = core(chain(n))
    assert report.dismantlable and report.core.n == 1
    Q, alive = replay(chain(n), report.removal_sequence)
    assert Q == report.core and alive == report.core_elements


def test_crown_core():
    report = core(crown())
    assert not report.dismantlable and report.core == crown()
    assert report.removal_sequence == ()


def test_rival_core(rival_poset):
    report = core(rival_poset)
    assert not report.dismantlable
    assert report.core_elements == tuple(range(9))


def test_core_has_no_beat_points_and_replays():
    for P in catalog(5):
        report = core(P)
        assert beat_points(report.core) == []
        assert replay(P, report.removal_sequence)[0] == report.core


def test_core_independent_of_removal_order():
    for P in catalog(5):
        assert len(all_cores(P)) == 1


def test_dismantlable_implies_fpp():
    for P in catalog(5):
        if core(P).dismantlable:
            assert has_fpp(P).holds


def test_find_retraction_examples():
    s, r = find_retraction(crown(), singleton())
    assert compose(r, s).image == (0,)
    s, r = find_retraction(chain(3), chain(2))
    assert compose(r, s).image == (0, 1)
    assert find_retraction(antichain(2), chain(2)) is None
    assert not brute_retract(antichain(2), chain(2))


def test_find_retraction_matches_bruteforce():
    small = list(catalog(3))
    for Y, X in itertools.product(small, repeat=2):
        found = find_retraction(Y, X)
        assert (found is not None) == brute_retract(Y, X)
        if found is not None:
            s, r = found
            assert compose(r, s).image == tuple(range(X.n))


def test_find_retraction_size_limit():
    with pytest.raises(SizeLimit):
        find_retraction(antichain(20), singleton())


def test_retracts_inherit_fpp():
    small = list(catalog(4))
    hits = 0
    for Y, X in itertools.product(small, repeat=2):
        if find_retraction(Y, X) is not None and has_fpp(Y).holds:
            hits += 1
            assert has_fpp(X).holds
    assert hits > 0
