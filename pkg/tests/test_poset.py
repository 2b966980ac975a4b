import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import brute_canonical, labelled_posets_natural
from posetfix.errors import (
    CycleDetected,
    IndexOutOfRange,
    InvalidPoset,
    InvalidSpace,
    NotAWitness,
    NotKolmogorov,
    NotMonotone,
    SizeLimit,
)
from posetfix.poset import (
    FiniteSpace,
    MonotoneMap,
    Poset,
    canonical_form,
    dual,
    from_covers,
    is_connected,
    is_isomorphic_bruteforce,
    is_open,
    min_open_nbhd,
    product,
    specialization_poset,
    t0_witness_map,
    to_space,
)
from posetfix.zoo import RIVAL_COVERS, antichain, chain, crown
from strategies import posets

SIERPINSKI = FiniteSpace(2, (0b00, 0b01, 0b11))


def test_from_covers_singleton():
    P = from_covers(1, [])
    assert P.n == 1 and P.leq.tolist() == [[True]]


def test_from_covers_chain():
    P = from_covers(2, [(0, 1)])
    assert P.leq.tolist() == [[True, True], [False, True]]


def test_from_covers_rival(rival_poset):
    P = rival_poset
    assert P.n == 9
    assert sorted(P.covers) == sorted(RIVAL_COVERS)
    # a1 < b2 < c3 and c1 < b2 < a3 through the middle node
    assert P.le(0, 8) and P.le(6, 2)
    assert not P.le(0, 6)


def test_from_covers_cycle():
    with pytest.raises(CycleDetected) as info:
        from_covers(3, [(0, 1), (1, 2), (2, 0)])
    assert info.value.cycle[0] == info.value.cycle[-1]
    assert set(info.value.cycle) == {0, 1, 2}


def test_from_covers_range():
    with pytest.raises(IndexOutOfRange):
        from_covers(2, [(0, 2)])


def test_poset_validation():
    with pytest.raises(InvalidPoset):
        Poset([[True, True], [True, True]])
    with pytest.raises(InvalidPoset):
        Poset([[False]])
    with pytest.raises(InvalidPoset):
        Poset([[1, 1, 0], [0, 1, 1], [0, 0, 1]])


def test_leq_is_read_only():
    P = chain(3)
    with pytest.raises(ValueError):
        P.leq[0, 0] = False


def test_min_open_nbhd():
    C = chain(2)
    assert min_open_nbhd(C, 1) == {0, 1}
    assert min_open_nbhd(C, 0) == {0}
    assert min_open_nbhd(antichain(2), 0) == {0}
    with pytest.raises(IndexOutOfRange):
        min_open_nbhd(C, 2)


def test_is_open():
    C = chain(2)
    assert is_open(C, {0})
    assert not is_open(C, {1})
    assert is_open(C, set())
    assert is_open(crown(), set())
    assert is_open(C, np.array([True, False]))


def test_to_space_small():
    assert to_space(chain(1)).opens == (0, 1)
    assert to_space(chain(2)).opens == (0b00, 0b01, 0b11)


@pytest.mark.parametrize("n", range(1, 8))
def test_to_space_chain_has_n_plus_1_opens(n):
    # oracle: every subset tested for down-closure directly
    P = chain(n)
    expected = sum(
        1 for mask in range(1 << n)
        if all(not (mask >> j & 1) or all(mask >> i & 1 for i in range(n) if P.leq[i, j]) for j in range(n))
    )
    assert expected == n + 1
    assert len(to_space(P).opens) == n + 1


def test_to_space_size_limit():
    with pytest.raises(SizeLimit):
        to_space(antichain(21))


def test_specialization_poset_sierpinski():
    assert specialization_poset(SIERPINSKI) == chain(2)


def test_specialization_poset_indiscrete():
    with pytest.raises(NotKolmogorov) as info:
        specialization_poset(FiniteSpace(2, (0, 0b11)))
    assert info.value.pair == (0, 1)


def test_finite_space_validation():
    with pytest.raises(InvalidSpace):
        FiniteSpace(2, (0b01,))
    with pytest.raises(InvalidSpace):
        FiniteSpace(3, (0, 0b001, 0b010, 0b111))


@pytest.mark.parametrize("n", range(0, 5))
def test_round_trip_exhaustive(n):
    for P in labelled_posets_natural(n):
        assert specialization_poset(to_space(P)) == P


@settings(max_examples=60, deadline=None)
@given(posets(max_n=6))
def test_round_trip_random_labelling(P):
    S = to_space(P)
    assert specialization_poset(S) == P
    for x in range(P.n):
        nbhd = min_open_nbhd(P, x)
        assert S.is_open(nbhd)
        containing = [u for u in S.opens if u >> x & 1]
        assert all(set(nbhd) <= {i for i in range(P.n) if u >> i & 1} for u in containing)


@settings(max_examples=40, deadline=None)
@given(posets(max_n=5))
def test_is_open_matches_space(P):
    opens = set(to_space(P).opens)
    for mask in range(1 << P.n):
        subset = {i for i in range(P.n) if mask >> i & 1}
        assert is_open(P, subset) == (mask in opens)


def test_t0_witness_indiscrete():
    S = FiniteSpace(2, (0, 0b11))
    assert t0_witness_map(S, 0, 1) == (1, 0)
    S3 = FiniteSpace(3, (0, 0b111))
    assert t0_witness_map(S3, 0, 2) == (2, 0, 0)


def test_t0_witness_rejects_t0_pair():
    with pytest.raises(NotAWitness):
        t0_witness_map(SIERPINSKI, 0, 1)


def test_t0_witness_in_non_t0_space():
    # {0,1} glued, 2 above them: opens ∅, {0,1}, {0,1,2}
    S = FiniteSpace(3, (0, 0b011, 0b111))
    f = t0_witness_map(S, 1, 0)
    assert S.is_continuous(f) and all(f[i] != i for i in range(3))


def test_product_examples():
    L = product(chain(2), chain(2))
    assert L.n == 4
    assert L.least() == 0 and L.greatest() == 3
    assert not L.le(1, 2) and not L.le(2, 1)
    P = crown()
    assert product(P, chain(1)) == P
    assert product(antichain(2), antichain(2)) == antichain(4)


def test_product_size_limit():
    with pytest.raises(SizeLimit):
        product(chain(70), chain(70))


def test_dual():
    assert dual(chain(2)).leq.tolist() == [[True, False], [True, True]]
    assert dual(antichain(3)) == antichain(3)


@settings(max_examples=50, deadline=None)
@given(posets(max_n=6), posets(max_n=4))
def test_constructions_preserve_poset_axioms(P, Q):
    dual(P).validate()
    assert dual(dual(P)) == P
    product(P, Q).validate()


def test_connectivity(rival_poset):
    assert is_connected(chain(1))
    assert not is_connected(antichain(2))
    assert is_connected(rival_poset)
    assert not is_connected(Poset.from_leq(np.zeros((0, 0), dtype=bool)))


def test_monotone_map_validation():
    C = chain(2)
    MonotoneMap(C, C, (0, 1))
    with pytest.raises(NotMonotone):
        MonotoneMap(C, C, (1, 0))


def test_canonical_form_examples():
    C = chain(2)
    assert canonical_form(C) == canonical_form(C.relabel([1, 0]))
    assert canonical_form(C) != canonical_form(antichain(2))
    with pytest.raises(SizeLimit):
        canonical_form(antichain(9))


def test_canonical_form_four_elements():
    reps = {}
    for P in labelled_posets_natural(4):
        reps.setdefault(brute_canonical(P), P)
    assert len(reps) == 16
    assert len({canonical_form(P) for P in reps.values()}) == 16


@pytest.mark.parametrize("n", range(1, 6))
def test_canonical_form_agrees_with_bruteforce_iso(n):
    posets_n = list(labelled_posets_natural(n))
    classes = {}
    for P in posets_n:
        classes.setdefault(brute_canonical(P), []).append(P)
    mine = {}
    for key, members in classes.items():
        forms = {canonical_form(P) for P in members}
        assert len(forms) == 1
        mine[forms.pop()] = key
    assert len(mine) == len(classes)


@settings(max_examples=40, deadline=None)
@given(posets(min_n=1, max_n=6), posets(min_n=1, max_n=6))
def test_canonical_form_iso_complete(P, Q):
    if P.n != Q.n:
        return
    assert (canonical_form(P) == canonical_form(Q)) == is_isomorphic_bruteforce(P, Q)


@settings(max_examples=40, deadline=None)
@given(posets(min_n=1, max_n=7))
def test_canonical_form_relabel_invariant(P):
    for perm in itertools.islice(itertools.permutations(range(P.n)), 0, 720, 97):
        assert canonical_form(P.relabel(perm)) == canonical_form(P)
