import itertools
import random

import pytest

from posetfix.catalog import catalog, posets_of_size
from posetfix.dismantle import find_retraction, is_dismantlable
from posetfix.errors import NotARetract
from posetfix.fpp import FamilyOfSelfMaps, fixed_point_families, has_fpp, iter_families
from posetfix.mapspace import enumerate_maps
from posetfix.poset import MonotoneMap, canonical_form, dual, product
from posetfix.selection import (
    SelectionMap,
    Unsat,
    criterion_family_selection,
    find_selection_map,
    iterate_selection,
    product_fixed_point,
    product_selection,
    selection_oracle,
    transfer_selection_along_retract,
    verify_selection,
)
from posetfix.zoo import antichain, chain, crown, singleton


def brute_selections(P):
    """All choice tables meeting both conditions, trying every table of fixed points."""
    M = enumerate_maps(P, P)
    out = []
    fixed = [[x for x in range(P.n) if m[x] == x] for m in M.maps]
    for choice in itertools.product(*fixed):
        if all(P.leq[choice[a], choice[b]] for a in range(len(M)) for b in range(len(M)) if M.is_leq(a, b)):
            out.append(choice)
    return M, out


def test_two_chain_selection():
    P = chain(2)
    M, valid = brute_selections(P)
    assert (0, 0, 1) in valid
    phi = find_selection_map(P)
    assert isinstance(phi, SelectionMap)
    assert phi.choice in valid
    assert verify_selection(P, phi) == (True, None)


def test_antichain_empty_domain():
    result = find_selection_map(antichain(2))
    assert isinstance(result, Unsat) and result.reason == "empty-domain"
    assert result.witness.image == (1, 0)


def test_rival_selection(rival_poset):
    phi = find_selection_map(rival_poset)
    assert isinstance(phi, SelectionMap)
    assert verify_selection(rival_poset, phi) == (True, None)
    assert verify_selection(rival_poset, phi, exhaustive=False) == (True, None)


def test_selection_is_deterministic(rival_poset):
    assert find_selection_map(rival_poset).choice == find_selection_map(rival_poset).choice


def test_verify_tampering():
    P = chain(2)
    M = enumerate_maps(P, P)  # const0, id, const1
    assert verify_selection(P, SelectionMap(M, (0, 0, 1)))[0]
    assert verify_selection(P, SelectionMap(M, (0, 1, 1)))[0]
    ok, violation = verify_selection(P, SelectionMap(M, (0, 0, 0)))
    assert not ok and violation == ("fixed-point", 2)


def test_verify_detects_monotonicity_violation():
    P = chain(3)
    M = enumerate_maps(P, P)
    phi = iterate_selection(P, from_top=True, M=M)
    ident = M.index((0, 1, 2))
    choice = list(phi.choice)
    choice[ident] = 0  # id sits above maps whose top iterate is 1 or 2
    ok, violation = verify_selection(P, SelectionMap(M, tuple(choice)))
    assert not ok and violation[0] == "monotone"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_csp_agrees_with_brute_force(n):
    for P in posets_of_size(n):
        M, valid = brute_selections(P)
        result = find_selection_map(P)
        assert isinstance(result, SelectionMap) == bool(valid)
        if valid:
            assert result.choice in valid


def test_catalog_selection_implications():
    for P in catalog(5):
        result = find_selection_map(P)
        sat = isinstance(result, SelectionMap)
        if sat:
            assert verify_selection(P, result)[0]
            assert has_fpp(P).holds
        if is_dismantlable(P):
            assert sat


def test_iterate_certificates():
    for P in catalog(5):
        if P.greatest() is not None:
            assert verify_selection(P, iterate_selection(P, from_top=True))[0]
        if P.least() is not None:
            assert verify_selection(P, iterate_selection(P, from_top=False))[0]
            assert verify_selection(dual(P), iterate_selection(dual(P), from_top=True))[0]


def test_minimal_maximal_literal_reading():
    # every nonempty finite poset has minimal and maximal elements, so the literal
    # reading would give every one a selection map; the catalog refutes it
    counterexamples = [P for P in catalog(4) if not isinstance(find_selection_map(P), SelectionMap)]
    forms = {canonical_form(P) for P in counterexamples}
    assert canonical_form(antichain(2)) in forms
    assert canonical_form(crown()) in forms
    for P in counterexamples:
        assert P.greatest() is None and P.least() is None


def test_unsat_exhausted_has_no_selection():
    # the evaluation family would be a selection map; CSP and brute force agree on all n<=3 Unsat cases
    for P in posets_of_size(3):
        result = find_selection_map(P)
        if isinstance(result, Unsat):
            _, valid = brute_selections(P)
            assert valid == []


def test_criterion_constant_and_identity_families():
    X = chain(3)
    phi = find_selection_map(X)
    T = chain(2)
    ident = FamilyOfSelfMaps.from_function(T, X, lambda t, x: x)
    p = criterion_family_selection(phi, ident)
    assert p.p == (phi(MonotoneMap.identity(X)),) * 2
    q = (0, 2)
    const = FamilyOfSelfMaps.from_function(T, X, lambda t, x: q[t])
    assert criterion_family_selection(phi, const).p == q


def test_criterion_random_families_on_chains():
    X, T = chain(2), chain(3)
    phi = find_selection_map(X)
    for f in iter_families(X, T):
        fam = criterion_family_selection(phi, f)
        assert fam.p in fixed_point_families(f)


def test_criterion_randomised_catalog():
    rng = random.Random(7)
    for X in catalog(4):
        phi = find_selection_map(X)
        if not isinstance(phi, SelectionMap):
            continue
        for T in rng.sample(list(catalog(3)), 3):
            if T.n * X.n > 9:
                continue
            families = list(iter_families(X, T))
            for f in rng.sample(families, min(10, len(families))):
                fam = criterion_family_selection(phi, f)
                assert all(f(t, x) == x for t, x in enumerate(fam.p))


def test_product_fixed_point_identity_and_constant():
    X, Y = chain(2), chain(2)
    XY = product(X, Y)
    phi = find_selection_map(X)
    x, y = product_fixed_point(phi, MonotoneMap.identity(XY), Y)
    assert (x, y) in {(a, b) for a in range(2) for b in range(2)}
    for a, b in itertools.product(range(2), repeat=2):
        const = MonotoneMap.constant(XY, XY, a * 2 + b)
        assert product_fixed_point(phi, const, Y) == (a, b)


def test_product_fixed_point_exhaustive():
    X, Y = chain(2), chain(3)
    XY = product(X, Y)
    phi = find_selection_map(X)
    M = enumerate_maps(XY, XY)
    for k in range(len(M)):
        m = M.maps[k]
        x, y = product_fixed_point(phi, M.get(k), Y)
        assert m[x * 3 + y] == x * 3 + y


def test_product_selection_singletons_and_chains():
    one = find_selection_map(singleton())
    prod = product_selection(one, one)
    assert prod.choice == (0,)
    c2 = find_selection_map(chain(2))
    prod = product_selection(c2, c2)
    L = product(chain(2), chain(2))
    assert verify_selection(L, prod)[0]
    assert isinstance(find_selection_map(L), SelectionMap)


def test_product_selection_with_selection_oracle():
    X, Y = chain(2), chain(3)
    psi = find_selection_map(Y)
    phi = find_selection_map(X)
    XY = product(X, Y)
    M = enumerate_maps(XY, XY)
    for k in range(0, len(M), 7):
        x, y = product_fixed_point(phi, M.get(k), Y, selection_oracle(psi))
        assert M.maps[k][x * 3 + y] == x * 3 + y


def test_transfer_identity_retract():
    X = chain(3)
    phi = find_selection_map(X)
    ident = MonotoneMap.identity(X)
    assert transfer_selection_along_retract(phi, ident, ident).choice == phi.choice


def test_transfer_chain_into_chain():
    Y, X = chain(3), chain(2)
    s = MonotoneMap(X, Y, (0, 2))
    r = MonotoneMap(Y, X, (0, 0, 1))
    phi = transfer_selection_along_retract(find_selection_map(Y), s, r)
    assert verify_selection(X, phi)[0]


def test_transfer_to_singleton():
    Y = product(chain(2), chain(2))
    phi_Y = find_selection_map(Y)
    X = singleton()
    s = MonotoneMap(X, Y, (1,))
    r = MonotoneMap(Y, X, (0,) * Y.n)
    assert transfer_selection_along_retract(phi_Y, s, r).choice == (0,)


def test_transfer_rejects_non_retract():
    Y, X = chain(3), chain(2)
    s = MonotoneMap(X, Y, (0, 2))
    r = MonotoneMap(Y, X, (0, 0, 0))
    with pytest.raises(NotARetract):
        transfer_selection_along_retract(find_selection_map(Y), s, r)


def test_transfer_over_catalog_retracts():
    for Y in catalog(4):
        phi_Y = find_selection_map(Y)
        if not isinstance(phi_Y, SelectionMap):
            continue
        for X in catalog(3):
            found = find_retraction(Y, X)
            if found is not None:
                phi_X = transfer_selection_along_retract(phi_Y, *found)
                assert verify_selection(X, phi_X)[0]
