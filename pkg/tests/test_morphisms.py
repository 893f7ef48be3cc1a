"""Homomorphisms, kernels, filters, congruences, quotients, isomorphism."""

from itertools import product

import pytest

from hoopforge import (
    all_homs,
    canonical_form,
    classify,
    congruence_of_filter,
    direct_product,
    filter_of_congruence,
    filters,
    godel_chain,
    homomorphism,
    is_homomorphism,
    iso,
    kernel,
    lukasiewicz_chain,
    quotient,
)
from hoopforge.errors import MalformedTable, NotAFilter
from hoopforge.morphisms import Congruence, Filter, identity_hom, make_filter


def double_negation(h):
    b = h.bottom
    return tuple(h.imp[h.imp[x][b]][b] for x in range(h.order))


def test_is_homomorphism_examples(L3, G3):
    assert is_homomorphism(L3, L3, (0, 1, 2)) == (True, None)
    # double negation on G3 fixes 0 and sends a to 1
    nn = double_negation(G3)
    assert nn == (0, 2, 2)
    ok, _ = is_homomorphism(G3, G3, nn)
    assert ok
    ok, witness = is_homomorphism(L3, L3, (0, 2, 2))
    assert not ok and witness == {"op": "mul", "x": 1, "y": 1}


def test_kernel_examples(L3, G3, terminal):
    assert kernel(identity_hom(L3)).members == {L3.unit}
    nn = homomorphism(G3, G3, double_negation(G3))
    assert kernel(nn).members == {1, 2}
    to_terminal = homomorphism(L3, terminal, (0, 0, 0))
    assert kernel(to_terminal).members == {0, 1, 2}


def test_filters_examples(L3, G3, terminal):
    assert [f.sorted_members() for f in filters(terminal)] == [(0,)]
    assert [f.sorted_members() for f in filters(L3)] == [(2,), (0, 1, 2)]
    assert [f.sorted_members() for f in filters(G3)] == [(2,), (1, 2), (0, 1, 2)]


def test_filters_closure_path_agrees_with_scan(G3, L3):
    for h in (godel_chain(6), direct_product(G3, lukasiewicz_chain(2)),
              direct_product(L3, lukasiewicz_chain(2))):
        scan = {f.members for f in filters(h, force_scan=True)}
        from hoopforge.morphisms import _filters_by_closure

        closure = set(_filters_by_closure(h))
        assert scan == closure


def test_congruence_filter_roundtrip(G3):
    f = make_filter(G3, {1, 2})
    cong = congruence_of_filter(G3, f)
    assert cong.classes == ((0,), (1, 2))
    back = filter_of_congruence(G3, cong)
    assert back.members == f.members

    with pytest.raises(NotAFilter):
        congruence_of_filter(G3, Filter(G3, frozenset({0, 2})))


def test_roundtrips_on_corpus(corpus4):
    for h in corpus4:
        for f in filters(h):
            cong = congruence_of_filter(h, f)
            assert filter_of_congruence(h, cong).members == f.members
            q, proj = quotient(h, f)
            assert kernel(proj).members == f.members


def test_quotient_examples(G3, C2):
    f = make_filter(G3, {1, 2})
    q, proj = quotient(G3, f)
    assert q.order == 2 and iso(q, C2) is not None
    q1, _ = quotient(G3, make_filter(G3, {2}))
    assert iso(q1, G3) is not None


def naive_hom_count(source, target):
    count = 0
    for values in product(range(target.order), repeat=source.order):
        ok = values[source.unit] == target.unit
        for x in range(source.order):
            if not ok:
                break
            for y in range(source.order):
                if (values[source.mul[x][y]] != target.mul[values[x]][values[y]]
                        or values[source.imp[x][y]] != target.imp[values[x]][values[y]]):
                    ok = False
                    break
        if ok:
            count += 1
    return count


def test_all_homs_against_naive_scan(C2, L3, G3, corpus4):
    assert len(all_homs(C2, L3)) == naive_hom_count(C2, L3) == 2
    for source in corpus4[:6]:
        for target in (C2, L3, G3):
            assert len(all_homs(source, target)) == naive_hom_count(source, target)


def test_iso_examples(L3, G3):
    assert iso(L3, L3) is not None
    assert iso(L3, G3) is None
    # relabeled copy: swap 0 and 1
    perm = (1, 0, 2)
    n = 3
    mul = [[0] * n for _ in range(n)]
    imp = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            mul[perm[x]][perm[y]] = perm[L3.mul[x][y]]
            imp[perm[x]][perm[y]] = perm[L3.imp[x][y]]
    from hoopforge import validate_hoop

    g = validate_hoop(3, 2, mul, imp)
    found = iso(L3.without_bottom(), g)
    assert found is not None and found.map == perm


def test_canonical_form_idempotent_and_invariant(corpus4):
    for h in corpus4:
        canon, relabel = canonical_form(h)
        assert iso(h, canon) is not None
        again, _ = canonical_form(canon)
        assert again == canon
        ok, _ = is_homomorphism(h, canon, relabel.map)
        assert ok and relabel.is_injective()


def test_homomorphism_rejects_bad_map(L3, G3):
    with pytest.raises(MalformedTable):
        homomorphism(L3, L3, (0, 2, 2))
    ok, witness = is_homomorphism(G3, G3, (0, 1, 2), bounded=True)
    assert ok
    ok, witness = is_homomorphism(G3.without_bottom(), G3, (0, 1, 2), bounded=True)
    assert not ok and witness["op"] == "bottom"
