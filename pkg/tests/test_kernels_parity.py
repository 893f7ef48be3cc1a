"""The compiled and pure-Python kernels must agree bit for bit."""

import itertools

import pytest

from hoopforge import _kernels_py as pyk
from hoopforge import kernels

cyk = pytest.importorskip("hoopforge._kernels_cy")

from hoopforge import godel_chain, lukasiewicz_chain
from hoopforge.hoops import standard_corpus


def flat(h):
    return kernels.flatten(h.mul), kernels.flatten(h.imp)


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_parity(n):
    a = pyk.enumerate_hoop_tables(n, 10 ** 8)[0]
    b = cyk.enumerate_hoop_tables(n, 10 ** 8)[0]
    assert a == b


def test_axiom_witness_parity():
    L4 = lukasiewicz_chain(4)
    mul, imp = flat(L4)
    for cell in range(16):
        for val in range(4):
            m = list(mul)
            if m[cell] == val:
                continue
            m[cell] = val
            wa = pyk.hoop_axiom_witness(4, 3, m, imp, 0)
            wb = cyk.hoop_axiom_witness(4, 3, m, imp, 0)
            assert wa == wb
            assert wa is not None


def test_canonical_parity():
    for h in standard_corpus(5):
        mul, imp = flat(h)
        n = h.order
        for perm in itertools.islice(itertools.permutations(range(n)), 8):
            pm = [0] * (n * n)
            pi = [0] * (n * n)
            for x in range(n):
                for y in range(n):
                    pm[perm[x] * n + perm[y]] = perm[mul[x * n + y]]
                    pi[perm[x] * n + perm[y]] = perm[imp[x * n + y]]
            unit = perm[h.unit]
            ca = pyk.canonical_tables(n, unit, pm, pi)
            cb = cyk.canonical_tables(n, unit, pm, pi)
            assert ca == cb
            # relabeling never changes the canonical tables
            assert ca[1:] == (mul, imp)


def test_iso_parity():
    hs = standard_corpus(4)
    for h1 in hs:
        for h2 in hs:
            m1, i1 = flat(h1)
            m2, i2 = flat(h2)
            a = pyk.iso_tables(h1.order, h1.unit, m1, i1,
                               h2.order, h2.unit, m2, i2)
            b = cyk.iso_tables(h1.order, h1.unit, m1, i1,
                               h2.order, h2.unit, m2, i2)
            assert (a is None) == (b is None)
            assert a == b


@pytest.mark.parametrize("level", [0, 1, 2])
def test_action_enumeration_parity(level):
    cases = [(lukasiewicz_chain(2), lukasiewicz_chain(2)),
             (lukasiewicz_chain(2), godel_chain(3)),
             (godel_chain(3), lukasiewicz_chain(2))]
    for B, X in cases:
        bm, bi = flat(B)
        xm, xi = flat(X)
        a = pyk.enumerate_action_tables(B.order, X.order, B.unit, X.unit,
                                        bm, bi, xm, xi, level, 10 ** 8)[0]
        b = cyk.enumerate_action_tables(B.order, X.order, B.unit, X.unit,
                                        bm, bi, xm, xi, level, 10 ** 8)[0]
        assert a == b


def test_action_witness_parity():
    B = lukasiewicz_chain(2)
    X = lukasiewicz_chain(2)
    bm, bi = flat(B)
    xm, xi = flat(X)
    for f in itertools.product(range(2), repeat=1):
        for g in itertools.product(range(2), repeat=1):
            ftab = (f[0], 1, 0, 1)
            gtab = (g[0], 1, 0, 1)
            for level in (0, 1, 2):
                wa = pyk.action_axiom_witness(2, 2, 1, 1, bm, bi, xm, xi,
                                              ftab, gtab, level)
                wb = cyk.action_axiom_witness(2, 2, 1, 1, bm, bi, xm, xi,
                                              ftab, gtab, level)
                assert wa == wb


def test_lalgebra_witness_parity():
    G4 = godel_chain(4)
    imp = kernels.flatten(G4.imp)
    assert (pyk.lalgebra_axiom_witness(4, 3, imp)
            == cyk.lalgebra_axiom_witness(4, 3, imp))
    bad = list(imp)
    bad[1] = 0
    assert (pyk.lalgebra_axiom_witness(4, 3, bad)
            == cyk.lalgebra_axiom_witness(4, 3, bad))
