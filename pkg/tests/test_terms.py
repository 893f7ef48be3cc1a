"""Parser, pretty-printer, evaluation, and the brute-force oracle."""

from itertools import product

import pytest
from hypothesis import given, strategies as st

from hoopforge import (
    classify,
    eval_term,
    format_algebra,
    holds,
    lukasiewicz_chain,
    parse_algebra,
    parse_identity,
    parse_term,
    validate_hoop,
)
from hoopforge.errors import (
    MalformedTable,
    MissingBinding,
    NotBasic,
    NotBounded,
    ParseError,
    UndeclaredVariable,
)
from hoopforge.terms import (
    CONST0,
    CONST1,
    HOOP_AXIOM_IDENTITIES,
    VARIETY_IDENTITIES,
    Imp,
    Join,
    Meet,
    Mul,
    Term,
    Var,
    format_term,
    parse_algebra_named,
)

L3_TEXT = """\
# three-element chain
hoop L3
elements 3
unit 2
bottom 0
mul
0 0 0
0 0 1
0 1 2
imp
2 2 2
1 2 2
0 1 2
"""


def test_parse_algebra_roundtrip(L3):
    name, h = parse_algebra_named(L3_TEXT)
    assert name == "L3" and h == L3
    again = parse_algebra(format_algebra(h, "L3"))
    assert again == h


def test_parse_algebra_terminal():
    h = parse_algebra("hoop T\nelements 1\nunit 0\nmul\n0\nimp\n0\n")
    assert h.order == 1


def test_parse_algebra_bad_row():
    text = L3_TEXT.replace("0 0 1", "0 0 1 2")
    with pytest.raises(ParseError) as e:
        parse_algebra(text)
    assert e.value.line == 8


def test_parse_algebra_out_of_range_entry():
    text = L3_TEXT.replace("0 1 2", "0 1 5", 1)
    with pytest.raises(MalformedTable):
        parse_algebra(text)


def test_parse_identity_examples():
    ident = parse_identity("forall x : x -> x = 1")
    assert ident.vars == ("x",)
    assert ident.lhs == Imp(Var("x"), Var("x")) and ident.rhs == CONST1

    basic = parse_identity(VARIETY_IDENTITIES["basic"])
    assert basic.vars == ("x", "y", "z")

    with pytest.raises(UndeclaredVariable):
        parse_identity("forall x : x -> y = 1")
    with pytest.raises(ParseError):
        parse_identity("forall x : x -> = 1")
    with pytest.raises(ParseError):
        parse_identity("x -> x = 1")


def test_precedence_and_associativity():
    t = parse_term("x * y -> z")
    assert t == Imp(Mul(Var("x"), Var("y")), Var("z"))
    t = parse_term("x -> y -> z")
    assert t == Imp(Var("x"), Imp(Var("y"), Var("z")))
    t = parse_term("x /\\ y \\/ z")
    assert t == Join(Meet(Var("x"), Var("y")), Var("z"))
    t = parse_term("x * y /\\ z")
    assert t == Meet(Mul(Var("x"), Var("y")), Var("z"))
    assert parse_term("(x -> y) -> z") != parse_term("x -> y -> z")


terms_strategy = st.recursive(
    st.sampled_from([Var("x"), Var("y"), Var("z"), CONST0, CONST1]),
    lambda leaf: st.one_of(
        st.builds(Mul, leaf, leaf),
        st.builds(Imp, leaf, leaf),
        st.builds(Meet, leaf, leaf),
        st.builds(Join, leaf, leaf),
    ),
    max_leaves=12,
)


@given(terms_strategy)
def test_print_parse_roundtrip(t):
    assert parse_term(format_term(t)) == t


def test_eval_examples(L3, G3):
    assert eval_term(L3, CONST1, {}) == 2
    assert eval_term(L3, Imp(Var("x"), Var("y")), {"x": 1, "y": 0}) == 1
    assert eval_term(G3, Meet(Var("x"), Var("y")), {"x": 1, "y": 2}) == 1
    with pytest.raises(MissingBinding):
        eval_term(L3, Var("x"), {})
    with pytest.raises(NotBounded):
        eval_term(L3.without_bottom(), CONST0, {})


def test_eval_join_requires_basic():
    from tests.test_hoops import heyting_from_poset

    pairs = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4),
             (3, 4)}
    mul, imp = heyting_from_poset(pairs, 5)
    h = validate_hoop(5, 4, mul, imp, bottom=0)
    with pytest.raises(NotBasic):
        eval_term(h, Join(Var("x"), Var("y")), {"x": 1, "y": 2})


def test_holds_examples(L3, G3, corpus4):
    ident = parse_identity("forall x : x -> x = 1")
    for h in corpus4:
        assert holds(h, ident) == (True, None)

    ok, witness = holds(G3, parse_identity(VARIETY_IDENTITIES["wajsberg"]))
    assert not ok and witness == {"x": 0, "y": 1}

    ok, _ = holds(L3, parse_identity(
        "forall x y : x * (x -> y) = y * (y -> x)"))
    assert ok


def test_dsl_oracle_agrees_with_native_checker(corpus4):
    """The DSL oracle and the native axiom scan agree on every algebra."""
    for h in corpus4:
        for name, text in HOOP_AXIOM_IDENTITIES.items():
            if name == "v":
                continue
            ok, _ = holds(h, parse_identity(text))
            assert ok, (h, name)
        hb = h.with_bottom()
        ok, _ = holds(hb, parse_identity(HOOP_AXIOM_IDENTITIES["v"]))
        assert ok


def test_dsl_oracle_agrees_with_classify(corpus5):
    for h in corpus5:
        rep = classify(h)
        for flag, name in (("is_basic", "basic"), ("is_wajsberg", "wajsberg"),
                           ("is_godel", "godel")):
            ok, _ = holds(h, parse_identity(VARIETY_IDENTITIES[name]))
            if name == "godel":
                ok = ok and rep.is_basic
            assert ok == getattr(rep, flag), (h, name)
        if rep.is_basic:
            ok, _ = holds(h, parse_identity(VARIETY_IDENTITIES["product"]))
            assert ok == rep.is_product
        else:
            assert not rep.is_product
            with pytest.raises(NotBasic):
                holds(h, parse_identity(VARIETY_IDENTITIES["product"]))
        hb = h.with_bottom()
        ok, _ = holds(hb, parse_identity(VARIETY_IDENTITIES["involutive"]))
        assert ok == classify(hb).is_involutive


def test_mutated_table_rejected_by_dsl_and_native(L3):
    # same mutation as the native-checker test: the DSL agrees
    mul = [list(r) for r in L3.mul]
    mul[1][1] = 1
    h = object.__new__(type(L3))
    object.__setattr__(h, "order", 3)
    object.__setattr__(h, "unit", 2)
    object.__setattr__(h, "mul", tuple(map(tuple, mul)))
    object.__setattr__(h, "imp", L3.imp)
    object.__setattr__(h, "bottom", 0)
    ok, witness = holds(h, parse_identity(HOOP_AXIOM_IDENTITIES["iii"]))
    assert not ok and witness == {"x": 0, "y": 1}


def test_identity_file_parsing():
    from hoopforge.terms import parse_identity_file

    text = "# axioms\nforall x : x -> x = 1\n\nforall x y : x * y = y * x\n"
    idents = parse_identity_file(text)
    assert len(idents) == 2
    with pytest.raises(ParseError) as e:
        parse_identity_file("forall x : x -> x = 1\nforall x : (x = 1\n")
    assert e.value.line == 2
