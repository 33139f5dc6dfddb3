import pytest
from hypothesis import given, strategies as st

import twotheory
from twotheory.formats import (
    one_from_sexpr, one_to_sexpr, parse_diagram_file, parse_theory_file, print_theory,
    two_from_sexpr, two_to_sexpr,
)
from twotheory.sexpr import SExprError, SList, Symbol, parse, parse_all, to_text
from twotheory.theories import THEORY_NAMES, build_theory

from strategies import one_terms

symbols = st.from_regex(r"[a-z][a-z0-9\-]{0,6}", fullmatch=True).map(Symbol)
strings = st.text(alphabet='ab ";()x\\', max_size=6)
atoms = st.one_of(symbols, strings, st.integers(0, 999))
sexprs = st.recursive(atoms, lambda xs: st.lists(xs, max_size=4).map(SList), max_leaves=12)


@given(sexprs)
def test_print_parse_round_trip(x):
    text = to_text(x)
    assert parse(text) == x
    assert to_text(parse(text)) == text


@given(st.lists(sexprs, max_size=3))
def test_parse_all_with_comments(xs):
    text = "\n; comment\n".join(to_text(x) for x in xs)
    assert parse_all(text) == xs


def test_error_locations():
    with pytest.raises(SExprError, match="line 2, column 5"):
        parse_all("(a\n  b))")
    with pytest.raises(SExprError, match="unbalanced"):
        parse_all("a)")
    with pytest.raises(SExprError):
        parse("a b")


def test_atom_kinds():
    x = parse('(sym "str" 12)')
    assert isinstance(x[0], Symbol) and not isinstance(x[1], Symbol) and x[2] == 12
    assert to_text(SList([Symbol("a"), "needs quoting", 3])) == '(a "needs quoting" 3)'
    with pytest.raises(ValueError):
        to_text(-1)


@pytest.mark.parametrize("name", THEORY_NAMES)
def test_theory_round_trip(name):
    t = build_theory(name)
    text = print_theory(t)
    back = parse_theory_file(text)
    assert back == t and back.name == t.name and back.roles == t.roles and back.notes == t.notes
    assert print_theory(back) == text


@pytest.mark.parametrize("name", THEORY_NAMES)
def test_shipped_theory_files_are_canonical(name):
    text = twotheory.data_file(f"{name}.sexp")
    assert print_theory(parse_theory_file(text)) + "\n" == text


@given(one_terms)
def test_one_cell_terms_round_trip(t):
    gens = {"tensor": (2, 1), "e": (0, 1)}
    back = one_from_sexpr(parse(to_text(one_to_sexpr(t))), gens)
    assert back == t


def test_minimal_theory():
    t = parse_theory_file("(theory Bin (gen1 tensor 2 1))")
    assert t.one_cell_gens == (("tensor", 2, 1),)


@pytest.mark.parametrize("text,message", [
    ("(theory T (gen1 m 2 1) (rel1 (gen m)))", "line 1, column 24"),
    ("(theory T (gen1 m 2 1) (rel1 (gen q) (gen m)))", "undeclared generator 'q'"),
    ("(theory T\n (gen1 m 2 1)\n (rel1 (o (gen m) (gen m)) (gen m)))", "line 3"),
    ("(theory T (gen1 m 2 1)", "unclosed"),
    ("(theory T (frob))", "frob"),
])
def test_theory_errors(text, message):
    with pytest.raises(SExprError, match=message):
        parse_theory_file(text)


def test_two_cell_sexpr():
    T = build_theory("sBraid")
    gens1 = {n: (s, k) for n, s, k in T.one_cell_gens}
    for r in T.two_cell_relations:
        for side in (r.lhs, r.rhs):
            assert two_from_sexpr(two_to_sexpr(side), gens1, {"gamma"}) == side


DIAGRAMS = ["terminal", "weak-terminal", "collapse", "point", "yoneda"]


@pytest.mark.parametrize("name", DIAGRAMS)
def test_shipped_diagrams_load(name):
    df = parse_diagram_file(twotheory.data_file(f"diagrams/{name}.sexp"))
    assert df.diagrams
    assert df.qcolims or df.yonedas


def test_presented_category_in_file():
    df = parse_diagram_file(
        "(category Z3 (objects o) (gen a o o) (rel (a a a) (id o)))")
    C, images = df.categories["Z3"]
    assert C.size() == (1, 3)
    assert set(images) == {"a"}


@pytest.mark.parametrize("text,message", [
    ("(category C (objects x) (gen a x y))", "undeclared end"),
    ("(category C (objects x)) (functor F C D)", "unknown category"),
    ("(category C (objects x y) (gen a x y)) (functor F C C (obj x x) (obj y x) (map a (a)))", "."),
    ("(category C (objects x)) (functor F C C)", "no image"),
    ("(twocat I (objects a)) (diagram D I)", "no category"),
    ("(widget W)", "unknown form"),
    ("(category C (objects x) (rel () ()))", "empty path"),
])
def test_diagram_errors(text, message):
    with pytest.raises(SExprError, match=message):
        parse_diagram_file(text)


def test_non_functor_rejected():
    text = ("(category Two (objects 0 1) (gen le 0 1))"
            "(category Pair (objects p q))"
            "(functor F Two Pair (obj 0 p) (obj 1 q))")
    with pytest.raises(SExprError):
        parse_diagram_file(text)
