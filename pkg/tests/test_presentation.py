import pytest
from hypothesis import given, strategies as st

from twotheory.presentation import (
    Base, Gen, GenInst, Id, Inverse, Relation, Report, TermError, TheoryPresentation,
    TwoCellGen, base, beside, check_presentation, from_normal_form, ident, is_linear,
    normal_form, one_cells_equal, output_layout, swap, typecheck_one, typecheck_two, vcomp,
    whisker,
)
from twotheory.theories import build_theory

from strategies import TENSOR, UNIT, one_terms

MON = build_theory("sMon")
BIN = build_theory("Bin")


@given(one_terms)
def test_typecheck_matches_arity(t):
    assert typecheck_one(t) == (t.source, t.target)
    assert normal_form(t).target == t.target


@given(one_terms)
def test_normal_form_round_trip(t):
    for theory in (None, MON):
        nf = normal_form(t, theory)
        assert normal_form(from_normal_form(nf, theory), theory) == nf


@given(one_terms, one_terms)
def test_juxtaposition_concatenates(a, b):
    na, nb = normal_form(a), normal_form(b)
    nab = normal_form(a + b)
    assert nab.outputs[:len(na.outputs)] == na.outputs
    assert len(nab.outputs) == len(na.outputs) + len(nb.outputs)


@given(one_terms)
def test_identity_composition(t):
    assert one_cells_equal(t @ ident(t.source), t)
    assert one_cells_equal(ident(t.target) @ t, t)


def test_associativity_depends_on_normalizer():
    left = TENSOR @ (TENSOR + ident(1))
    right = TENSOR @ (ident(1) + TENSOR)
    assert not one_cells_equal(left, right)
    assert one_cells_equal(left, right, MON)
    assert one_cells_equal(TENSOR @ (UNIT + ident(1)), ident(1), MON)
    assert not one_cells_equal(TENSOR @ (UNIT + ident(1)), ident(1), BIN)


def test_layout_and_linearity():
    assert output_layout(TENSOR @ swap()) == [[1, 0]]
    assert is_linear(TENSOR)
    assert not is_linear(TENSOR @ base([0, 0], 1))


def test_composite_mismatch():
    with pytest.raises(TermError):
        typecheck_one(TENSOR @ TENSOR)


def test_declared_arity_is_enforced():
    with pytest.raises(TermError):
        typecheck_one(Gen("tensor", 3, 1), BIN)


def test_two_cell_boundaries():
    T = build_theory("sBraid")
    s, t = typecheck_two(GenInst("gamma"), T)
    assert one_cells_equal(s, TENSOR, T)
    assert one_cells_equal(t, TENSOR @ swap(), T)
    s2, t2 = typecheck_two(Inverse(GenInst("gamma")), T)
    assert (s2, t2) == (t, s)
    loop = vcomp(GenInst("gamma"), whisker(GenInst("gamma"), swap()))
    s3, t3 = typecheck_two(loop, T)
    assert one_cells_equal(s3, t3, T)
    with pytest.raises(TermError):
        typecheck_two(vcomp(GenInst("gamma"), GenInst("gamma")), T)


def test_beside_boundary():
    T = build_theory("sBraid")
    s, t = typecheck_two(beside(GenInst("gamma"), Id(ident(1))), T)
    assert (s.source, t.target) == (3, 2)


def test_non_invertible_inverse_rejected():
    T = TheoryPresentation("T", (("m", 2, 1),), (TwoCellGen("a", Gen("m", 2, 1),
                                                            Gen("m", 2, 1) @ swap(), False),))
    with pytest.raises(TermError):
        typecheck_two(Inverse(GenInst("a")), T)


def test_check_presentation_rejects_bad_relation():
    T = TheoryPresentation("T", (("m", 2, 1),), (),
                           (Relation("r", Gen("m", 2, 1), ident(1)),))
    with pytest.raises(TermError):
        check_presentation(T)
    dup = TheoryPresentation("D", (("m", 2, 1), ("m", 1, 1)))
    with pytest.raises(TermError):
        check_presentation(dup)


def test_report_lines_sorted():
    rep = Report()
    rep.add("PASS", "b")
    rep.add("FAIL", "a", "x")
    assert rep.lines() == ["FAIL\ta\tx", "PASS\tb\t"]
    assert not rep.ok
    assert rep.status_of("b") == "PASS"


def test_base_is_a_finite_map():
    b = base([1, 0])
    assert isinstance(b, Base) and (b.source, b.target) == (2, 2)
