from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from twotheory.colimit import (
    BudgetExceeded, CategoryError, FiniteCategory, FiniteTwoCategory, Functor, NatTrans,
    Presentation, TwoDiagram, comma_truncate, enumerate_modifications, enumerate_presentation,
    enumerate_qnats, find_equivalence, find_isomorphism, find_relative_terminal,
    functor_candidates, grothendieck, identity_functor, identity_nat, is_fully_faithful,
    is_qnat, modification_problems, psi, psihat, psihat_morphism, qcolim, qnat_problems,
    quotient_by_congruence, unit_modification,
)
from twotheory.kronecker import inclusion
from twotheory.presentation import identity_morphism
from twotheory.theories import build_theory

from oracles import skeletons_isomorphic


def closure(n, edges):
    leq = {(i, i) for i in range(n)} | set(edges)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    return leq


@st.composite
def preorders(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=5))
    leq = closure(n, edges)
    return FiniteCategory.from_poset(list(range(n)), lambda a, b: (a, b) in leq)


def two():
    return FiniteCategory.from_poset([0, 1], lambda a, b: a <= b, "Two")


# ---------------------------------------------------------------------------
# finite categories


@given(preorders())
def test_preorders_are_categories(C):
    C.validate()
    C.opposite().validate()
    assert C.opposite().opposite().size() == C.size()


def test_composition_errors():
    C = two()
    with pytest.raises(CategoryError):
        C.compose((0, 1), (0, 1))
    with pytest.raises(CategoryError):
        FiniteCategory([0], {"f": (0, 0)}, {0: "f"}, {})


def test_cyclic_group():
    C = FiniteCategory.from_monoid(range(4), lambda g, f: (g + f) % 4, 0)
    assert C.size() == (1, 4) and C.is_iso(1) and C.inverse(1) == 3


@given(preorders(), preorders())
@settings(max_examples=60, deadline=None)
def test_equivalence_agrees_with_skeleton_oracle(A, B):
    eq = find_equivalence(A, B)
    assert (eq is not None) == skeletons_isomorphic(A, B)
    if eq is not None:
        eq.validate()
        assert is_fully_faithful(eq.forward)


@given(preorders(3))
@settings(deadline=None)
def test_self_isomorphism(C):
    F = find_isomorphism(C, C)
    assert F is not None
    F.validate()


@given(preorders(3), preorders(3))
@settings(deadline=None)
def test_functor_candidates_are_functors(A, B):
    for F in functor_candidates(A, B, budget=10_000):
        F.validate()


def test_functor_search_budget():
    C = FiniteCategory.discrete(range(6))
    with pytest.raises(BudgetExceeded):
        list(functor_candidates(C, C, budget=50))


def test_nat_trans():
    C = two()
    I = identity_functor(C)
    a = identity_nat(I)
    a.validate()
    assert a.then(a) == a and a.is_iso()
    const0 = Functor(C, C, {0: 0, 1: 0}, {(0, 0): (0, 0), (0, 1): (0, 0), (1, 1): (0, 0)})
    to_id = NatTrans(const0, I, {0: (0, 0), 1: (0, 1)})
    to_id.validate()
    assert not to_id.is_iso()
    with pytest.raises(CategoryError):
        NatTrans(I, const0, {0: (0, 0), 1: (0, 0)}).validate()


# ---------------------------------------------------------------------------
# presented categories


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_cyclic_presentations(n):
    C, images, _ = enumerate_presentation(Presentation(["o"], {"a": ("o", "o")}, [(("a",) * n, ())]))
    assert C.size() == (1, n)


def test_symmetric_group_s3():
    rels = [(("a", "a"), ()), (("b",) * 3, ()), (("a", "b") * 2, ())]
    C, _, _ = enumerate_presentation(Presentation(["o"], {"a": ("o", "o"), "b": ("o", "o")}, rels))
    assert C.size() == (1, 6)
    assert all(C.is_iso(m) for m in C.morphisms)


def test_free_iso_and_collapse():
    gens = {"i": ("p", "q"), "j": ("q", "p")}
    C, _, _ = enumerate_presentation(
        Presentation(["p", "q"], gens, [(("i", "j"), ()), (("j", "i"), ())]))
    assert C.size() == (2, 4)
    rels = [(("i", "j"), ())]
    D, images, rep = enumerate_presentation(Presentation(["p", "q"], gens, rels, collapse=["i"]))
    assert rep["p"] == rep["q"]
    assert D.size() == (1, 1)


def test_infinite_presentation_exceeds_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_presentation(Presentation(["o"], {"a": ("o", "o")}, []), budget=50)


def test_quotient_by_congruence():
    C = FiniteCategory.from_monoid(range(4), lambda g, f: (g + f) % 4, 0)
    Q, rep = quotient_by_congruence(C, [(2, 0)])
    assert Q.size() == (1, 2)
    assert rep[1] == rep[3]


# ---------------------------------------------------------------------------
# 2-categories and quasi-colimits


def arrow_diagram(A, B, F, name="D"):
    I = FiniteTwoCategory(["a", "t"], {"u": ("a", "t")}, {}, {}, {}, {}, name="Arrow")
    return TwoDiagram(I, {"a": A, "t": B}, {"u": F}, name=name)


def crush():
    A = two()
    B = FiniteCategory.discrete(["p", "q"])
    F = Functor(A, B, {0: "p", 1: "p"}, {m: ("id", "p") for m in A.morphisms})
    return A, B, F


def test_relative_terminal():
    A, B, F = crush()
    d = arrow_diagram(A, B, F)
    assert find_relative_terminal(d.index) == "t"
    C = FiniteTwoCategory.from_category(FiniteCategory.discrete(["x", "y"]))
    assert find_relative_terminal(C) is None


def test_twocat_validation():
    with pytest.raises(CategoryError):
        FiniteTwoCategory(["a", "b"], {"u": ("a", "b"), "v": ("b", "a")}, {}, {}, {}, {})


def test_comma_category_size():
    A, B, F = crush()
    G = grothendieck(arrow_diagram(A, B, F))
    G.validate()
    assert G.size()[0] == 4


def test_pseudo_and_lax():
    A, B, F = crush()
    d = arrow_diagram(A, B, F)
    pseudo = qcolim(d).category
    lax = qcolim(d, cocone="lax").category
    assert find_equivalence(pseudo, B) is not None
    assert find_equivalence(lax, B) is None
    assert find_isomorphism(qcolim(d, gamma=["u"], cocone="lax").category, B) is not None
    with pytest.raises(ValueError):
        qcolim(d, cocone="oplax")


@given(preorders(3))
@settings(deadline=None, max_examples=30)
def test_point_index_returns_value(C):
    I = FiniteTwoCategory(["p"], {}, {}, {}, {}, {})
    Q = qcolim(TwoDiagram(I, {"p": C})).category
    assert Q.size() == C.size()
    assert find_isomorphism(Q, C) is not None


@given(preorders(3), preorders(2))
@settings(deadline=None, max_examples=40)
def test_prop3_on_random_arrows(A, B):
    """Any functor A -> B gives an arrow diagram with terminal t; the colimit is ~ B."""
    F = next(functor_candidates(A, B, budget=10_000))
    d = arrow_diagram(A, B, F)
    Q = qcolim(d).category
    assert skeletons_isomorphic(Q, B)


# ---------------------------------------------------------------------------
# quasi-Yoneda


def yoneda_instance():
    C = two()
    I = FiniteTwoCategory(["r", "d"], {"f": ("r", "d")}, {}, {}, {}, {}, name="Arrow")
    K = TwoDiagram(I, {"r": C, "d": C}, {"f": identity_functor(C)})
    return I, K


def test_counit_and_unit():
    I, K = yoneda_instance()
    for U in K("r").objects:
        s = psihat(I, K, "r", U)
        assert is_qnat(I, K, "r", s)
        assert psi(I, K, "r", s) == U
    for s in enumerate_qnats(I, K, "r"):
        assert not qnat_problems(I, K, "r", s)
        m = unit_modification(I, K, "r", s)
        assert not modification_problems(I, K, "r", m)


def test_enumeration_filters():
    I, K = yoneda_instance()
    every = enumerate_qnats(I, K, "r")
    iso = enumerate_qnats(I, K, "r", iso_cells=True)
    strict = enumerate_qnats(I, K, "r", strict=True)
    assert len(every) == 3 and len(iso) == 2 and len(strict) == 2
    assert sorted(psi(I, K, "r", s) for s in strict) == [0, 1]
    with pytest.raises(BudgetExceeded):
        enumerate_qnats(I, K, "r", budget=1)


def test_modifications_from_morphisms():
    I, K = yoneda_instance()
    m = psihat_morphism(I, K, "r", (0, 1))
    assert not modification_problems(I, K, "r", m)
    s0, s1 = psihat(I, K, "r", 0), psihat(I, K, "r", 1)
    assert len(enumerate_modifications(I, K, "r", s0, s1)) == 1
    assert enumerate_modifications(I, K, "r", s1, s0) == []


# ---------------------------------------------------------------------------
# comma truncation


def test_comma_truncate_identity():
    T = build_theory("Fin")
    D = comma_truncate(identity_morphism(T), 1, 2)
    assert find_relative_terminal(D) is not None


def test_comma_truncate_notes_undecided():
    T = build_theory("sBraid")
    D = comma_truncate(inclusion(build_theory("Fin"), T), 1, 1)
    assert D.notes
