import pytest
from hypothesis import given, strategies as st

from twotheory.models.braids import BraidWord, Permutation, braid_equal, parse_braid
from twotheory.models.evaluate import (
    ModelError, ModelInterp, ThinCell, bounded_vectors, check_relations, compare_cells,
    default_rules, eval_two_cell, model_decider, size_vectors, standard_interp,
    underlying_matches_boundary,
)
from twotheory.presentation import GenInst, Id, Inverse, beside, ident, swap, vcomp, whisker
from twotheory.theories import TENSOR, build_theory

SBRAID = build_theory("sBraid")
GAMMA = GenInst("gamma")


def block_swap(a, b):
    """Oracle: strands of the first block move past the second block."""
    return Permutation(tuple(list(range(b, a + b)) + list(range(b))))


@given(st.integers(0, 4), st.integers(0, 4))
def test_gamma_is_the_block_swap(a, b):
    interp = standard_interp("perm", "sSym")
    [p] = eval_two_cell(GAMMA, interp, (a, b))
    assert p == block_swap(a, b)
    [w] = eval_two_cell(GAMMA, standard_interp("braid", SBRAID), (a, b))
    assert w.underlying() == block_swap(a, b)
    assert len(w.letters) == a * b


# boundary of each cell, as (source, target) among tensor ("t") and tensor o swap ("ts")
MOVES = [(GAMMA, "t", "ts"), (Inverse(GAMMA), "ts", "t"), (whisker(GAMMA, swap()), "ts", "t")]


def pasting():
    return st.lists(st.sampled_from(MOVES), min_size=1, max_size=4)


def _chain(moves):
    """Vertical composite of the composable prefix-filtered moves."""
    out, here = [], "t"
    for cell, s, t in moves:
        if s == here:
            out.append(cell)
            here = t
    return vcomp(*out) if out else Id(TENSOR)


@given(pasting(), st.integers(0, 3), st.integers(0, 3))
def test_evaluation_respects_boundaries(cells, a, b):
    a_cell = _chain(cells)
    for kind in ("perm", "braid", "ribbon"):
        interp = ModelInterp(kind, SBRAID, default_rules(SBRAID))
        assert underlying_matches_boundary(a_cell, interp, (a, b))


def test_free_models_satisfy_relations():
    for kind, name in (("perm", "sSym"), ("braid", "sBraid"), ("ribbon", "sBal")):
        rep = check_relations(build_theory(name), standard_interp(kind, name))
        assert rep.ok and rep.checks


def test_symmetry_fails_for_braids():
    T = build_theory("sSym")
    rep = check_relations(T, ModelInterp("braid", T, default_rules(T)), [(1, 1)])
    assert rep.status_of("symmetry@1,1") == "FAIL"


def test_strict_pairs():
    with pytest.raises(ModelError):
        standard_interp("perm", "sBraid")
    with pytest.raises(ValueError):
        ModelInterp("knot", SBRAID)


def test_twist_in_ribbon():
    T = build_theory("sBal")
    interp = standard_interp("ribbon", T)
    [r] = eval_two_cell(GenInst("theta"), interp, (2,))
    assert r.twists == (1, 1)
    assert braid_equal(r.braid, parse_braid("s1 s1", 2))
    with pytest.raises(ModelError):
        eval_two_cell(GenInst("theta"), ModelInterp("braid", T, default_rules(T)), (1,))


def test_thin_model():
    T = build_theory("Mon")
    interp = standard_interp("thin", T)
    [c] = eval_two_cell(GenInst("alpha"), interp, (1, 1, 1))
    assert isinstance(c, ThinCell)
    ok, _ = compare_cells(vcomp(GenInst("alpha"), Inverse(GenInst("alpha"))),
                          Id(TENSOR @ (TENSOR + ident(1))), interp, (1, 1, 1))
    assert ok


def test_model_decider():
    T = build_theory("sBraid")
    assert model_decider(T, vcomp(GAMMA, Inverse(GAMMA)), Id(TENSOR)) is True
    assert model_decider(T, vcomp(GAMMA, whisker(GAMMA, swap())), Id(TENSOR)) is False
    assert model_decider(build_theory("Twist"), Id(ident(1)), Id(ident(1))) is None


@given(st.integers(0, 8), st.integers(1, 3))
def test_bounded_vectors(arity, max_size):
    vs = bounded_vectors(arity, max_size, limit=200)
    assert vs == sorted(set(vs))
    assert all(len(v) == arity and all(0 <= x <= max_size for x in v) for v in vs)
    if (max_size + 1) ** arity <= 200:
        assert vs == size_vectors(arity, max_size)
    else:
        assert (1,) * arity in vs and len(vs) >= 200
    assert bounded_vectors(arity, max_size, 200) == vs
