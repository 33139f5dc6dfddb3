import pytest
from hypothesis import given, strategies as st

from twotheory.catalog import CATALOG, GROUPS, build_entry, check_entries, context_for, resolve_names
from twotheory.finsk import sigma
from twotheory.kronecker import (
    KroneckerError, check_kronecker_model, cols, delta_source, delta_target, delta_term,
    derived_braiding, inclusion, kronecker, rows, swap_isomorphic,
)
from twotheory.models.braids import BraidWord, braid_equal, parse_braid
from twotheory.models.evaluate import ModelInterp, default_rules, eval_two_cell
from twotheory.presentation import (
    Base, Gen, ident, normal_form, one_cells_equal, output_layout, typecheck_two,
)
from twotheory.theories import build_theory

POINT = build_theory("Point")
FIN = build_theory("Fin")


def product(left, right, base=POINT):
    return kronecker(base, inclusion(base, build_theory(left)), inclusion(base, build_theory(right)))


@pytest.fixture(scope="module")
def smon2():
    return product("sMon", "sMon")


@given(st.integers(1, 3), st.integers(0, 3), st.integers(1, 3), st.integers(0, 3))
def test_grid_layout(m, m2, n, n2):
    f, g = Gen("f", m, m2), Gen("g", n, n2)
    src, tgt = delta_source(f, g), delta_target(f, g)
    assert (src.source, src.target) == (m * n, m2 * n2)
    assert (tgt.source, tgt.target) == (m * n, m2 * n2)
    # columns of a row-major grid: column j reads x_j, x_{n+j}, ...
    if m2 == 1:
        assert output_layout(cols(f, n)) == [[i * n + j for i in range(m)] for j in range(n)]


def test_interchange_shape():
    phi, t = Gen("phi", 2, 1), Gen("tensor", 2, 1)
    nf = normal_form(delta_source(phi, t))
    assert nf.outputs == (("tensor", 0, (("phi", 0, (0, 2)), ("phi", 0, (1, 3)))),)
    nf2 = normal_form(delta_target(phi, t))
    assert nf2.outputs == (("phi", 0, (("tensor", 0, (0, 1)), ("tensor", 0, (2, 3)))),)


def test_product_generators(smon2):
    T = smon2.underlying
    assert len(smon2.delta_table) == 1
    names = {n for n, _, _ in T.one_cell_gens}
    assert {"left.tensor", "right.tensor"} <= names
    assert "e" in " ".join(names)


def test_delta_terms_typecheck(smon2):
    T = smon2.underlying
    f = T.gen1("left.tensor")
    g = T.gen1("right.tensor")
    for ff in (f, f @ (f + ident(1)), f + f):
        for gg in (g, g @ (ident(1) + g)):
            for order in ("left-first", "right-first"):
                s, t = typecheck_two(delta_term(smon2, ff, gg, order), T)
                assert one_cells_equal(s, delta_source(ff, gg), T)
                assert one_cells_equal(t, delta_target(ff, gg), T)


def test_delta_term_rejects_wrong_side(smon2):
    T = smon2.underlying
    with pytest.raises(KroneckerError):
        delta_term(smon2, T.gen1("right.tensor"), T.gen1("left.tensor"))


def test_derived_braiding_is_one_crossing(smon2):
    T = smon2.underlying
    interp = ModelInterp("braid", T, default_rules(T))
    [w] = eval_two_cell(derived_braiding(smon2), interp, (1, 1))
    assert braid_equal(w, parse_braid("s1^-1", 2))
    assert len(w.letters) == 1


def test_no_braiding_without_unit():
    kp = product("Bin", "Bin", FIN)
    with pytest.raises(KroneckerError):
        derived_braiding(kp)


def test_swap_isomorphism():
    a = product("sMon", "Bin", FIN)
    b = product("Bin", "sMon", FIN)
    assert swap_isomorphic(a, b)
    assert not swap_isomorphic(a, product("sMon", "sMon", FIN))


def test_conditions_in_braid_model(smon2):
    rep = check_kronecker_model(smon2, "braid", sizes=[(1, 1, 1, 1), (2, 1, 0, 2)])
    assert rep.ok and rep.checks


def test_hexagon_catalog(smon2):
    rep = check_entries(["braiding"], context_for(smon2), "braid", [(1, 1, 1)])
    assert [c.status for c in rep.checks] == ["PASS", "PASS"]


def test_symmetry_entry():
    kp = product("sMon", "sMon")
    ctx = context_for(kp)
    perm = check_entries(["symmetry-square"], ctx, "perm", [(1, 1)])
    braid = check_entries(["symmetry-square"], ctx, "braid", [(1, 1)])
    assert perm.ok and not braid.ok


def test_catalog_registry():
    assert len(GROUPS["dodecahedron"]) == 30
    assert resolve_names(["braiding", "braiding-hexagon-left"]) == GROUPS["braiding"]
    with pytest.raises(KeyError):
        resolve_names(["nonsense"])
    assert set(resolve_names(["all"])) == set(CATALOG)


def test_dodecahedron_in_presented_theory():
    ctx = context_for(build_theory("Braid"))
    rep = check_entries(["dodecahedron"], ctx, "braid", [(1, 1, 1)])
    assert rep.ok and len(rep.checks) == 30


def test_catalog_entries_typecheck_in_braid():
    T = build_theory("Braid")
    ctx = context_for(T)
    for name in resolve_names(["dodecahedron", "braiding", "symmetry-square"]):
        lhs, rhs = build_entry(name, ctx)
        sl, tl = typecheck_two(lhs, T)
        sr, tr = typecheck_two(rhs, T)
        assert one_cells_equal(sl, sr, T) and one_cells_equal(tl, tr, T)


def test_missing_role_is_undecided():
    rep = check_entries(["balance-eq"], context_for(build_theory("sBraid")), "ribbon")
    assert [c.status for c in rep.checks] == ["UNDECIDED"]
