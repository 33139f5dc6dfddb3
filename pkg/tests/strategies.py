"""Hypothesis strategies for 1-cell terms over tensor (2->1) and e (0->1)."""
from hypothesis import strategies as st

from twotheory.presentation import Gen, base, ident

TENSOR = Gen("tensor", 2, 1)
UNIT = Gen("e", 0, 1)


def _extend(children):
    def compose_ok(pair):
        outer, inner = pair
        return inner.target == outer.source

    return st.one_of(
        st.tuples(children, children).map(lambda p: p[0] + p[1]),
        st.tuples(children, children).filter(compose_ok).map(lambda p: p[0] @ p[1]),
        children.map(lambda t: TENSOR @ (t + ident(1)) if t.target == 1 else t),
    )


def base_maps(max_in=3, max_out=3):
    return st.integers(0, max_in).flatmap(
        lambda n: st.lists(st.integers(0, n - 1), max_size=max_out).map(lambda t: base(t, n))
        if n else st.just(base([], 0)))


leaves = st.one_of(st.just(TENSOR), st.just(UNIT), base_maps(), st.just(ident(1)))
one_terms = st.recursive(leaves, _extend, max_leaves=8)
