"""Finite truncations of the comma 2-category of a theory morphism.

For ``G: T1 -> T2`` and an arity ``n`` the objects are pairs ``(m, g)`` with
``g`` an operation of ``T2`` from ``m`` inputs to ``n`` outputs, and a
1-cell ``(m, g) -> (m', g')`` is an operation ``h`` of ``T1`` with a 2-cell
``g' o G(h) => g``.  Only theories whose 2-cells are decided here are
supported: those without 2-cell generators (2-cells are identities) and the
coherent monoidal theory (a unique 2-cell between operations that agree
after strictification).  Operations are truncated by term depth and the
number of inputs, and thin hom-categories are replaced by their skeleta.
"""
from __future__ import annotations

from dataclasses import replace
from itertools import product

from ..models.evaluate import FREE_MODEL
from ..presentation import (
    Gen, NormalForm, TheoryMorphismPresentation, TheoryPresentation, apply_morphism,
    from_normal_form, normal_form,
)
from .category import BudgetExceeded, CategoryError
from .twocat import FiniteTwoCategory


class Undecided(CategoryError):
    pass


def cell_mode(T: TheoryPresentation) -> str:
    """How 2-cells between two operations of ``T`` are decided."""
    if not T.two_cell_gens:
        return "discrete"
    if FREE_MODEL.get(T.name) == "thin" and T.role("tensor") and T.role("unit"):
        return "thin"
    return "undecided"


def _decision_theory(T: TheoryPresentation) -> TheoryPresentation:
    if cell_mode(T) == "thin":
        return replace(T, normalizer="strict-assoc",
                       assoc_ops=((T.role("tensor"), T.role("unit")),))
    return T


def cell_key(t, T: TheoryPresentation) -> NormalForm:
    """Operations with equal keys are joined by exactly one 2-cell."""
    mode = cell_mode(T)
    if mode == "undecided":
        raise Undecided(f"2-cells of {T.name} are not decided")
    return normal_form(t, _decision_theory(T))


def _trees(T: TheoryPresentation, m: int, depth: int) -> list:
    """Normal-form trees over ``m`` variables with generator nesting at most ``depth``."""
    levels = [list(range(m))]
    seen = set(levels[0])
    for _ in range(depth):
        pool = [x for lvl in levels for x in lvl]
        new = []
        for name, s, k in T.one_cell_gens:
            for children in product(pool, repeat=s):
                for j in range(k):
                    nf = NormalForm(m, ((name, j, tuple(children)),))
                    tree = normal_form(from_normal_form(nf, T), T).outputs[0]
                    if tree not in seen:
                        seen.add(tree)
                        new.append(tree)
        levels.append(new)
    return [x for lvl in levels for x in lvl]


def operations(T: TheoryPresentation, m: int, n: int, depth: int, limit: int = 20000) -> list:
    """Operations ``m -> n`` of bounded depth, one per normal form."""
    trees = _trees(T, m, depth)
    if len(trees) ** n > limit:
        raise BudgetExceeded(f"{len(trees) ** n} operations {m}->{n} exceed {limit}")
    return [from_normal_form(NormalForm(m, outs), T) for outs in product(trees, repeat=n)]


def _depth(nf: NormalForm) -> int:
    def d(tree):
        if isinstance(tree, int):
            return 0
        return 1 + max((d(c) for c in tree[2]), default=0)
    return max((d(t) for t in nf.outputs), default=0)


def comma_truncate(G: TheoryMorphismPresentation, n: int, term_depth: int,
                   max_inputs: int = 2, limit: int = 20000) -> FiniteTwoCategory:
    """The truncated comma 2-category ``(G | n)``.

    Objects whose hom data cannot be decided are left out; the omissions and
    any 1-cells dropped to keep composition closed are listed in ``.notes``.
    """
    T1, T2 = G.source, G.target
    notes = []
    if cell_mode(T1) == "undecided":
        raise Undecided(f"2-cells of {T1.name} are not decided")
    mode2 = cell_mode(T2)
    objects, obj_terms = [], {}
    for m in range(max_inputs + 1):
        for g in operations(T2, m, n, term_depth, limit):
            if mode2 == "undecided" and any(not isinstance(t, int) for t in normal_form(g, T2).outputs):
                notes.append(f"undecided object ({m}, {normal_form(g, T2).outputs})")
                continue
            key = (m, normal_form(g, T2))
            if key not in obj_terms:
                objects.append(key)
                obj_terms[key] = g

    def cell_exists(a, b):
        if mode2 == "undecided":
            return normal_form(a, T2) == normal_form(b, T2)
        return cell_key(a, T2) == cell_key(b, T2)

    # candidate 1-cells, skeletal in T1 when its homs are thin
    h_terms = {}
    for m in range(max_inputs + 1):
        for m2 in range(max_inputs + 1):
            for h in operations(T1, m, m2, term_depth, limit):
                h_terms.setdefault((m, m2, cell_key(h, T1)), h)
    cells = {}
    for (a, b) in product(objects, repeat=2):
        g, g2 = obj_terms[a], obj_terms[b]
        for (m, m2, hk), h in h_terms.items():
            if (m, m2) == (a[0], b[0]) and cell_exists(g2 @ apply_morphism(G, h), g):
                cells[(a, b, hk)] = (a, b)

    def comp_key(g_cell, f_cell):
        (b, c, hk2), (a, _, hk) = g_cell, f_cell
        h = h_terms[(b[0], c[0], hk2)] @ h_terms[(a[0], b[0], hk)]
        return (a, c, cell_key(h, T1))

    id1 = {a: (a, a, cell_key(from_normal_form(NormalForm(a[0], tuple(range(a[0])))), T1))
           for a in objects}
    identities = set(id1.values())
    for x in identities:
        if x not in cells:
            raise CategoryError(f"identity 1-cell missing at {x[0]}")
    # drop 1-cells until composition is closed
    while True:
        bad = set()
        for f, (a, b) in cells.items():
            for g, (b2, c) in cells.items():
                if b2 == b and comp_key(g, f) not in cells:
                    bad.update({f, g} - identities)
        if not bad:
            break
        for x in bad:
            del cells[x]
        notes.append(f"dropped {len(bad)} 1-cells to keep composition closed")
    comp1 = {(g, f): comp_key(g, f) for f, (a, b) in cells.items()
             for g, (b2, _) in cells.items() if b2 == b}
    C = FiniteTwoCategory(objects, cells, comp1, {}, {}, {}, id1=id1,
                          name=f"({G.name} | {n})")
    C.notes = notes
    return C
