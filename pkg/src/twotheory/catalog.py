"""Named consequence equations between pasting terms.

Every entry is built from a context naming the tensor, the braiding cell
(``tensor => tensor o swap``), the twist cell and the associator, so the same
entry can be checked in a presented theory or in a Kronecker product where
the braiding is derived.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Sequence

from .presentation import (
    Base, Gen, GenInst, Id, Inverse, OneCellTerm, Report, TermError, TheoryPresentation,
    TwoCellTerm, base, beside, ident, juxt, normal_form, swap, typecheck_two, vcomp,
    whisker,
)


@dataclass(frozen=True)
class Context:
    theory: TheoryPresentation
    tensor: Gen
    braiding: TwoCellTerm | None = None
    twist: TwoCellTerm | None = None
    assoc: TwoCellTerm | None = None

    def alpha(self) -> TwoCellTerm:
        """Associator, or the identity on ``(xy)z`` when associativity is strict."""
        if self.assoc is not None:
            return self.assoc
        t, i = self.tensor, ident(1)
        return Id(t @ (t + i))


def context_for(obj) -> Context:
    """Context of a theory presentation or a Kronecker presentation."""
    from .kronecker import KroneckerPresentation, KroneckerError, derived_braiding
    kp = obj if isinstance(obj, KroneckerPresentation) else None
    T = kp.underlying if kp is not None else obj
    tname = T.role("tensor")
    if tname is None:
        raise TermError(f"{T.name} has no tensor")
    tensor = T.gen1(tname)
    braiding = GenInst(T.role("braiding")) if T.role("braiding") else None
    if braiding is None and kp is not None:
        try:
            braiding = derived_braiding(kp)
        except KroneckerError:
            braiding = None
    twist = GenInst(T.role("twist")) if T.role("twist") else None
    assoc = GenInst(T.role("assoc")) if T.role("assoc") else None
    return Context(T, tensor, braiding, twist, assoc)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    needs: tuple[str, ...]
    build: Callable[[Context], tuple[TwoCellTerm, TwoCellTerm]]
    description: str = ""


# ---------------------------------------------------------------------------
# the braiding equations


def _g(ctx: Context) -> TwoCellTerm:
    return ctx.braiding


def _g_rev(ctx: Context) -> TwoCellTerm:
    """gamma_{B,A}, starting from tensor o swap."""
    return whisker(ctx.braiding, swap())


def _hexagon_left(ctx):
    # gamma_{AB,C} = (gamma_{A,C} x id_B) o (id_A x gamma_{B,C}), associators inserted
    return _path_pair(ctx, ((0, 1), 2), ["g"], ["a", "R:g", "a-", "L:g", "a"])


def _hexagon_right(ctx):
    # gamma_{A,BC} = (id_B x gamma_{A,C}) o (gamma_{A,B} x id_C), associators inserted
    return _path_pair(ctx, (0, (1, 2)), ["g"], ["a-", "L:g", "a", "R:g", "a-"])


def _path_pair(ctx, start, p1, p2):
    lhs, end1 = rewrite_path(start, p1, ctx)
    rhs, end2 = rewrite_path(start, p2, ctx)
    if end1 != end2:
        raise TermError(f"paths do not meet: {end1} vs {end2}")
    return lhs, rhs


def _symmetry(ctx):
    return vcomp(_g(ctx), _g_rev(ctx)), Id(ctx.tensor)


def _theta_pair(ctx):
    return whisker(ctx.tensor, beside(ctx.twist, ctx.twist))


def _balance(ctx):
    # theta_{A(x)B} = gamma_{B,A} o gamma_{A,B} o (theta_A (x) theta_B)
    lhs = whisker(ctx.twist, ctx.tensor)
    rhs = vcomp(_theta_pair(ctx), _g(ctx), _g_rev(ctx))
    return lhs, rhs


def _twist_naturality(ctx):
    # gamma_{A,B} o (theta_A (x) theta_B) = theta_{B(x)A} o gamma_{A,B}
    lhs = vcomp(_theta_pair(ctx), _g(ctx))
    rhs = vcomp(_g(ctx), whisker(ctx.twist, ctx.tensor @ swap()))
    return lhs, rhs


# ---------------------------------------------------------------------------
# rewrite paths over bracketed words (for the dodecahedron)
#
# A tree is a variable index or a pair (left, right).  A step is an operation
# name, optionally prefixed by "L:"/"R:" to act inside a subtree: "a" and "a-"
# reassociate, "g" braids the two halves.


def tree_leaves(tree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return tree_leaves(tree[0]) + tree_leaves(tree[1])


def tree_shape(tree, ctx: Context) -> OneCellTerm:
    if isinstance(tree, int):
        return ident(1)
    return ctx.tensor @ (tree_shape(tree[0], ctx) + tree_shape(tree[1], ctx))


def tree_term(tree, ctx: Context, arity: int) -> OneCellTerm:
    return tree_shape(tree, ctx) @ base(tree_leaves(tree), arity)


def _local(tree, path: Sequence[str], op: str, ctx: Context):
    if path:
        if isinstance(tree, int):
            raise TermError("path leads into a variable")
        l, r = tree
        if path[0] == "L":
            cell, nl = _local(l, path[1:], op, ctx)
            return whisker(ctx.tensor, beside(cell, Id(tree_shape(r, ctx)))), (nl, r)
        cell, nr = _local(r, path[1:], op, ctx)
        return whisker(ctx.tensor, beside(Id(tree_shape(l, ctx)), cell)), (l, nr)
    if op == "a":
        (x, y), z = tree
        return whisker(ctx.alpha(), juxt(*(tree_shape(s, ctx) for s in (x, y, z)))), (x, (y, z))
    if op == "a-":
        x, (y, z) = tree
        return (whisker(Inverse(ctx.alpha()), juxt(*(tree_shape(s, ctx) for s in (x, y, z)))),
                ((x, y), z))
    if op == "g":
        x, y = tree
        return whisker(ctx.braiding, tree_shape(x, ctx) + tree_shape(y, ctx)), (y, x)
    raise TermError(f"unknown rewrite step {op!r}")


def rewrite_path(start, steps: Sequence[str], ctx: Context):
    """Pasting term following ``steps`` from the bracketed word ``start``."""
    arity = len(tree_leaves(start))
    cells = []
    tree = start
    for s in steps:
        *path, op = s.split(":")
        cell, new = _local(tree, path, op, ctx)
        cells.append(whisker(cell, base(tree_leaves(tree), arity)))
        tree = new
    if not cells:
        return Id(tree_term(start, ctx, arity)), tree
    return vcomp(*cells), tree


DODECAHEDRON_FACES = {
    "hexagon-right": (((0, 1), 2), ["a", "g", "a"], ["L:g", "a", "R:g"]),
    "hexagon-left": ((0, (1, 2)), ["a-", "g", "a-"], ["R:g", "a-", "L:g"]),
    "naturality-left": (((0, 1), 2), ["g", "R:g"], ["L:g", "g"]),
    "naturality-right": ((0, (1, 2)), ["g", "L:g"], ["R:g", "g"]),
    "yang-baxter": (((0, 1), 2), ["L:g", "a", "R:g", "a-", "L:g"],
                    ["a", "R:g", "a-", "L:g", "a", "R:g", "a-"]),
}


def _relabel(tree, perm):
    if isinstance(tree, int):
        return perm[tree]
    return (_relabel(tree[0], perm), _relabel(tree[1], perm))


def _face_builder(face: str, perm: tuple[int, ...]):
    start, p1, p2 = DODECAHEDRON_FACES[face]
    return lambda ctx: _path_pair(ctx, _relabel(start, perm), p1, p2)


# ---------------------------------------------------------------------------
# registry


def _entries() -> dict[str, CatalogEntry]:
    out = [
        CatalogEntry("braiding-hexagon-left", ("braiding",), _hexagon_left,
                     "gamma_{AB,C} = (gamma_{A,C} x 1)(1 x gamma_{B,C})"),
        CatalogEntry("braiding-hexagon-right", ("braiding",), _hexagon_right,
                     "gamma_{A,BC} = (1 x gamma_{A,C})(gamma_{A,B} x 1)"),
        CatalogEntry("symmetry-square", ("braiding",), _symmetry,
                     "gamma_{B,A} gamma_{A,B} = id"),
        CatalogEntry("balance-eq", ("braiding", "twist"), _balance,
                     "theta_{AB} = gamma_{B,A} gamma_{A,B} (theta_A x theta_B)"),
        CatalogEntry("twist-naturality-eq", ("braiding", "twist"), _twist_naturality,
                     "gamma_{A,B} (theta_A x theta_B) = theta_{BA} gamma_{A,B}"),
    ]
    for face in DODECAHEDRON_FACES:
        for perm in permutations(range(3)):
            label = "".join("ABC"[i] for i in perm)
            out.append(CatalogEntry(f"dodecahedron-{face}-{label}", ("braiding",),
                                    _face_builder(face, perm), f"{face} face at {label}"))
    return {e.name: e for e in out}


CATALOG = _entries()
GROUPS = {
    "dodecahedron": [n for n in CATALOG if n.startswith("dodecahedron-")],
    "braiding": ["braiding-hexagon-left", "braiding-hexagon-right"],
    "all": list(CATALOG),
}


def resolve_names(names: Sequence[str]) -> list[str]:
    out = []
    for n in names:
        if n in GROUPS:
            out += GROUPS[n]
        elif n in CATALOG:
            out.append(n)
        else:
            raise KeyError(f"unknown catalog entry {n!r}")
    return list(dict.fromkeys(out))


def build_entry(name: str, ctx: Context) -> tuple[TwoCellTerm, TwoCellTerm]:
    entry = CATALOG[name]
    for need in entry.needs:
        if getattr(ctx, need) is None:
            raise TermError(f"{ctx.theory.name} has no {need}")
    return entry.build(ctx)


def check_entries(names: Sequence[str], ctx: Context, kind: str,
                  sizes: Sequence[Sequence[int]] | None = None, rules=None) -> Report:
    """Evaluate catalog entries in a model; thin boundaries are always checked."""
    from .models.evaluate import (
        ModelError, ModelInterp, compare_cells, default_rules, size_vectors, _fit,
    )
    rep = Report()
    interp = ModelInterp(kind, ctx.theory, dict(rules or default_rules(ctx.theory)))
    for name in resolve_names(names):
        cid = f"catalog:{name}"
        try:
            lhs, rhs = build_entry(name, ctx)
            sl, tl = typecheck_two(lhs, ctx.theory)
            sr, tr = typecheck_two(rhs, ctx.theory)
        except TermError as exc:
            rep.add("UNDECIDED", cid, f"not applicable: {exc}")
            continue
        T = ctx.theory
        if (normal_form(sl, T), normal_form(tl, T)) != (normal_form(sr, T), normal_form(tr, T)):
            rep.add("FAIL", cid, "sides are not parallel")
            continue
        arity = sl.source
        vectors = [(1,) * arity] if sizes is None else [_fit(s, arity) for s in sizes]
        for vec in dict.fromkeys(vectors):
            vid = f"{cid}@{','.join(map(str, vec))}"
            try:
                ok, detail = compare_cells(lhs, rhs, interp, vec)
            except ModelError as exc:
                rep.add("UNDECIDED", vid, f"evaluation error: {exc}")
                continue
            rep.add("PASS" if ok else "FAIL", vid, detail)
    return rep
