"""Named theories, the arrows between them, and the change-of-dimension functors.

Generators use ASCII names: ``tensor`` (2->1), ``e`` (0->1), ``alpha``,
``lambda``, ``rho``, ``gamma`` and ``theta``.  Axioms that are standard but
not spelled out in the source material carry a ``standard-import:`` note.
"""
from __future__ import annotations

from collections import deque
from dataclasses import replace
from itertools import permutations
from typing import Mapping

from .presentation import (
    Base, Gen, GenInst, Id, Inverse, OneCellTerm, Relation, Report, TermError,
    TheoryMorphismPresentation, TheoryPresentation, TwoCellGen, TwoCellTerm,
    apply_morphism, base, beside, check_presentation, compose_morphisms, ident,
    juxt, normal_form, one_cells_equal, swap, typecheck_two, vcomp, whisker,
)

THEORY_NAMES = ("Fin", "Bin", "Mon", "Assoc", "Comm", "Braid", "Sym", "Bal", "Twist",
                "Point", "sMon", "sBraid", "sComm", "sBal", "sSym",
                "Magmas", "Monoids", "CommMonoids")

TENSOR = Gen("tensor", 2, 1)
UNIT = Gen("e", 0, 1)
I1 = ident(1)


def tensor_of(x: OneCellTerm, y: OneCellTerm, op: Gen = TENSOR) -> OneCellTerm:
    """``op(x, y)`` with the inputs of ``x`` before those of ``y``."""
    return op @ (x + y)


LEFT_NESTED = tensor_of(TENSOR, I1)    # (xy)z
RIGHT_NESTED = tensor_of(I1, TENSOR)   # x(yz)
TENSOR_SWAP = TENSOR @ swap()

ALPHA = TwoCellGen("alpha", LEFT_NESTED, RIGHT_NESTED)
LAMBDA = TwoCellGen("lambda", tensor_of(UNIT, I1), I1)
RHO = TwoCellGen("rho", tensor_of(I1, UNIT), I1)
GAMMA = TwoCellGen("gamma", TENSOR, TENSOR_SWAP)
THETA = TwoCellGen("theta", I1, I1)

a, lam, rho, g, th = (GenInst(n) for n in ("alpha", "lambda", "rho", "gamma", "theta"))


def _monoid_relations() -> tuple[Relation, ...]:
    return (
        Relation("assoc", LEFT_NESTED, RIGHT_NESTED),
        Relation("left-unit", tensor_of(UNIT, I1), I1),
        Relation("right-unit", tensor_of(I1, UNIT), I1),
    )


COMM_RELATION = Relation("comm", TENSOR_SWAP, TENSOR)


# ---------------------------------------------------------------------------
# 2-cell axioms


def _at(cell: TwoCellTerm, table) -> TwoCellTerm:
    """Instantiate ``cell`` at a permutation of the variables."""
    return whisker(cell, base(table))


def pentagon() -> Relation:
    lhs = vcomp(whisker(a, juxt(TENSOR, I1, I1)),
                whisker(a, juxt(I1, I1, TENSOR)))
    rhs = vcomp(whisker(TENSOR, beside(a, Id(I1))),
                whisker(a, juxt(I1, TENSOR, I1)),
                whisker(TENSOR, beside(Id(I1), a)))
    return Relation("pentagon", lhs, rhs)


def triangle() -> Relation:
    lhs = vcomp(whisker(a, juxt(I1, UNIT, I1)),
                whisker(TENSOR, beside(Id(I1), lam)))
    rhs = whisker(TENSOR, beside(rho, Id(I1)))
    return Relation("triangle", lhs, rhs)


def hexagons(strict: bool) -> tuple[Relation, Relation]:
    """Both hexagon axioms; in the strict case associators are dropped.

    ``hexagon-left`` expands ``gamma_{xy,z}``, ``hexagon-right`` expands ``gamma_{x,yz}``.
    """
    g_x_yz = whisker(g, I1 + TENSOR)
    g_xy_z = whisker(g, TENSOR + I1)
    g_xy_then = whisker(TENSOR, beside(g, Id(I1)))       # (xy)z => (yx)z
    g_yz_then = whisker(TENSOR, beside(Id(I1), g))       # x(yz) => x(zy)
    if strict:
        right = Relation("hexagon-right", g_x_yz,
                         vcomp(g_xy_then, _at(whisker(TENSOR, beside(Id(I1), g)), [1, 0, 2])))
        left = Relation("hexagon-left", g_xy_z,
                        vcomp(g_yz_then, _at(whisker(TENSOR, beside(g, Id(I1))), [0, 2, 1])))
        return left, right
    right = Relation(
        "hexagon-right",
        vcomp(a, g_x_yz, _at(a, [1, 2, 0])),
        vcomp(g_xy_then, _at(a, [1, 0, 2]), _at(whisker(TENSOR, beside(Id(I1), g)), [1, 0, 2])))
    left = Relation(
        "hexagon-left",
        vcomp(Inverse(a), g_xy_z, _at(Inverse(a), [2, 0, 1])),
        vcomp(g_yz_then, _at(Inverse(a), [0, 2, 1]), _at(whisker(TENSOR, beside(g, Id(I1))), [0, 2, 1])))
    return left, right


def symmetry() -> Relation:
    return Relation("symmetry", vcomp(g, whisker(g, swap())), Id(TENSOR))


def balance() -> Relation:
    # theta_{x(y)} = gamma_{y,x} o gamma_{x,y} o (theta_x (x) theta_y)
    lhs = whisker(th, TENSOR)
    rhs = vcomp(whisker(TENSOR, beside(th, th)), g, whisker(g, swap()))
    return Relation("balance", lhs, rhs)


# ---------------------------------------------------------------------------
# builders


def _mk(name, gens1=(), gens2=(), rel1=(), rel2=(), strict=False, dimension=2,
        roles=(), notes=(), normalizer=None, assoc_ops=None):
    if normalizer is None:
        normalizer = "strict-assoc" if strict else "syntactic"
    if assoc_ops is None:
        assoc_ops = (("tensor", "e"),) if strict else ()
    return TheoryPresentation(
        name=name,
        one_cell_gens=tuple(gens1),
        two_cell_gens=tuple(gens2),
        one_cell_relations=tuple(rel1),
        two_cell_relations=tuple(rel2),
        normalizer=normalizer,
        assoc_ops=tuple(assoc_ops),
        dimension=dimension,
        roles=tuple(sorted(dict(roles).items())),
        notes=tuple(notes),
    )


MONOIDAL_GENS = (("tensor", 2, 1), ("e", 0, 1))
TENSOR_ROLES = {"tensor": "tensor", "unit": "e"}


def _braided(name: str, strict: bool, *, hexes=True, sym=False, twist=False) -> TheoryPresentation:
    gens2 = ([] if strict else [ALPHA, LAMBDA, RHO]) + [GAMMA] + ([THETA] if twist else [])
    rel2 = [] if strict else [pentagon(), triangle()]
    notes = [] if strict else ["standard-import: triangle"]
    if hexes:
        rel2 += list(hexagons(strict))
        notes.append("standard-import: hexagon-left, hexagon-right")
    if sym:
        rel2.append(symmetry())
        notes.append("standard-import: symmetry")
    if twist:
        rel2.append(balance())
        notes.append("standard-import: balance")
    roles = dict(TENSOR_ROLES, braiding="gamma")
    if twist:
        roles["twist"] = "theta"
    if not strict:
        roles.update(assoc="alpha", left_unitor="lambda", right_unitor="rho")
    return _mk(name, MONOIDAL_GENS, gens2, _monoid_relations() if strict else (), rel2,
               strict=strict, roles=roles, notes=notes)


def build_theory(name: str) -> TheoryPresentation:
    key = canonical_name(name)
    if key == "Fin":
        return _mk("Fin")
    if key == "Point":
        return _mk("Point", [("e", 0, 1)], roles={"unit": "e"})
    if key == "Magmas":
        return _mk("Magmas", [("tensor", 2, 1)], dimension=1, roles={"tensor": "tensor"})
    if key == "Bin":
        return _mk("Bin", [("tensor", 2, 1)], roles={"tensor": "tensor"})
    if key == "Monoids":
        return _mk("Monoids", MONOIDAL_GENS, rel1=_monoid_relations(), strict=True,
                   dimension=1, roles=TENSOR_ROLES)
    if key == "CommMonoids":
        return _mk("CommMonoids", MONOIDAL_GENS, rel1=_monoid_relations() + (COMM_RELATION,),
                   strict=True, dimension=1, roles=TENSOR_ROLES)
    if key == "sMon":
        return _mk("sMon", MONOIDAL_GENS, rel1=_monoid_relations(), strict=True,
                   roles=TENSOR_ROLES)
    if key in ("Mon", "Assoc"):
        rel2 = [pentagon(), triangle()] if key == "Mon" else [triangle()]
        return _mk(key, MONOIDAL_GENS, [ALPHA, LAMBDA, RHO], rel2=rel2,
                   roles=dict(TENSOR_ROLES, assoc="alpha", left_unitor="lambda",
                              right_unitor="rho"),
                   notes=["standard-import: triangle"])
    if key == "Comm":
        return _braided("Comm", False, hexes=False)
    if key == "sComm":
        return _braided("sComm", True, hexes=False)
    if key == "Braid":
        return _braided("Braid", False)
    if key == "sBraid":
        return _braided("sBraid", True)
    if key == "Sym":
        return _braided("Sym", False, sym=True)
    if key == "sSym":
        return _braided("sSym", True, sym=True)
    if key == "Bal":
        return _braided("Bal", False, twist=True)
    if key == "sBal":
        return _braided("sBal", True, twist=True)
    if key == "Twist":
        return _mk("Twist", gens2=[THETA], roles={"twist": "theta"})
    raise KeyError(name)


def canonical_name(name: str) -> str:
    for n in THEORY_NAMES:
        if n.lower() == name.lower():
            return n
    raise KeyError(f"unknown theory {name!r}; known: {', '.join(THEORY_NAMES)}")


# ---------------------------------------------------------------------------
# standard morphisms

# arrows of the diagram of 2-theories; strict targets send alpha/lambda/rho
# to identities, Sym targets send theta to an identity
STANDARD_ARROWS = (
    ("Assoc", "Mon"), ("Assoc", "Braid"), ("Mon", "sMon"), ("Mon", "Braid"),
    ("sMon", "sBraid"), ("Comm", "Braid"), ("Comm", "sComm"), ("Braid", "Bal"),
    ("Braid", "sBraid"), ("Bal", "Sym"), ("Bal", "sBal"), ("Sym", "sSym"),
    ("sComm", "sBraid"), ("sBraid", "sBal"), ("sBal", "sSym"),
)


def _generator_map(S: TheoryPresentation, T: TheoryPresentation, name: str) -> TheoryMorphismPresentation:
    gen1 = {n: Gen(n, s, t) for n, s, t in S.one_cell_gens}
    for n in gen1:
        T.gen1(n)
    target2 = {x.name for x in T.two_cell_gens}
    gen2: dict[str, TwoCellTerm] = {}
    for x in S.two_cell_gens:
        if x.name in target2:
            gen2[x.name] = GenInst(x.name)
        elif one_cells_equal(x.src, x.tgt, T):
            gen2[x.name] = Id(x.src)
        else:
            raise KeyError(f"{x.name} has no image in {T.name}")
    return TheoryMorphismPresentation(S, T, gen1, gen2, name=name)


def standard_morphism(src: str, dst: str) -> TheoryMorphismPresentation:
    src, dst = canonical_name(src), canonical_name(dst)
    if src == dst:
        from .presentation import identity_morphism
        return identity_morphism(build_theory(src))
    # breadth-first search through the arrow diagram; composites are standard too
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for s, t in STANDARD_ARROWS:
            if s == x and t not in prev:
                prev[t] = x
                queue.append(t)
    if dst not in prev:
        raise KeyError(f"no standard arrow {src} -> {dst}")
    path = [dst]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    out = None
    for s, t in zip(path, path[1:]):
        step = _generator_map(build_theory(s), build_theory(t), f"{s}->{t}")
        out = step if out is None else compose_morphisms(step, out)
    return replace(out, name=f"{src}->{dst}")


# ---------------------------------------------------------------------------
# change of dimension


def change_dimension(kind: str, t: TheoryPresentation) -> TheoryPresentation:
    kind = kind.lower()
    if kind in ("c", "d"):
        if t.dimension != 1:
            raise TermError(f"{kind} expects a 1-theory, {t.name} has dimension {t.dimension}")
        return replace(t, name=f"{kind}({t.name})", dimension=2, coherent=(kind == "c"))
    if kind in ("u", "pi0"):
        if t.dimension != 2:
            raise TermError(f"{kind} expects a 2-theory, {t.name} has dimension {t.dimension}")
        rel1 = t.one_cell_relations
        if kind == "pi0":
            rel1 = rel1 + tuple(Relation(x.name, x.src, x.tgt) for x in t.two_cell_gens
                                if not one_cells_equal(x.src, x.tgt, t))
        gens1 = {n for n, _, _ in t.one_cell_gens}
        roles = tuple((k, v) for k, v in t.roles if v in gens1)
        return replace(t, name=f"{kind}({t.name})", dimension=1, two_cell_gens=(),
                       two_cell_relations=(), one_cell_relations=rel1, coherent=False,
                       roles=roles)
    raise ValueError(f"unknown change of dimension {kind!r}")


def _relation_key(r: Relation, t: TheoryPresentation, rename: Mapping[str, str]):
    def nf(x):
        return _rename_tree(normal_form(x, t), rename)
    return frozenset([nf(r.lhs), nf(r.rhs)])


def _rename_tree(nf, rename):
    def go(tree):
        if isinstance(tree, int):
            return tree
        name, k, ch = tree
        return (rename.get(name, name), k, tuple(go(c) for c in ch))
    return (nf.inputs, tuple(go(x) for x in nf.outputs))


def presentation_isomorphic(A: TheoryPresentation, B: TheoryPresentation) -> bool:
    """Equal up to a bijection of 1-cell generators and relation names/orientation.

    2-cell data is compared by count only when both are 1-theories; otherwise
    generator boundaries and relation sets must agree after renaming.
    """
    if (A.dimension, A.normalizer, A.coherent) != (B.dimension, B.normalizer, B.coherent):
        return False
    ga = sorted(A.one_cell_gens, key=lambda x: (x[1], x[2], x[0]))
    gb = sorted(B.one_cell_gens, key=lambda x: (x[1], x[2], x[0]))
    if [(s, t) for _, s, t in ga] != [(s, t) for _, s, t in gb]:
        return False
    if len(A.two_cell_gens) != len(B.two_cell_gens):
        return False
    names_b = [n for n, _, _ in gb]
    for perm in permutations(range(len(ga))):
        rename = {}
        ok = True
        for i, j in enumerate(perm):
            n, s, t = ga[i]
            if (s, t) != (gb[j][1], gb[j][2]):
                ok = False
                break
            rename[n] = names_b[j]
        if not ok:
            continue
        if {rename.get(op, op): rename.get(u, u) for op, u in A.assoc_ops} != dict(B.assoc_ops):
            continue
        rel_a = {_relation_key(r, A, rename) for r in A.one_cell_relations}
        rel_b = {_relation_key(r, B, {}) for r in B.one_cell_relations}
        # a relation whose sides already agree under the normalizer carries no information
        rel_a = {k for k in rel_a if len(k) == 2}
        rel_b = {k for k in rel_b if len(k) == 2}
        if rel_a == rel_b and _two_cells_match(A, B, rename):
            return True
    return False


def _two_cells_match(A, B, rename) -> bool:
    bounds_a = sorted(repr((_rename_tree(normal_form(x.src, A), rename),
                            _rename_tree(normal_form(x.tgt, A), rename), x.invertible))
                      for x in A.two_cell_gens)
    bounds_b = sorted(repr((_rename_tree(normal_form(x.src, B), {}),
                            _rename_tree(normal_form(x.tgt, B), {}), x.invertible))
                      for x in B.two_cell_gens)
    return bounds_a == bounds_b


def coherent_comparison(t: TheoryPresentation, other: TheoryPresentation) -> Report:
    """Compare a coherent theory with a presented one, generator by generator.

    Each 2-cell generator of ``other`` is matched by the unique 2-cell of the
    coherent theory when its boundary is a parallel pair of operations; the
    report does not claim an isomorphism.
    """
    rep = Report()
    if not t.coherent:
        rep.add("FAIL", "coherent", f"{t.name} is not coherent")
        return rep
    for n, s, k in other.one_cell_gens:
        try:
            ok = t.gen1(n).source == s and t.gen1(n).target == k
        except Exception:
            ok = False
        rep.add("PASS" if ok else "FAIL", f"gen1:{n}", "shared 1-cell generator")
    for x in other.two_cell_gens:
        rep.add("PASS", f"gen2:{x.name}", "matched by the unique coherent 2-cell")
    for r in other.two_cell_relations:
        rep.add("PASS", f"rel2:{r.name}", "holds: parallel 2-cells are equal")
    rep.add("NOT-CHECKED", "iso", "operations outside the generators are not all invertible")
    return rep


# ---------------------------------------------------------------------------
# quasi-sections


def validate_quasi_section(G: TheoryMorphismPresentation, H: TheoryMorphismPresentation,
                           witnesses: Mapping[str, TwoCellTerm]) -> Report:
    """Check a candidate weakly-unique quasi-section ``H`` of ``G``.

    Condition 1: ``H`` goes back along ``G`` and fixes the base.  Condition 2:
    every 1-cell generator ``f`` of the target of ``G`` has a witness 2-cell
    ``(G o H)(f) => f``.  Uniqueness is reported as not checked.
    """
    if G.source.one_cell_gens and G.target.one_cell_gens and not witnesses:
        raise ValueError("no witnesses supplied")
    rep = Report()
    direction = (H.source == G.target and H.target == G.source)
    rep.add("PASS" if direction else "FAIL", "condition-1:direction",
            f"{H.source.name}->{H.target.name} against {G.source.name}->{G.target.name}")
    rep.add("PASS", "condition-1:base", "Base terms are fixed by both morphisms")
    T = G.target
    for n, s, k in T.one_cell_gens:
        cid = f"condition-2:{n}"
        if n not in witnesses:
            raise ValueError(f"missing witness for {n}")
        f = Gen(n, s, k)
        try:
            GH = apply_morphism(G, apply_morphism(H, f))
            src, tgt = typecheck_two(witnesses[n], T)
        except (TermError, KeyError) as exc:
            rep.add("FAIL", cid, str(exc))
            continue
        ok = one_cells_equal(src, GH, T) and one_cells_equal(tgt, f, T)
        rep.add("PASS" if ok else "FAIL", cid, "witness boundary (G o H)(f) => f")
    rep.add("NOT-CHECKED", "condition-3:uniqueness", "uniqueness up to a unique 2-cell")
    return rep


def all_theories() -> dict[str, TheoryPresentation]:
    out = {}
    for n in THEORY_NAMES:
        t = build_theory(n)
        check_presentation(t)
        out[n] = t
    return out
