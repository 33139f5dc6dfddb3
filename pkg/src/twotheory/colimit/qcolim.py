"""Quasi-colimits of 2-diagrams of finite categories.

The comma construction has objects ``(i, x)`` with ``x`` in ``d(i)``.  A
morphism ``(i', y) -> (i, x)`` is a pair of an index 1-cell ``I: i -> i'``
and ``v: y -> d(I)(x)`` in ``d(i')``; it is named ``(I, x, v)``.  With this
orientation the cocone cell ``xi_I : xi_{i'} o d(I) => xi_i`` has component
``(I, x, id)`` at ``x``.

Strictification identifies ``(I, x, v)`` with ``(I', x, d(iota)_x o v)`` for
every index 2-cell ``iota: I => I'`` and closes under composition.  1-cells
in ``gamma`` have their cocone cells collapsed to identities.  With
``cocone="pseudo"`` the remaining cocone cells are inverted as well.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .category import CategoryError, FiniteCategory, Functor
from .presented import Presentation, enumerate_presentation, quotient_by_congruence
from .twocat import TwoDiagram

COCONES = ("pseudo", "lax")


@dataclass
class QuasiColimit:
    category: FiniteCategory
    legs: Mapping[Hashable, Functor]                 # xi_i : d(i) -> Q
    cells: Mapping[tuple, Hashable] = field(default_factory=dict)   # (I, x) -> morphism

    def leg(self, i) -> Functor:
        return self.legs[i]


def grothendieck(d: TwoDiagram) -> FiniteCategory:
    """The comma category of the diagram before strictification."""
    I = d.index
    objects = [(i, x) for i in I.objects for x in d(i).objects]
    mors = {}
    for cell, (i, i2) in I.one_cells.items():
        F, C2 = d(cell), d(i2)
        for x in d(i).objects:
            for v in C2.morphisms:
                if C2.tgt(v) == F.obj(x):
                    mors[(cell, x, v)] = ((i2, C2.src(v)), (i, x))
    comp = {}
    for m1, ((i2, y), (i, x)) in mors.items():
        I1, _, v = m1
        for m2, ((i3, z), (j, y2)) in mors.items():
            if (j, y2) != (i2, y):
                continue
            J, _, w = m2
            C3 = d(i3)
            comp[(m1, m2)] = (I.compose1(J, I1), x, C3.compose(d(J)(v), w))
    ids = {(i, x): (I.id1[i], x, d(i).ident(x)) for (i, x) in objects}
    return FiniteCategory(objects, mors, ids, comp, f"comma({d.name})")


def qcolim(d: TwoDiagram, gamma: Iterable = (), cocone: str = "pseudo",
           budget: int = 5000) -> QuasiColimit:
    """Quasi-colimit of ``d``, strictly unital on the 1-cells listed in ``gamma``."""
    if cocone not in COCONES:
        raise ValueError(f"unknown cocone kind {cocone!r}")
    d.validate()
    I = d.index
    gamma = set(gamma)
    for g in gamma:
        if g not in I.one_cells:
            raise CategoryError(f"{g!r} is not a 1-cell of the index")
    G = grothendieck(d)
    pairs = []
    for iota, (f, f2) in I.two_cells.items():
        if f == f2 and iota == I.id2[f]:
            continue
        i, i2 = I.one_cells[f]
        nat, C2 = d(iota), d(i2)
        for (cell, x, v) in G.morphisms:
            if cell == f:
                pairs.append(((f, x, v), (f2, x, C2.compose(nat[x], v))))
    Q0, rep = quotient_by_congruence(G, pairs)

    def cocone_cell(cell, x):
        i2 = I.tgt1(cell)
        return rep[(cell, x, d(i2).ident(d(cell).obj(x)))]

    gens = {m: st for m, st in Q0.morphisms.items() if not Q0.is_identity(m)}
    rels = []
    for (g, f), h in Q0.composition.items():
        if f in gens and g in gens:
            rels.append(((f, g), () if Q0.is_identity(h) else (h,)))
    collapse = []
    inverted = []
    for cell, (i, _) in I.one_cells.items():
        if cell == I.id1[i]:
            continue
        for x in d(i).objects:
            c = cocone_cell(cell, x)
            if Q0.is_identity(c):
                continue
            if cell in gamma:
                collapse.append(c)
            elif cocone == "pseudo" and not Q0.is_iso(c) and c not in inverted:
                inverted.append(c)
    for c in inverted:
        inv = ("inv", c)
        s, t = gens[c]
        gens[inv] = (t, s)
        rels.append(((c, inv), ()))
        rels.append(((inv, c), ()))
    collapse = list(dict.fromkeys(collapse))
    if not collapse and not inverted:
        Q, image_of, obj_of = Q0, (lambda m: rep[m]), (lambda o: o)
    else:
        P = Presentation(Q0.objects, gens, rels, collapse, name=f"qcolim({d.name})")
        Q, images, orep = enumerate_presentation(P, budget=budget)

        def image_of(m):
            r = rep[m]
            if Q0.is_identity(r):
                return Q.ident(orep[Q0.src(r)])
            return images[r]

        def obj_of(o):
            return orep[o]

    Q.name = f"qcolim({d.name})"
    legs = {}
    for i in I.objects:
        C = d(i)
        legs[i] = Functor(C, Q, {x: obj_of((i, x)) for x in C.objects},
                          {u: image_of((I.id1[i], C.tgt(u), u)) for u in C.morphisms})
        legs[i].validate()
    cells = {(cell, x): image_of((cell, x, d(I.tgt1(cell)).ident(d(cell).obj(x))))
             for cell, (i, _) in I.one_cells.items() for x in d(i).objects}
    return QuasiColimit(Q, legs, cells)
