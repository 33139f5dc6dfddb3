"""Finite strict 2-categories and 2-diagrams of finite categories.

A 1-cell ``f: a -> b`` composes with ``g: b -> c`` to ``comp1[(g, f)]``.  A
2-cell ``alpha: f => f'`` lives in the hom-category ``hom(a, b)``; horizontal
composition of ``alpha`` with ``beta: g => g'`` is ``hcomp[(beta, alpha)]``.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from .category import (
    CategoryError, FiniteCategory, Functor, NatTrans, hcomp_nat, identity_functor, identity_nat,
)


def _id1(o):
    return ("id", o)


def _id2(f):
    return ("id2", f)


class FiniteTwoCategory:
    def __init__(self, objects: Iterable, one_cells: Mapping, comp1: Mapping,
                 two_cells: Mapping, vcomp: Mapping, hcomp: Mapping,
                 id1: Mapping | None = None, id2: Mapping | None = None,
                 name: str = "", validate: bool = True):
        self.name = name
        self.objects = tuple(objects)
        self.id1 = dict(id1) if id1 is not None else {o: _id1(o) for o in self.objects}
        self.one_cells = dict(one_cells)
        for o, i in self.id1.items():
            self.one_cells.setdefault(i, (o, o))
        self.comp1 = dict(comp1)
        for f, (a, b) in self.one_cells.items():
            self.comp1.setdefault((self.id1[b], f), f)
            self.comp1.setdefault((f, self.id1[a]), f)
        self.id2 = dict(id2) if id2 is not None else {f: _id2(f) for f in self.one_cells}
        self.two_cells = dict(two_cells)
        for f, i in self.id2.items():
            self.two_cells.setdefault(i, (f, f))
        self.vcomp = dict(vcomp)
        for x, (f, g) in self.two_cells.items():
            self.vcomp.setdefault((self.id2[g], x), x)
            self.vcomp.setdefault((x, self.id2[f]), x)
        self.hcomp = dict(hcomp)
        self._fill_hcomp()
        self._homs = {}
        for a in self.objects:
            for b in self.objects:
                self._homs[(a, b)] = self._build_hom(a, b)
        if validate:
            self.validate()

    # -- structure

    def src1(self, f):
        return self.one_cells[f][0]

    def tgt1(self, f):
        return self.one_cells[f][1]

    def compose1(self, g, f):
        try:
            return self.comp1[(g, f)]
        except KeyError:
            raise CategoryError(f"1-cell composite {g!r} o {f!r} is not defined") from None

    def cells(self, a, b) -> list:
        return [f for f, (s, t) in self.one_cells.items() if (s, t) == (a, b)]

    def hom(self, a, b) -> FiniteCategory:
        return self._homs[(a, b)]

    def hom_of(self, f) -> FiniteCategory:
        return self._homs[self.one_cells[f]]

    def hcompose(self, beta, alpha):
        try:
            return self.hcomp[(beta, alpha)]
        except KeyError:
            raise CategoryError(f"horizontal composite {beta!r} * {alpha!r} is missing") from None

    def whisker_left(self, g, alpha):
        """``g alpha``: post-compose a 2-cell with a 1-cell."""
        return self.hcompose(self.id2[g], alpha)

    def whisker_right(self, beta, f):
        """``beta f``: pre-compose a 2-cell with a 1-cell."""
        return self.hcompose(beta, self.id2[f])

    def _build_hom(self, a, b) -> FiniteCategory:
        cells = self.cells(a, b)
        mors = {x: st for x, st in self.two_cells.items() if st[0] in cells}
        comp = {k: v for k, v in self.vcomp.items() if k[0] in mors and k[1] in mors}
        return FiniteCategory(cells, mors, {f: self.id2[f] for f in cells}, comp,
                              f"{self.name}({a},{b})", validate=False)

    def _fill_hcomp(self) -> None:
        """Derive the horizontal composites that are forced.

        Identity 2-cells compose to identities, and whiskering by an identity
        1-cell does nothing.  In a locally thin hom the composite is the only
        2-cell between the composite boundaries.
        """
        for alpha, (f, f2) in self.two_cells.items():
            a, b = self.one_cells[f]
            for beta, (g, g2) in self.two_cells.items():
                if self.one_cells[g][0] != b or (beta, alpha) in self.hcomp:
                    continue
                if g == g2 == self.id1[b] and beta == self.id2[g]:
                    self.hcomp[(beta, alpha)] = alpha
                elif f == f2 == self.id1[a] and alpha == self.id2[f]:
                    self.hcomp[(beta, alpha)] = beta
                elif alpha == self.id2[f] and beta == self.id2[g]:
                    if (g, f) in self.comp1:
                        self.hcomp[(beta, alpha)] = self.id2[self.comp1[(g, f)]]
                else:
                    s, t = self.comp1.get((g, f)), self.comp1.get((g2, f2))
                    cands = [x for x, st in self.two_cells.items() if st == (s, t)]
                    if len(cands) == 1:
                        self.hcomp[(beta, alpha)] = cands[0]

    # -- validation

    def validate(self) -> None:
        for (a, b), H in self._homs.items():
            H.validate()
        for f, (a, b) in self.one_cells.items():
            for g in [g for g, st in self.one_cells.items() if st[0] == b]:
                gf = self.comp1.get((g, f))
                if gf is None or self.one_cells.get(gf) != (a, self.tgt1(g)):
                    raise CategoryError(f"1-cell composite {g!r} o {f!r} is missing or misplaced")
        for (g, f), gf in self.comp1.items():
            for h in [h for h, st in self.one_cells.items() if st[0] == self.tgt1(g)]:
                if self.comp1[(h, gf)] != self.comp1[(self.comp1[(h, g)], f)]:
                    raise CategoryError(f"1-cell associativity fails at {h!r}, {g!r}, {f!r}")
        for alpha, (f, f2) in self.two_cells.items():
            for beta, (g, g2) in self.two_cells.items():
                if self.src1(g) != self.tgt1(f):
                    continue
                ba = self.hcompose(beta, alpha)
                if self.two_cells.get(ba) != (self.comp1[(g, f)], self.comp1[(g2, f2)]):
                    raise CategoryError(f"{beta!r} * {alpha!r} has the wrong boundary")
        # interchange: (b2 . b1) * (a2 . a1) = (b2 * a2) . (b1 * a1)
        for (a2, a1), a21 in self.vcomp.items():
            for (b2, b1), b21 in self.vcomp.items():
                if self.src1(self.two_cells[b1][0]) != self.tgt1(self.two_cells[a1][0]):
                    continue
                lhs = self.hcompose(b21, a21)
                rhs = self.vcomp[(self.hcompose(b2, a2), self.hcompose(b1, a1))]
                if lhs != rhs:
                    raise CategoryError(f"interchange fails at {b2!r},{b1!r} / {a2!r},{a1!r}")
        for f in self.one_cells:
            for g in [g for g, st in self.one_cells.items() if st[0] == self.tgt1(f)]:
                if self.hcompose(self.id2[g], self.id2[f]) != self.id2[self.comp1[(g, f)]]:
                    raise CategoryError("horizontal composition does not preserve identities")

    # -- constructors

    @classmethod
    def from_category(cls, C: FiniteCategory, name: str = "") -> "FiniteTwoCategory":
        """Locally discrete 2-category on a finite category."""
        return cls(C.objects, dict(C.morphisms), dict(C.composition), {}, {}, {},
                   id1=dict(C.identities), name=name or C.name)

    def underlying_category(self) -> FiniteCategory:
        return FiniteCategory(self.objects, self.one_cells, self.id1, self.comp1,
                              self.name, validate=False)

    def __repr__(self):
        return f"FiniteTwoCategory({self.name or '?'}: {len(self.objects)} objects, " \
               f"{len(self.one_cells)} 1-cells, {len(self.two_cells)} 2-cells)"


class TwoDiagram:
    """A strict 2-functor from a finite 2-category into finite categories."""

    def __init__(self, index: FiniteTwoCategory, on_objects: Mapping[Hashable, FiniteCategory],
                 on_one_cells: Mapping[Hashable, Functor] | None = None,
                 on_two_cells: Mapping[Hashable, NatTrans] | None = None,
                 name: str = "", validate: bool = True):
        self.index = index
        self.name = name
        self.on_objects = dict(on_objects)
        self.on_one_cells = dict(on_one_cells or {})
        for o, i in index.id1.items():
            self.on_one_cells.setdefault(i, identity_functor(self.on_objects[o]))
        self.on_two_cells = dict(on_two_cells or {})
        for f, i in index.id2.items():
            if f in self.on_one_cells:
                self.on_two_cells.setdefault(i, identity_nat(self.on_one_cells[f]))
        if validate:
            self.validate()

    def __call__(self, x):
        if x in self.index.two_cells and x in self.on_two_cells:
            return self.on_two_cells[x]
        if x in self.index.one_cells:
            return self.on_one_cells[x]
        return self.on_objects[x]

    def validate(self) -> None:
        I = self.index
        for o in I.objects:
            if not isinstance(self.on_objects.get(o), FiniteCategory):
                raise CategoryError(f"object {o!r} has no category")
        for f, (a, b) in I.one_cells.items():
            F = self.on_one_cells.get(f)
            if F is None or F.source is not self.on_objects[a] or F.target is not self.on_objects[b]:
                raise CategoryError(f"1-cell {f!r} has no functor between the right categories")
            F.validate()
        for o, i in I.id1.items():
            if self.on_one_cells[i] != identity_functor(self.on_objects[o]):
                raise CategoryError(f"identity at {o!r} is not sent to the identity functor")
        for (g, f), gf in I.comp1.items():
            if self.on_one_cells[f].then(self.on_one_cells[g]) != self.on_one_cells[gf]:
                raise CategoryError(f"composite {g!r} o {f!r} is not preserved")
        for x, (f, f2) in I.two_cells.items():
            a = self.on_two_cells.get(x)
            if a is None or a.source != self.on_one_cells[f] or a.target != self.on_one_cells[f2]:
                raise CategoryError(f"2-cell {x!r} has no transformation between the right functors")
            a.validate()
        for f, i in I.id2.items():
            if self.on_two_cells[i] != identity_nat(self.on_one_cells[f]):
                raise CategoryError(f"identity 2-cell of {f!r} is not preserved")
        for (y, x), yx in I.vcomp.items():
            if self.on_two_cells[x].then(self.on_two_cells[y]) != self.on_two_cells[yx]:
                raise CategoryError(f"vertical composite {y!r} . {x!r} is not preserved")
        for (b, a), ba in I.hcomp.items():
            if hcomp_nat(self.on_two_cells[b], self.on_two_cells[a]) != self.on_two_cells[ba]:
                raise CategoryError(f"horizontal composite {b!r} * {a!r} is not preserved")


def find_relative_terminal(I: FiniteTwoCategory, gamma_objects: Iterable = ()):
    """An object ``t`` receiving, from every object, 1-cells unique up to a unique iso 2-cell.

    On objects in ``gamma_objects`` the 1-cell into ``t`` must be unique.
    Returns the first such object in index order, or None.
    """
    gamma = set(gamma_objects)
    for t in I.objects:
        if all(_weakly_unique(I, i, t, i in gamma) for i in I.objects):
            return t
    return None


def _weakly_unique(I: FiniteTwoCategory, i, t, strict: bool) -> bool:
    cells = I.cells(i, t)
    if not cells or (strict and len(cells) != 1):
        return False
    H = I.hom(i, t)
    for l in cells:
        for l2 in cells:
            if sum(1 for x in H.hom(l, l2) if H.is_iso(x)) != 1:
                return False
    return True
