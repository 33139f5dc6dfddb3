"""Finite categories, functors and natural transformations.

Composition is written classically: ``C.compose(g, f)`` is ``g o f`` and runs
``f`` first.  Objects and morphism names may be any hashable values; all
orderings follow insertion order so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence


class CategoryError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A search was refused or abandoned because it would exceed its budget."""


class FiniteCategory:
    """A category with finitely many objects and morphisms, validated on construction."""

    def __init__(self, objects: Iterable[Hashable], morphisms: Mapping[Hashable, tuple],
                 identities: Mapping[Hashable, Hashable], composition: Mapping[tuple, Hashable],
                 name: str = "", validate: bool = True):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.composition = dict(composition)
        self._out: dict = {o: [] for o in self.objects}
        self._hom: dict = {}
        for m, (s, t) in self.morphisms.items():
            self._out.setdefault(s, []).append(m)
            self._hom.setdefault((s, t), []).append(m)
        if validate:
            self.validate()

    # -- basic queries

    def src(self, f) -> Hashable:
        return self.morphisms[f][0]

    def tgt(self, f) -> Hashable:
        return self.morphisms[f][1]

    def ident(self, obj) -> Hashable:
        return self.identities[obj]

    def hom(self, a, b) -> list:
        return list(self._hom.get((a, b), ()))

    def out_of(self, a) -> list:
        return list(self._out.get(a, ()))

    def compose(self, g, f) -> Hashable:
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise CategoryError(f"{g!r} o {f!r} is not defined") from None

    def compose_path(self, *fs) -> Hashable:
        """``fs[0] o fs[1] o ...``; the last morphism runs first."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def is_identity(self, f) -> bool:
        return self.identities.get(self.src(f)) == f

    def inverse(self, f):
        """The inverse of ``f`` or None."""
        for g in self.hom(self.tgt(f), self.src(f)):
            if self.compose(g, f) == self.ident(self.src(f)) and \
                    self.compose(f, g) == self.ident(self.tgt(f)):
                return g
        return None

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def isomorphic_objects(self, a, b) -> bool:
        return any(self.is_iso(f) for f in self.hom(a, b))

    def iso_classes(self) -> list[list]:
        classes: list[list] = []
        for o in self.objects:
            for cls in classes:
                if self.isomorphic_objects(cls[0], o):
                    cls.append(o)
                    break
            else:
                classes.append([o])
        return classes

    def is_discrete(self) -> bool:
        return len(self.morphisms) == len(self.objects)

    def size(self) -> tuple[int, int]:
        return len(self.objects), len(self.morphisms)

    def __repr__(self):
        return f"FiniteCategory({self.name or '?'}: {len(self.objects)} objects, " \
               f"{len(self.morphisms)} morphisms)"

    # -- validation

    def validate(self) -> None:
        objs = set(self.objects)
        for m, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                raise CategoryError(f"morphism {m!r} has an unknown end")
        for o in self.objects:
            i = self.identities.get(o)
            if i is None or self.morphisms.get(i) != (o, o):
                raise CategoryError(f"object {o!r} lacks an identity")
        for f, (s, t) in self.morphisms.items():
            for g in self.out_of(t):
                h = self.composition.get((g, f))
                if h is None:
                    raise CategoryError(f"composite {g!r} o {f!r} is missing")
                if self.morphisms.get(h) != (s, self.tgt(g)):
                    raise CategoryError(f"composite {g!r} o {f!r} has the wrong ends")
            if self.composition[(self.ident(t), f)] != f or self.composition[(f, self.ident(s))] != f:
                raise CategoryError(f"identity law fails at {f!r}")
        for f in self.morphisms:
            for g in self.out_of(self.tgt(f)):
                gf = self.composition[(g, f)]
                for h in self.out_of(self.tgt(g)):
                    if self.composition[(h, gf)] != self.composition[(self.composition[(h, g)], f)]:
                        raise CategoryError(f"associativity fails at {h!r}, {g!r}, {f!r}")

    # -- constructors

    @classmethod
    def discrete(cls, objects: Iterable, name: str = "") -> "FiniteCategory":
        objects = list(objects)
        ids = {o: ("id", o) for o in objects}
        return cls(objects, {ids[o]: (o, o) for o in objects}, ids,
                   {(ids[o], ids[o]): ids[o] for o in objects}, name)

    @classmethod
    def from_monoid(cls, elements: Sequence, mult, unit, obj="*", name: str = "") -> "FiniteCategory":
        """One-object category; ``mult(g, f)`` is the composite ``g o f``."""
        return cls([obj], {e: (obj, obj) for e in elements}, {obj: unit},
                   {(g, f): mult(g, f) for g in elements for f in elements}, name)

    @classmethod
    def from_poset(cls, elements: Sequence, leq, name: str = "") -> "FiniteCategory":
        mors = {(a, b): (a, b) for a in elements for b in elements if leq(a, b)}
        comp = {((b, c), (a, b2)): (a, c) for (b, c) in mors for (a, b2) in mors if b2 == b}
        return cls(elements, mors, {a: (a, a) for a in elements}, comp, name)

    def opposite(self) -> "FiniteCategory":
        return FiniteCategory(self.objects, {m: (t, s) for m, (s, t) in self.morphisms.items()},
                              self.identities,
                              {(f, g): h for (g, f), h in self.composition.items()},
                              f"{self.name}^op", validate=False)


@dataclass(frozen=True)
class Functor:
    source: FiniteCategory = field(compare=False)
    target: FiniteCategory = field(compare=False)
    on_objects: Mapping
    on_morphisms: Mapping

    def __call__(self, x):
        if x in self.on_morphisms:
            return self.on_morphisms[x]
        raise CategoryError(f"{x!r} is not a morphism of the source")

    def obj(self, o):
        return self.on_objects[o]

    def key(self) -> tuple:
        return (tuple(self.on_objects[o] for o in self.source.objects),
                tuple(self.on_morphisms[m] for m in self.source.morphisms))

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key() == other.key()

    def validate(self) -> None:
        S, T = self.source, self.target
        for o in S.objects:
            if self.on_objects.get(o) not in T.identities:
                raise CategoryError(f"object {o!r} has no image")
            if self.on_morphisms.get(S.ident(o)) != T.ident(self.on_objects[o]):
                raise CategoryError(f"identity of {o!r} is not preserved")
        for f, (s, t) in S.morphisms.items():
            img = self.on_morphisms.get(f)
            if img is None or T.morphisms.get(img) != (self.on_objects[s], self.on_objects[t]):
                raise CategoryError(f"morphism {f!r} is sent to a morphism with the wrong ends")
        for (g, f), h in S.composition.items():
            if T.compose(self.on_morphisms[g], self.on_morphisms[f]) != self.on_morphisms[h]:
                raise CategoryError(f"composition {g!r} o {f!r} is not preserved")

    def then(self, other: "Functor") -> "Functor":
        """Diagrammatic composite: ``self`` first."""
        return Functor(self.source, other.target,
                       {o: other.on_objects[v] for o, v in self.on_objects.items()},
                       {m: other.on_morphisms[v] for m, v in self.on_morphisms.items()})


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, {o: o for o in C.objects}, {m: m for m in C.morphisms})


@dataclass(frozen=True)
class NatTrans:
    """``components[x] : F(x) -> G(x)`` in the target category."""
    source: Functor
    target: Functor
    components: Mapping

    def __getitem__(self, x):
        return self.components[x]

    def key(self) -> tuple:
        return tuple(self.components[o] for o in self.source.source.objects)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.source == other.source and \
            self.target == other.target and self.key() == other.key()

    def validate(self) -> None:
        F, G = self.source, self.target
        C, D = F.source, F.target
        for o in C.objects:
            c = self.components.get(o)
            if c is None or D.morphisms.get(c) != (F.obj(o), G.obj(o)):
                raise CategoryError(f"component at {o!r} has the wrong ends")
        for f, (s, t) in C.morphisms.items():
            if D.compose(G(f), self.components[s]) != D.compose(self.components[t], F(f)):
                raise CategoryError(f"naturality fails at {f!r}")

    def is_iso(self) -> bool:
        D = self.source.target
        return all(D.is_iso(c) for c in self.components.values())

    def then(self, other: "NatTrans") -> "NatTrans":
        """Vertical composite, ``self`` first."""
        D = self.source.target
        return NatTrans(self.source, other.target,
                        {o: D.compose(other.components[o], c) for o, c in self.components.items()})


def identity_nat(F: Functor) -> NatTrans:
    return NatTrans(F, F, {o: F.target.ident(F.obj(o)) for o in F.source.objects})


def hcomp_nat(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Horizontal composite ``beta * alpha`` for ``alpha: F => F'`` then ``beta: G => G'``."""
    F, F2 = alpha.source, alpha.target
    G, G2 = beta.source, beta.target
    E = G.target
    comps = {o: E.compose(beta.components[F2.obj(o)], G(alpha.components[o]))
             for o in F.source.objects}
    return NatTrans(F.then(G), F2.then(G2), comps)


def functor_candidates(C: FiniteCategory, D: FiniteCategory, budget: int = 200_000,
                       on_objects: Mapping | None = None):
    """Yield every functor ``C -> D`` (backtracking search with a node budget)."""
    objs = list(C.objects)
    mors = [m for m in C.morphisms if not C.is_identity(m)]
    nodes = [0]

    def tick():
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"functor search exceeded {budget} steps")

    def assign_mors(k, om, mm):
        if k == len(mors):
            yield Functor(C, D, dict(om), dict(mm))
            return
        f = mors[k]
        s, t = C.morphisms[f]
        for cand in D.hom(om[s], om[t]):
            tick()
            mm[f] = cand
            if _consistent(C, D, mm, f):
                yield from assign_mors(k + 1, om, mm)
            del mm[f]

    def assign_objs(k, om):
        if k == len(objs):
            mm = {C.ident(o): D.ident(om[o]) for o in objs}
            yield from assign_mors(0, om, mm)
            return
        o = objs[k]
        choices = [on_objects[o]] if on_objects and o in on_objects else D.objects
        for v in choices:
            tick()
            om[o] = v
            yield from assign_objs(k + 1, om)
            del om[o]

    yield from assign_objs(0, {})


def _consistent(C: FiniteCategory, D: FiniteCategory, mm: Mapping, f) -> bool:
    """Check every composite involving ``f`` whose three parts are assigned."""
    for (g, e), h in _triples(C).get(f, ()):
        if g in mm and e in mm and h in mm and D.compose(mm[g], mm[e]) != mm[h]:
            return False
    return True


def _triples(C: FiniteCategory) -> dict:
    """For each morphism, the composition triples ``((g, e), g o e)`` it takes part in."""
    cached = getattr(C, "_triple_index", None)
    if cached is None:
        cached = {}
        for (g, e), h in C.composition.items():
            for x in {g, e, h}:
                cached.setdefault(x, []).append(((g, e), h))
        C._triple_index = cached
    return cached
