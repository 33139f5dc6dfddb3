"""Finitely presented categories, enumerated by Knuth-Bendix completion.

A path is a tuple of generator names written in running order (the first
letter acts first).  Words are ordered shortlex by generator position, so
every rule shortens a path or keeps its length and lowers it.  Generators
listed in ``collapse`` become identities: their endpoints are merged first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .category import BudgetExceeded, CategoryError, FiniteCategory

Path = tuple


@dataclass
class Presentation:
    objects: Sequence[Hashable]
    generators: Mapping[Hashable, tuple]          # name -> (src, tgt)
    relations: Sequence[tuple[Path, Path]]
    collapse: Sequence[Hashable] = ()
    name: str = ""


class _Rewriter:
    def __init__(self, order: Mapping[Hashable, int]):
        self.order = order
        self.rules: dict[Path, Path] = {}
        self.lengths: set[int] = set()

    def key(self, w: Path):
        return (len(w), [self.order[x] for x in w])

    def reduce(self, w: Path) -> Path:
        w = tuple(w)
        changed = True
        while changed:
            changed = False
            for i in range(len(w)):
                for L in sorted(self.lengths):
                    if i + L <= len(w) and w[i:i + L] in self.rules:
                        w = w[:i] + self.rules[w[i:i + L]] + w[i + L:]
                        changed = True
                        break
                if changed:
                    break
        return w

    def add(self, a: Path, b: Path) -> bool:
        a, b = self.reduce(a), self.reduce(b)
        if a == b:
            return False
        if self.key(a) < self.key(b):
            a, b = b, a
        self.rules[a] = b
        self.lengths.add(len(a))
        self._interreduce()
        return True

    def _interreduce(self) -> None:
        while True:
            moved = None
            for l in self.rules:
                rest = {k: v for k, v in self.rules.items() if k != l}
                if _contains_lhs(l, rest):
                    moved = l
                    break
            if moved is None:
                break
            r = self.rules.pop(moved)
            self.lengths = {len(k) for k in self.rules}
            a, b = self.reduce(moved), self.reduce(r)
            if a != b:
                if self.key(a) < self.key(b):
                    a, b = b, a
                self.rules[a] = b
                self.lengths.add(len(a))
        for l in list(self.rules):
            self.rules[l] = self.reduce(self.rules[l])

    def critical_pairs(self):
        items = list(self.rules.items())
        for l1, r1 in items:
            for l2, r2 in items:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        yield r1 + l2[k:], l1[:-k] + r2


def _contains_lhs(w: Path, rules: Mapping[Path, Path]) -> bool:
    lengths = {len(k) for k in rules}
    return any(w[i:i + L] in rules for L in lengths for i in range(len(w) - L + 1))


def _merge_objects(objects, generators, collapse):
    parent = {o: o for o in objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pos = {o: i for i, o in enumerate(objects)}
    for c in collapse:
        a, b = find(generators[c][0]), find(generators[c][1])
        if a != b:
            if pos[b] < pos[a]:
                a, b = b, a
            parent[b] = a
    return {o: find(o) for o in objects}


def enumerate_presentation(p: Presentation, budget: int = 5000,
                           max_rules: int = 5000) -> tuple[FiniteCategory, dict, dict]:
    """The presented category, the image of each generator and the object map.

    Raises ``BudgetExceeded`` when completion or enumeration grows past the
    given bounds; the presented category may then be infinite.
    """
    rep = _merge_objects(p.objects, p.generators, p.collapse)
    objects = list(dict.fromkeys(rep[o] for o in p.objects))
    collapse = set(p.collapse)
    gens = {g: (rep[s], rep[t]) for g, (s, t) in p.generators.items() if g not in collapse}
    order = {g: i for i, g in enumerate(gens)}

    def strip(w):
        return tuple(x for x in w if x not in collapse)

    for a, b in p.relations:
        for w in (a, b):
            for x in w:
                if x not in p.generators:
                    raise CategoryError(f"relation uses unknown generator {x!r}")
            _check_path(strip(w), gens)
    rw = _Rewriter(order)
    for a, b in p.relations:
        rw.add(strip(a), strip(b))
    while True:
        added = False
        for a, b in list(rw.critical_pairs()):
            if rw.add(a, b):
                added = True
            if len(rw.rules) > max_rules:
                raise BudgetExceeded(f"completion exceeded {max_rules} rules")
        if not added:
            break

    out_gens: dict = {}
    for g, (s, t) in gens.items():
        out_gens.setdefault(s, []).append(g)
    mors: dict = {}
    for o in objects:
        frontier = [(o, ())]
        mors[(o, ())] = (o, o)
        while frontier:
            nxt = []
            for end, w in frontier:
                for g in out_gens.get(end, ()):
                    w2 = w + (g,)
                    if _contains_lhs(w2, rw.rules):
                        continue
                    mors[(o, w2)] = (o, gens[g][1])
                    nxt.append((gens[g][1], w2))
                    if len(mors) > budget:
                        raise BudgetExceeded(f"more than {budget} morphisms")
            frontier = nxt
    comp = {}
    for (fo, fw), (s, t) in mors.items():
        for (go, gw), _ in mors.items():
            if go == t:
                comp[((go, gw), (fo, fw))] = (fo, rw.reduce(fw + gw))
    C = FiniteCategory(objects, mors, {o: (o, ()) for o in objects}, comp, p.name)
    images = {g: (rep[s], rw.reduce(strip((g,)))) for g, (s, _) in p.generators.items()}
    return C, images, rep


def _check_path(w: Path, gens) -> None:
    for x, y in zip(w, w[1:]):
        if gens[x][1] != gens[y][0]:
            raise CategoryError(f"path {w!r} is not composable")


def quotient_by_congruence(C: FiniteCategory, pairs: Sequence[tuple]) -> tuple[FiniteCategory, dict]:
    """Identify the given parallel pairs and close under composition.

    Returns the quotient category and the class representative of every
    morphism.  Objects are unchanged.
    """
    parent = {m: m for m in C.morphisms}
    pos = {m: i for i, m in enumerate(C.morphisms)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = list(pairs)
    for f, g in work:
        if C.morphisms[f] != C.morphisms[g]:
            raise CategoryError(f"{f!r} and {g!r} are not parallel")
    while work:
        f, g = work.pop()
        a, b = find(f), find(g)
        if a == b:
            continue
        if pos[b] < pos[a]:
            a, b = b, a
        parent[b] = a
        s, t = C.morphisms[f]
        for h in C.out_of(t):
            work.append((C.compose(h, f), C.compose(h, g)))
        for e in C.morphisms:
            if C.tgt(e) == s:
                work.append((C.compose(f, e), C.compose(g, e)))
    rep = {m: find(m) for m in C.morphisms}
    kept = {m: C.morphisms[m] for m in C.morphisms if rep[m] == m}
    comp = {(g, f): rep[C.compose(g, f)] for (g, f) in C.composition
            if g in kept and f in kept}
    Q = FiniteCategory(C.objects, kept, {o: rep[C.ident(o)] for o in C.objects}, comp,
                       f"{C.name}/~")
    return Q, rep
