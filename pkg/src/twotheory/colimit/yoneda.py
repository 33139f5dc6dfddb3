"""Quasi-natural transformations out of a representable, and the quasi-Yoneda maps.

For an object ``r`` of a finite 2-category ``D`` and a 2-diagram ``K`` on
``D``, a quasi-natural transformation ``sigma: D(r,-) -> K`` has a functor
``sigma_d : D(r,d) -> K(d)`` for every object and, for every 1-cell
``f: d -> d'`` and ``h`` in ``D(r,d)``, a morphism

    sigma_{f,h} : sigma_{d'}(f h) -> K(f)(sigma_d(h))

natural in ``h``, trivial on identities, multiplicative along composites and
compatible with the 2-cells of ``D``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Hashable, Mapping

from .category import (
    BudgetExceeded, CategoryError, FiniteCategory, Functor, functor_candidates,
)
from .twocat import FiniteTwoCategory, TwoDiagram


@dataclass(frozen=True)
class QuasiNat:
    components: Mapping[Hashable, Functor]        # d -> sigma_d
    cells: Mapping[tuple, Hashable]               # (f, h) -> sigma_{f,h}

    def key(self) -> tuple:
        return (tuple((d, F.key()) for d, F in self.components.items()),
                tuple(sorted(self.cells.items(), key=repr)))

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, QuasiNat) and self.key() == other.key()


@dataclass(frozen=True)
class Modification:
    source: QuasiNat
    target: QuasiNat
    components: Mapping[tuple, Hashable]          # (d, h) -> Sigma_{d,h}


def representable_functor(D: FiniteTwoCategory, r, f) -> Functor:
    """``D(r, f) : D(r, d) -> D(r, d')``, post-composition with ``f``."""
    d, d2 = D.one_cells[f]
    H, H2 = D.hom(r, d), D.hom(r, d2)
    return Functor(H, H2, {h: D.compose1(f, h) for h in H.objects},
                   {b: D.whisker_left(f, b) for b in H.morphisms})


def _pairs(D: FiniteTwoCategory, r):
    """Non-identity 1-cells ``f`` with every ``h`` in ``D(r, src f)``."""
    for f, (d, _) in D.one_cells.items():
        if f == D.id1[d]:
            continue
        for h in D.cells(r, d):
            yield f, h


def qnat_problems(D: FiniteTwoCategory, K: TwoDiagram, r, s: QuasiNat) -> list[str]:
    """Every quasi-naturality condition violated by ``s`` (empty when valid)."""
    out = []
    for d in D.objects:
        F = s.components.get(d)
        if F is None or F.source is not D.hom(r, d) or F.target is not K(d):
            return [f"component at {d!r} is missing or has the wrong ends"]
        try:
            F.validate()
        except CategoryError as exc:
            out.append(f"component at {d!r}: {exc}")
    if out:
        return out
    for f, (d, d2) in D.one_cells.items():
        Kf, Kd2 = K(f), K(d2)
        for h in D.cells(r, d):
            c = s.cells.get((f, h))
            want = (s.components[d2].obj(D.compose1(f, h)), Kf.obj(s.components[d].obj(h)))
            if c is None or Kd2.morphisms.get(c) != want:
                out.append(f"cell ({f!r},{h!r}) is missing or has the wrong ends")
    if out:
        return out
    for d, i in D.id1.items():
        for h in D.cells(r, d):
            if not K(d).is_identity(s.cells[(i, h)]):
                out.append(f"identity 1-cell at {d!r} carries a non-identity cell at {h!r}")
    for f, (d, d2) in D.one_cells.items():
        Kf, Kd2, Hd = K(f), K(d2), D.hom(r, d)
        for b, (h, h2) in Hd.morphisms.items():
            lhs = Kd2.compose(Kf(s.components[d](b)), s.cells[(f, h)])
            rhs = Kd2.compose(s.cells[(f, h2)], s.components[d2](D.whisker_left(f, b)))
            if lhs != rhs:
                out.append(f"cell of {f!r} is not natural at {b!r}")
    for (g, f), gf in D.comp1.items():
        d, d3 = D.src1(f), D.tgt1(g)
        K3 = K(d3)
        for h in D.cells(r, d):
            lhs = s.cells[(gf, h)]
            rhs = K3.compose(K(g)(s.cells[(f, h)]), s.cells[(g, D.compose1(f, h))])
            if lhs != rhs:
                out.append(f"composite {g!r} o {f!r} breaks multiplicativity at {h!r}")
    for a, (f, f2) in D.two_cells.items():
        d, d2 = D.one_cells[f]
        Ka, K2 = K(a), K(d2)
        for h in D.cells(r, d):
            lhs = K2.compose(Ka[s.components[d].obj(h)], s.cells[(f, h)])
            rhs = K2.compose(s.cells[(f2, h)], s.components[d2](D.whisker_right(a, h)))
            if lhs != rhs:
                out.append(f"2-cell {a!r} is not respected at {h!r}")
    return out


def is_qnat(D, K, r, s) -> bool:
    return not qnat_problems(D, K, r, s)


def psi(D: FiniteTwoCategory, K: TwoDiagram, r, s: QuasiNat):
    """The value of the ``r`` component at the identity 1-cell."""
    problems = qnat_problems(D, K, r, s)
    if problems:
        raise CategoryError(f"not quasi-natural: {problems[0]}")
    return s.components[r].obj(D.id1[r])


def psi_modification(D: FiniteTwoCategory, r, m: Modification):
    return m.components[(r, D.id1[r])]


def psihat(D: FiniteTwoCategory, K: TwoDiagram, r, U) -> QuasiNat:
    """The transformation ``h |-> K(h)(U)`` with identity cells."""
    if U not in K(r).objects:
        raise CategoryError(f"{U!r} is not an object of K({r!r})")
    comps = {}
    for d in D.objects:
        H = D.hom(r, d)
        comps[d] = Functor(H, K(d), {h: K(h).obj(U) for h in H.objects},
                           {b: K(b)[U] for b in H.morphisms})
    cells = {}
    for f, (d, d2) in D.one_cells.items():
        for h in D.cells(r, d):
            cells[(f, h)] = K(d2).ident(K(D.compose1(f, h)).obj(U))
    return QuasiNat(comps, cells)


def psihat_morphism(D: FiniteTwoCategory, K: TwoDiagram, r, t) -> Modification:
    """The modification ``Sigma_{d,h} = K(h)(t)`` induced by ``t: U -> U'``."""
    U, U2 = K(r).morphisms[t]
    comps = {(d, h): K(h)(t) for d in D.objects for h in D.cells(r, d)}
    return Modification(psihat(D, K, r, U), psihat(D, K, r, U2), comps)


def unit_modification(D: FiniteTwoCategory, K: TwoDiagram, r, s: QuasiNat) -> Modification:
    """Components ``sigma_{h, id_r}`` from ``sigma`` to ``psihat(psi(sigma))``."""
    target = psihat(D, K, r, psi(D, K, r, s))
    comps = {(d, h): s.cells[(h, D.id1[r])] for d in D.objects for h in D.cells(r, d)}
    return Modification(s, target, comps)


def modification_problems(D: FiniteTwoCategory, K: TwoDiagram, r, m: Modification) -> list[str]:
    """Naturality of each component and the cube relation."""
    s, s2 = m.source, m.target
    out = []
    for d in D.objects:
        Kd, H = K(d), D.hom(r, d)
        for h in H.objects:
            c = m.components.get((d, h))
            if c is None or Kd.morphisms.get(c) != (s.components[d].obj(h), s2.components[d].obj(h)):
                return [f"component ({d!r},{h!r}) is missing or has the wrong ends"]
        for b, (h, h2) in H.morphisms.items():
            if Kd.compose(s2.components[d](b), m.components[(d, h)]) != \
                    Kd.compose(m.components[(d, h2)], s.components[d](b)):
                out.append(f"component at {d!r} is not natural at {b!r}")
    for f, (d, d2) in D.one_cells.items():
        K2 = K(d2)
        for h in D.cells(r, d):
            fh = D.compose1(f, h)
            lhs = K2.compose(s2.cells[(f, h)], m.components[(d2, fh)])
            rhs = K2.compose(K(f)(m.components[(d, h)]), s.cells[(f, h)])
            if lhs != rhs:
                out.append(f"cube relation fails at ({f!r},{h!r})")
    return out


# ---------------------------------------------------------------------------
# enumeration


def _cell_choices(D, K, r, comps, f):
    """Every family ``h -> sigma_{f,h}`` natural in ``h`` for fixed components."""
    d, d2 = D.one_cells[f]
    K2, Kf = K(d2), K(f)
    hs = D.cells(r, d)
    options = [K2.hom(comps[d2].obj(D.compose1(f, h)), Kf.obj(comps[d].obj(h))) for h in hs]
    Hd = D.hom(r, d)
    for choice in product(*options):
        cells = dict(zip(((f, h) for h in hs), choice))
        if all(K2.compose(Kf(comps[d](b)), cells[(f, h)]) ==
               K2.compose(cells[(f, h2)], comps[d2](D.whisker_left(f, b)))
               for b, (h, h2) in Hd.morphisms.items()):
            yield cells


def _search_size(D, K, r, functor_lists) -> int:
    total = 1
    for fl in functor_lists.values():
        total *= max(len(fl), 1)
    for f, (d, d2) in D.one_cells.items():
        if f == D.id1[d]:
            continue
        widest = max((len(K(d2).hom(a, b)) for a in K(d2).objects for b in K(d2).objects), default=1)
        total *= max(widest, 1) ** len(D.cells(r, d))
    return total


def enumerate_qnats(D: FiniteTwoCategory, K: TwoDiagram, r, budget: int = 1_000_000,
                    iso_cells: bool = False, strict: bool = False) -> list[QuasiNat]:
    """All quasi-natural transformations ``D(r,-) -> K``.

    ``iso_cells`` keeps those whose cells are all invertible and ``strict``
    those whose cells are all identities.  Raises ``BudgetExceeded`` without a
    partial answer when the candidate space is larger than ``budget``.
    """
    functor_lists = {d: list(functor_candidates(D.hom(r, d), K(d), budget)) for d in D.objects}
    size = _search_size(D, K, r, functor_lists)
    if size > budget:
        raise BudgetExceeded(f"search space {size} exceeds budget {budget}")
    ones = [f for f, (d, _) in D.one_cells.items() if f != D.id1[d]]
    results = []
    for combo in product(*(functor_lists[d] for d in D.objects)):
        comps = dict(zip(D.objects, combo))
        base = {}
        for d, i in D.id1.items():
            for h in D.cells(r, d):
                base[(i, h)] = K(d).ident(comps[d].obj(h))
        per_f = []
        for f in ones:
            opts = []
            for cells in _cell_choices(D, K, r, comps, f):
                Kd2 = K(D.tgt1(f))
                if strict and not all(Kd2.is_identity(c) for c in cells.values()):
                    continue
                if iso_cells and not all(Kd2.is_iso(c) for c in cells.values()):
                    continue
                opts.append(cells)
            per_f.append(opts)
        for pick in product(*per_f):
            cells = dict(base)
            for part in pick:
                cells.update(part)
            s = QuasiNat(comps, cells)
            if is_qnat(D, K, r, s):
                results.append(s)
    return results


def enumerate_modifications(D: FiniteTwoCategory, K: TwoDiagram, r, s: QuasiNat,
                            s2: QuasiNat, budget: int = 1_000_000) -> list[Modification]:
    keys = [(d, h) for d in D.objects for h in D.cells(r, d)]
    options = [K(d).hom(s.components[d].obj(h), s2.components[d].obj(h)) for d, h in keys]
    size = 1
    for o in options:
        size *= max(len(o), 1)
    if size > budget:
        raise BudgetExceeded(f"search space {size} exceeds budget {budget}")
    out = []
    for choice in product(*options):
        m = Modification(s, s2, dict(zip(keys, choice)))
        if not modification_problems(D, K, r, m):
            out.append(m)
    return out
