"""Search for isomorphisms and equivalences between finite categories.

Functors ``F`` are enumerated by backtracking.  For an equivalence the
quasi-inverse ``G`` is built from the witnesses that ``F`` is full, faithful
and essentially surjective; both natural isomorphisms are then checked
directly.  Exhausting the budget raises ``BudgetExceeded`` so a caller can
report "not verified" rather than "not equivalent".
"""
from __future__ import annotations

from dataclasses import dataclass

from .category import (
    BudgetExceeded, CategoryError, FiniteCategory, Functor, NatTrans, functor_candidates,
    identity_functor,
)


@dataclass(frozen=True)
class Equivalence:
    forward: Functor
    backward: Functor
    unit: NatTrans      # id_A => G F
    counit: NatTrans    # F G => id_B

    def validate(self) -> None:
        for F in (self.forward, self.backward):
            F.validate()
        for eta in (self.unit, self.counit):
            eta.validate()
            if not eta.is_iso():
                raise CategoryError("unit or counit is not invertible")


def _signature(C: FiniteCategory) -> tuple:
    return len(C.objects), len(C.morphisms), sorted(
        len(C.hom(a, b)) for a in C.objects for b in C.objects)


def find_isomorphism(A: FiniteCategory, B: FiniteCategory, budget: int = 200_000) -> Functor | None:
    if _signature(A) != _signature(B):
        return None
    for F in functor_candidates(A, B, budget):
        if len(set(F.on_objects.values())) == len(B.objects) and \
                len(set(F.on_morphisms.values())) == len(B.morphisms):
            return F
    return None


def is_fully_faithful(F: Functor) -> bool:
    A, B = F.source, F.target
    for a in A.objects:
        for a2 in A.objects:
            imgs = [F(f) for f in A.hom(a, a2)]
            if len(set(imgs)) != len(imgs) or len(imgs) != len(B.hom(F.obj(a), F.obj(a2))):
                return False
    return True


def _iso_witnesses(F: Functor) -> dict | None:
    """For each object of the target, a source object and an iso from its image."""
    A, B = F.source, F.target
    out = {}
    for b in B.objects:
        for a in A.objects:
            iso = next((u for u in B.hom(F.obj(a), b) if B.is_iso(u)), None)
            if iso is not None:
                out[b] = (a, iso)
                break
        else:
            return None
    return out


def quasi_inverse(F: Functor) -> Equivalence | None:
    """Build ``G`` with unit and counit when ``F`` is an equivalence."""
    if not is_fully_faithful(F):
        return None
    wit = _iso_witnesses(F)
    if wit is None:
        return None
    A, B = F.source, F.target

    def preimage(a, a2, u):
        for f in A.hom(a, a2):
            if F(f) == u:
                return f
        raise CategoryError("functor is not full")

    G_obj = {b: wit[b][0] for b in B.objects}
    G_mor = {}
    for u, (b, b2) in B.morphisms.items():
        a, phi = wit[b]
        a2, phi2 = wit[b2]
        G_mor[u] = preimage(a, a2, B.compose_path(B.inverse(phi2), u, phi))
    G = Functor(B, A, G_obj, G_mor)
    counit = NatTrans(G.then(F), identity_functor(B),
                      {b: wit[b][1] for b in B.objects})
    unit = NatTrans(identity_functor(A), F.then(G),
                    {a: preimage(a, G_obj[F.obj(a)], B.inverse(wit[F.obj(a)][1]))
                     for a in A.objects})
    eq = Equivalence(F, G, unit, counit)
    eq.validate()
    return eq


def find_equivalence(A: FiniteCategory, B: FiniteCategory,
                     budget: int = 200_000) -> Equivalence | None:
    """An equivalence ``A -> B`` or None after an exhaustive search."""
    if len(A.iso_classes()) != len(B.iso_classes()):
        return None
    for F in functor_candidates(A, B, budget):
        eq = quasi_inverse(F)
        if eq is not None:
            return eq
    return None


__all__ = ["Equivalence", "BudgetExceeded", "find_isomorphism", "find_equivalence",
           "is_fully_faithful", "quasi_inverse"]
