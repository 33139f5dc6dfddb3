"""Evaluation of 2-cell pasting terms in free models.

A linear 1-cell with ``k`` outputs sends a vector of strand counts (one per
input variable) to ``k`` strand counts; a 2-cell evaluates to one model
morphism per output.  Horizontal composition follows the usual formula
``(beta * alpha)_X = f(alpha_X) then beta_{g'(X)}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from ..presentation import (
    Beside, GenInst, HComp, Id, Inverse, NormalForm, OneCellTerm, Report, TermError,
    TheoryPresentation, TwoCellGen, TwoCellTerm, VComp, normal_form, output_layout,
    typecheck_two,
)
from .braids import (
    BraidWord, ModelError, Permutation, RibbonBraid, full_twist, permutation_braid,
)

MODEL_KINDS = ("perm", "braid", "ribbon", "thin")

_MORPHISM_CLASS = {"perm": Permutation, "braid": BraidWord, "ribbon": RibbonBraid}


@dataclass(frozen=True)
class ThinCell:
    """The unique 2-cell between two parallel operations."""
    src: NormalForm
    tgt: NormalForm

    def then(self, other: "ThinCell") -> "ThinCell":
        if other.src != self.tgt:
            raise ModelError("thin cells are not composable")
        return ThinCell(self.src, other.tgt)

    def inverse(self) -> "ThinCell":
        return ThinCell(self.tgt, self.src)

    def equals(self, other) -> bool:
        return self == other

    def __str__(self):
        return f"thin({self.src.outputs} => {self.tgt.outputs})"


def model_identity(kind: str, n: int):
    if kind == "perm":
        return Permutation.identity(n)
    if kind == "braid":
        return BraidWord.identity(n)
    if kind == "ribbon":
        return RibbonBraid.identity(n)
    raise ModelError(f"no identities in the {kind} model")


def morphisms_equal(a: Sequence, b: Sequence) -> bool:
    return len(a) == len(b) and all(x.equals(y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# generator rules
#
# A rule receives the generator, the model kind and the input sizes and
# returns one morphism per output.


Rule = Callable[[TwoCellGen, str, Sequence[int]], list]


class NotInterpretable(ModelError):
    pass


def output_sizes(w: OneCellTerm, sizes: Sequence[int]) -> list[int]:
    if len(sizes) != w.source:
        raise ModelError(f"{len(sizes)} sizes given for {w.source} inputs")
    layout = output_layout(w)
    used = [v for leaves in layout for v in leaves]
    if sorted(used) != list(range(w.source)):
        raise ModelError("strand models need linear boundaries")
    return [sum(sizes[v] for v in leaves) for leaves in layout]


def boundary_permutations(src: OneCellTerm, tgt: OneCellTerm,
                          sizes: Sequence[int]) -> list[Permutation]:
    """Per output, where each strand of the source layout ends up in the target."""
    output_sizes(src, sizes)
    output_sizes(tgt, sizes)
    out = []
    for ls, lt in zip(output_layout(src), output_layout(tgt)):
        if sorted(ls) != sorted(lt):
            raise NotInterpretable("boundary outputs use different variables")
        tpos, p = {}, 0
        for v in lt:
            tpos[v] = p
            p += sizes[v]
        table = []
        for v in ls:
            table.extend(tpos[v] + k for k in range(sizes[v]))
        out.append(Permutation(tuple(table)))
    return out


def positive_rule(gen: TwoCellGen, kind: str, sizes: Sequence[int]) -> list:
    """Positive permutation braid realising the boundary reindexing."""
    perms = boundary_permutations(gen.src, gen.tgt, sizes)
    if kind == "perm":
        return perms
    braids = [permutation_braid(p) for p in perms]
    if kind == "braid":
        return braids
    return [RibbonBraid((0,) * b.strands, b) for b in braids]


def twist_rule(gen: TwoCellGen, kind: str, sizes: Sequence[int]) -> list:
    """Full twist of each output ribbon: every strand twisted once plus ``Delta^2``."""
    counts = output_sizes(gen.src, sizes)
    if kind == "perm":
        return [Permutation.identity(k) for k in counts]
    if kind == "ribbon":
        return [RibbonBraid((1,) * k, full_twist(k)) for k in counts]
    raise NotInterpretable(f"twist has no interpretation in the {kind} model")


@dataclass
class ModelInterp:
    kind: str
    theory: TheoryPresentation
    rules: Mapping[str, Rule] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")

    def rule(self, name: str) -> Rule:
        if name in self.rules:
            return self.rules[name]
        raise ModelError(f"generator {name} is not interpreted")


COMPATIBLE = {
    "perm": ("sSym", "Sym"),
    "braid": ("sBraid", "Braid", "sMon", "Mon"),
    "ribbon": ("sBal", "Bal", "Twist", "sBraid", "Braid", "sMon", "Mon"),
    "thin": ("Mon", "sMon", "Assoc"),
}


def default_rules(theory: TheoryPresentation) -> dict[str, Rule]:
    twist = theory.role("twist")
    return {g.name: (twist_rule if g.name == twist else positive_rule)
            for g in theory.two_cell_gens}


def standard_interp(kind: str, theory: TheoryPresentation | str,
                    strict_pairs: bool = True) -> ModelInterp:
    """Free-model interpretation of a theory.

    With ``strict_pairs`` only the pairs for which the model is the free one
    are accepted.
    """
    if isinstance(theory, str):
        from ..theories import build_theory
        theory = build_theory(theory)
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    if strict_pairs and theory.name not in COMPATIBLE[kind]:
        raise ModelError(f"the {kind} model is not a model of {theory.name}")
    return ModelInterp(kind, theory, default_rules(theory))


# ---------------------------------------------------------------------------
# evaluation


def _apply_functor(w: OneCellTerm, comps: Sequence, kind: str) -> list:
    """Image of a tuple of morphisms (one per input) under the operation ``w``."""
    out = []
    for leaves in output_layout(w):
        m = model_identity(kind, 0)
        for v in leaves:
            m = m.beside(comps[v])
        out.append(m)
    return out


def eval_two_cell(a: TwoCellTerm, interp: ModelInterp, sizes: Sequence[int]) -> list:
    """One model morphism per output of the boundary of ``a``."""
    sizes = tuple(sizes)
    if interp.kind == "thin":
        src, tgt = typecheck_two(a, interp.theory)
        if len(sizes) != src.source:
            raise ModelError(f"{len(sizes)} sizes given for {src.source} inputs")
        return [ThinCell(normal_form(src, interp.theory), normal_form(tgt, interp.theory))]
    return _eval(a, interp, sizes)


def _eval(a: TwoCellTerm, interp: ModelInterp, sizes: tuple) -> list:
    kind = interp.kind
    if isinstance(a, Id):
        return [model_identity(kind, k) for k in output_sizes(a.w, sizes)]
    if isinstance(a, GenInst):
        gen = interp.theory.gen2(a.name)
        return interp.rule(a.name)(gen, kind, sizes)
    if isinstance(a, VComp):
        first = _eval(a.first, interp, sizes)
        second = _eval(a.second, interp, sizes)
        if len(first) != len(second):
            raise ModelError("vertical composite output counts differ")
        return [x.then(y) for x, y in zip(first, second)]
    if isinstance(a, HComp):
        _, inner_tgt = typecheck_two(a.inner, interp.theory)
        outer_src, _ = typecheck_two(a.outer, interp.theory)
        inner = _eval(a.inner, interp, sizes)
        mid = output_sizes(inner_tgt, sizes)
        outer = _eval(a.outer, interp, tuple(mid))
        under = _apply_functor(outer_src, inner, kind)
        return [x.then(y) for x, y in zip(under, outer)]
    if isinstance(a, Beside):
        src_left, _ = typecheck_two(a.left, interp.theory)
        k = src_left.source
        return _eval(a.left, interp, sizes[:k]) + _eval(a.right, interp, sizes[k:])
    if isinstance(a, Inverse):
        return [x.inverse() for x in _eval(a.a, interp, sizes)]
    raise TermError(f"not a 2-cell term: {a!r}")


def underlying_matches_boundary(a: TwoCellTerm, interp: ModelInterp, sizes: Sequence[int]) -> bool:
    src, tgt = typecheck_two(a, interp.theory)
    want = boundary_permutations(src, tgt, sizes)
    got = [m if isinstance(m, Permutation) else m.underlying()
           for m in eval_two_cell(a, interp, sizes)]
    return got == want


def size_vectors(arity: int, max_size: int = 2, min_size: int = 0) -> list[tuple[int, ...]]:
    return list(product(range(min_size, max_size + 1), repeat=arity))


def describe(ms: Sequence) -> str:
    return "; ".join(str(m) for m in ms)


def compare_cells(lhs: TwoCellTerm, rhs: TwoCellTerm, interp: ModelInterp,
                  sizes: Sequence[int]) -> tuple[bool, str]:
    x = eval_two_cell(lhs, interp, sizes)
    y = eval_two_cell(rhs, interp, sizes)
    if morphisms_equal(x, y):
        return True, describe(x)
    return False, f"{describe(x)} != {describe(y)}"


def check_relations(t: TheoryPresentation, interp: ModelInterp,
                    sizes: Iterable[Sequence[int]] | None = None,
                    max_size: int = 2) -> Report:
    """Evaluate both sides of every 2-cell relation at every size vector."""
    rep = Report()
    for r in t.two_cell_relations:
        try:
            arity = typecheck_two(r.lhs, t)[0].source
        except TermError as exc:
            rep.add("FAIL", f"{r.name}", f"ill-typed: {exc}")
            continue
        vectors = size_vectors(arity, max_size) if sizes is None else [
            _fit(s, arity) for s in sizes]
        for vec in dict.fromkeys(vectors):
            cid = f"{r.name}@{','.join(map(str, vec))}"
            try:
                ok, detail = compare_cells(r.lhs, r.rhs, interp, vec)
            except ModelError as exc:
                rep.add("FAIL", cid, f"evaluation error: {exc}")
                continue
            rep.add("PASS" if ok else "FAIL", cid, detail)
    return rep


def _fit(vec: Sequence[int], arity: int) -> tuple[int, ...]:
    """Pad with the last entry (or 1) or truncate to ``arity`` entries."""
    vec = list(vec)
    fill = vec[-1] if vec else 1
    return tuple((vec + [fill] * arity)[:arity])


# ---------------------------------------------------------------------------
# relation decider for validate_morphism

FREE_MODEL = {"sSym": "perm", "Sym": "perm", "sBraid": "braid", "Braid": "braid",
              "sBal": "ribbon", "Bal": "ribbon", "Mon": "thin", "sMon": "thin"}


def model_decider(theory: TheoryPresentation, lhs: TwoCellTerm, rhs: TwoCellTerm,
                  max_size: int = 2):
    """Decide a 2-cell equation in a theory whose free model is available."""
    kind = FREE_MODEL.get(theory.name)
    if kind is None:
        return None
    interp = standard_interp(kind, theory)
    arity = typecheck_two(lhs, theory)[0].source
    for vec in size_vectors(arity, max_size):
        ok, _ = compare_cells(lhs, rhs, interp, vec)
        if not ok:
            return False
    return True


def bounded_vectors(arity: int, max_size: int = 2, limit: int = 729) -> list[tuple[int, ...]]:
    """All size vectors when there are at most ``limit``; otherwise a fixed sample.

    The sample always contains the constant vectors and every vector with a
    single entry different from 1.
    """
    total = (max_size + 1) ** arity
    if total <= limit:
        return size_vectors(arity, max_size)
    import random
    rng = random.Random(arity * 1000 + max_size)
    out = [(k,) * arity for k in range(max_size + 1)]
    for i in range(arity):
        for k in range(max_size + 1):
            v = [1] * arity
            v[i] = k
            out.append(tuple(v))
    while len(set(out)) < limit:
        out.append(tuple(rng.randint(0, max_size) for _ in range(arity)))
    return sorted(set(out))
