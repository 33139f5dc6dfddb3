"""Syntax of 2-theories.

1-cells are written in the algebraic direction: a term with ``n`` inputs and
``k`` outputs is an operation taking ``n`` variables to a ``k``-tuple.  A base
term ``Base(u)`` for ``u: [m] -> [n]`` therefore has ``n`` inputs and ``m``
outputs, output ``i`` being variable ``u(i)``.

2-cells are pasting terms over closed generator instances.  Equality of
1-cells is delegated to a normalizer; only ``syntactic`` (free cartesian
terms) and ``strict-assoc`` (additionally flattening designated binary
operations and erasing their unit) are provided.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping, Sequence, Union

from .finsk import FinMap, fin_compose, identity as fin_identity

NORMALIZERS = ("syntactic", "strict-assoc")


class TermError(TypeError):
    """Ill-typed 1-cell or 2-cell term."""


class UnknownGenerator(TermError):
    pass


# ---------------------------------------------------------------------------
# 1-cell terms


class OneCellTerm:
    source: int
    target: int

    def __matmul__(self, inner: "OneCellTerm") -> "Compose":
        return Compose(self, inner)

    def __add__(self, other: "OneCellTerm") -> "Juxtapose":
        return Juxtapose(self, other)


@dataclass(frozen=True)
class Base(OneCellTerm):
    f: FinMap

    @property
    def source(self) -> int:
        return self.f.target

    @property
    def target(self) -> int:
        return self.f.source


@dataclass(frozen=True)
class Gen(OneCellTerm):
    name: str
    source: int
    target: int = 1


@dataclass(frozen=True)
class Compose(OneCellTerm):
    """``outer o inner``; ``inner`` is applied first."""
    outer: OneCellTerm
    inner: OneCellTerm

    @property
    def source(self) -> int:
        return self.inner.source

    @property
    def target(self) -> int:
        return self.outer.target


@dataclass(frozen=True)
class Juxtapose(OneCellTerm):
    left: OneCellTerm
    right: OneCellTerm

    @property
    def source(self) -> int:
        return self.left.source + self.right.source

    @property
    def target(self) -> int:
        return self.left.target + self.right.target


def base(table: Sequence[int], inputs: int | None = None) -> Base:
    """``Base`` whose output ``i`` is input ``table[i]``."""
    return Base(FinMap.from_table(table, inputs))


def ident(n: int = 1) -> Base:
    return Base(fin_identity(n))


def swap() -> Base:
    return base([1, 0])


def juxt(*terms: OneCellTerm) -> OneCellTerm:
    if not terms:
        return ident(0)
    out = terms[0]
    for t in terms[1:]:
        out = Juxtapose(out, t)
    return out


def power(t: OneCellTerm, k: int) -> OneCellTerm:
    return juxt(*([t] * k)) if k else ident(0)


def compose(*terms: OneCellTerm) -> OneCellTerm:
    """``compose(a, b, c) = a o b o c``."""
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = Compose(t, out)
    return out


def term_depth(t: OneCellTerm) -> int:
    if isinstance(t, Base):
        return 0
    if isinstance(t, Gen):
        return 1
    if isinstance(t, Compose):
        return term_depth(t.outer) + term_depth(t.inner)
    return max(term_depth(t.left), term_depth(t.right))


# ---------------------------------------------------------------------------
# 2-cell terms


class TwoCellTerm:
    pass


@dataclass(frozen=True)
class Id(TwoCellTerm):
    w: OneCellTerm


@dataclass(frozen=True)
class GenInst(TwoCellTerm):
    name: str


@dataclass(frozen=True)
class VComp(TwoCellTerm):
    """Vertical composite: ``first`` then ``second``."""
    second: TwoCellTerm
    first: TwoCellTerm


@dataclass(frozen=True)
class HComp(TwoCellTerm):
    """Horizontal composite; boundaries compose as ``outer o inner``."""
    outer: TwoCellTerm
    inner: TwoCellTerm


@dataclass(frozen=True)
class Beside(TwoCellTerm):
    """Juxtaposition of 2-cells."""
    left: TwoCellTerm
    right: TwoCellTerm


@dataclass(frozen=True)
class Inverse(TwoCellTerm):
    a: TwoCellTerm


def vcomp(*cells: TwoCellTerm) -> TwoCellTerm:
    """``vcomp(a, b, c)`` runs ``a`` first, then ``b``, then ``c``."""
    out = cells[0]
    for c in cells[1:]:
        out = VComp(c, out)
    return out


def beside(*cells: TwoCellTerm) -> TwoCellTerm:
    if not cells:
        return Id(ident(0))
    out = cells[0]
    for c in cells[1:]:
        out = Beside(out, c)
    return out


def whisker(outer: OneCellTerm | TwoCellTerm, inner: OneCellTerm | TwoCellTerm) -> HComp:
    """Horizontal composite, promoting bare 1-cells to identities."""
    if isinstance(outer, OneCellTerm):
        outer = Id(outer)
    if isinstance(inner, OneCellTerm):
        inner = Id(inner)
    return HComp(outer, inner)


def generator_names(a: TwoCellTerm) -> set[str]:
    if isinstance(a, GenInst):
        return {a.name}
    if isinstance(a, Id):
        return set()
    if isinstance(a, Inverse):
        return generator_names(a.a)
    if isinstance(a, VComp):
        return generator_names(a.first) | generator_names(a.second)
    if isinstance(a, HComp):
        return generator_names(a.outer) | generator_names(a.inner)
    return generator_names(a.left) | generator_names(a.right)


def one_cell_generators(t: OneCellTerm) -> set[str]:
    if isinstance(t, Gen):
        return {t.name}
    if isinstance(t, Base):
        return set()
    if isinstance(t, Compose):
        return one_cell_generators(t.outer) | one_cell_generators(t.inner)
    return one_cell_generators(t.left) | one_cell_generators(t.right)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class TwoCellGen:
    name: str
    src: OneCellTerm
    tgt: OneCellTerm
    invertible: bool = True


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: Union[OneCellTerm, TwoCellTerm]
    rhs: Union[OneCellTerm, TwoCellTerm]


@dataclass(frozen=True)
class TheoryPresentation:
    name: str = field(compare=False)
    one_cell_gens: tuple[tuple[str, int, int], ...] = ()
    two_cell_gens: tuple[TwoCellGen, ...] = ()
    one_cell_relations: tuple[Relation, ...] = ()
    two_cell_relations: tuple[Relation, ...] = ()
    normalizer: str = "syntactic"
    # (binary operation, unit or None) pairs flattened by strict-assoc
    assoc_ops: tuple[tuple[str, str | None], ...] = ()
    coherent: bool = False
    dimension: int = 2
    roles: tuple[tuple[str, str], ...] = field(default=(), compare=False)
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.normalizer not in NORMALIZERS:
            raise ValueError(f"unknown normalizer {self.normalizer!r}")
        if self.dimension not in (1, 2):
            raise ValueError("dimension is 1 or 2")

    # lookups -------------------------------------------------------------
    def gen1(self, name: str) -> Gen:
        for n, s, t in self.one_cell_gens:
            if n == name:
                return Gen(n, s, t)
        raise UnknownGenerator(f"{self.name}: no 1-cell generator {name!r}")

    def gen2(self, name: str) -> TwoCellGen:
        for g in self.two_cell_gens:
            if g.name == name:
                return g
        raise UnknownGenerator(f"{self.name}: no 2-cell generator {name!r}")

    def role(self, key: str) -> str | None:
        return dict(self.roles).get(key)

    def with_roles(self, **roles: str) -> "TheoryPresentation":
        merged = dict(self.roles)
        merged.update(roles)
        return replace(self, roles=tuple(sorted(merged.items())))

    def renamed(self, name: str) -> "TheoryPresentation":
        return replace(self, name=name)


# ---------------------------------------------------------------------------
# normal forms
#
# A tree is a variable index (int) or a tuple (name, output_index, children).


Tree = Union[int, tuple]


@dataclass(frozen=True)
class NormalForm:
    inputs: int
    outputs: tuple

    @property
    def target(self) -> int:
        return len(self.outputs)


def _assoc_table(theory: TheoryPresentation | None, normalizer: str) -> dict:
    if normalizer == "syntactic" or theory is None:
        return {}
    return {op: unit for op, unit in theory.assoc_ops}


def _make_node(name: str, k: int, children: tuple, assoc: dict) -> Tree:
    if name not in assoc:
        return (name, k, children)
    unit = assoc[name]
    unit_tree = (unit, 0, ()) if unit is not None else None
    flat: list = []
    for c in children:
        if isinstance(c, tuple) and c[0] == name:
            flat.extend(c[2])
        elif unit_tree is not None and c == unit_tree:
            continue
        else:
            flat.append(c)
    if not flat and unit_tree is not None:
        return unit_tree
    if len(flat) == 1:
        return flat[0]
    return (name, 0, tuple(flat))


def _apply(t: OneCellTerm, args: tuple, assoc: dict) -> tuple:
    if isinstance(t, Base):
        return tuple(args[x] for x in t.f.table)
    if isinstance(t, Gen):
        if len(args) != t.source:
            raise TermError(f"generator {t.name} expects {t.source} inputs, got {len(args)}")
        return tuple(_make_node(t.name, k, args, assoc) for k in range(t.target))
    if isinstance(t, Compose):
        mid = _apply(t.inner, args, assoc)
        if len(mid) != t.outer.source:
            raise TermError(
                f"cannot compose: inner has {len(mid)} outputs, outer expects {t.outer.source}")
        return _apply(t.outer, mid, assoc)
    if isinstance(t, Juxtapose):
        k = t.left.source
        return _apply(t.left, args[:k], assoc) + _apply(t.right, args[k:], assoc)
    raise TermError(f"not a 1-cell term: {t!r}")


def normal_form(t: OneCellTerm, theory: TheoryPresentation | None = None,
                normalizer: str | None = None) -> NormalForm:
    if normalizer is None:
        normalizer = theory.normalizer if theory is not None else "syntactic"
    if normalizer not in NORMALIZERS:
        raise ValueError(f"unknown normalizer {normalizer!r}")
    assoc = _assoc_table(theory, normalizer)
    return NormalForm(t.source, _apply(t, tuple(range(t.source)), assoc))


def _leaves(tree: Tree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    out: list[int] = []
    for c in tree[2]:
        out.extend(_leaves(c))
    return out


def _tree_term(tree: Tree, arities: Mapping[str, tuple[int, int]]) -> OneCellTerm:
    """Term with one input per leaf occurrence (in order) computing ``tree``."""
    if isinstance(tree, int):
        return ident(1)
    name, k, children = tree
    src, tgt = arities.get(name, (len(children), 1))
    if len(children) != src:
        # a flattened associative list: rebuild left-nested
        nested = children[0]
        for c in children[1:]:
            nested = (name, 0, (nested, c))
        return _tree_term(nested, {**arities, name: (2, 1)})
    head: OneCellTerm = Gen(name, src, tgt)
    if tgt != 1:
        head = Compose(base([k], tgt), head)
    if all(isinstance(c, int) for c in children):
        return head
    return Compose(head, juxt(*[_tree_term(c, arities) for c in children]))


def from_normal_form(nf: NormalForm, theory: TheoryPresentation | None = None) -> OneCellTerm:
    arities = {}
    if theory is not None:
        arities = {n: (s, t) for n, s, t in theory.one_cell_gens}
    body = juxt(*[_tree_term(tree, arities) for tree in nf.outputs])
    leaves = [x for tree in nf.outputs for x in _leaves(tree)]
    if leaves == list(range(nf.inputs)):
        return body
    return Compose(body, base(leaves, nf.inputs))


def normalize_one(t: OneCellTerm, theory: TheoryPresentation | None = None,
                  normalizer: str | None = None) -> OneCellTerm:
    """Canonical representative of ``t`` under the normalizer."""
    return from_normal_form(normal_form(t, theory, normalizer), theory)


def one_cells_equal(a: OneCellTerm, b: OneCellTerm, theory: TheoryPresentation | None = None,
                    normalizer: str | None = None) -> bool:
    if (a.source, a.target) != (b.source, b.target):
        return False
    return normal_form(a, theory, normalizer) == normal_form(b, theory, normalizer)


def is_linear(t: OneCellTerm) -> bool:
    nf = normal_form(t)
    leaves = [x for tree in nf.outputs for x in _leaves(tree)]
    return sorted(leaves) == list(range(nf.inputs))


def output_layout(t: OneCellTerm) -> list[list[int]]:
    """Variables of each output, left to right; nullary operations contribute nothing."""
    nf = normal_form(t)
    return [_leaves(tree) for tree in nf.outputs]


# ---------------------------------------------------------------------------
# typing


def typecheck_one(t: OneCellTerm, theory: TheoryPresentation | None = None) -> tuple[int, int]:
    if isinstance(t, Base):
        return t.source, t.target
    if isinstance(t, Gen):
        if theory is not None:
            g = theory.gen1(t.name)
            if (g.source, g.target) != (t.source, t.target):
                raise TermError(
                    f"generator {t.name} declared {g.source}->{g.target}, used {t.source}->{t.target}")
        return t.source, t.target
    if isinstance(t, Compose):
        os_, ot = typecheck_one(t.outer, theory)
        is_, it = typecheck_one(t.inner, theory)
        if it != os_:
            raise TermError(f"arity mismatch in composite: {it} != {os_}")
        return is_, ot
    if isinstance(t, Juxtapose):
        ls, lt = typecheck_one(t.left, theory)
        rs, rt = typecheck_one(t.right, theory)
        return ls + rs, lt + rt
    raise TermError(f"not a 1-cell term: {t!r}")


def resolve_one(t: OneCellTerm, theory: TheoryPresentation) -> OneCellTerm:
    """Replace generator arities by the declared ones (used by the parser)."""
    if isinstance(t, Gen):
        return theory.gen1(t.name)
    if isinstance(t, Compose):
        return Compose(resolve_one(t.outer, theory), resolve_one(t.inner, theory))
    if isinstance(t, Juxtapose):
        return Juxtapose(resolve_one(t.left, theory), resolve_one(t.right, theory))
    return t


def typecheck_two(a: TwoCellTerm, theory: TheoryPresentation) -> tuple[OneCellTerm, OneCellTerm]:
    """Boundary 1-cells ``(src, tgt)`` of a pasting term."""
    if isinstance(a, Id):
        typecheck_one(a.w, theory)
        return a.w, a.w
    if isinstance(a, GenInst):
        g = theory.gen2(a.name)
        return g.src, g.tgt
    if isinstance(a, VComp):
        s1, t1 = typecheck_two(a.first, theory)
        s2, t2 = typecheck_two(a.second, theory)
        if not one_cells_equal(t1, s2, theory):
            raise TermError(
                f"vertical composite boundary mismatch: {normal_form(t1, theory)} "
                f"vs {normal_form(s2, theory)}")
        return s1, t2
    if isinstance(a, HComp):
        so, to = typecheck_two(a.outer, theory)
        si, ti = typecheck_two(a.inner, theory)
        if si.target != so.source:
            raise TermError(f"horizontal composite arity mismatch: {si.target} != {so.source}")
        return Compose(so, si), Compose(to, ti)
    if isinstance(a, Beside):
        sl, tl = typecheck_two(a.left, theory)
        sr, tr = typecheck_two(a.right, theory)
        return Juxtapose(sl, sr), Juxtapose(tl, tr)
    if isinstance(a, Inverse):
        for name in generator_names(a.a):
            if not theory.gen2(name).invertible:
                raise TermError(f"cannot invert: {name} is not invertible")
        s, t = typecheck_two(a.a, theory)
        return t, s
    raise TermError(f"not a 2-cell term: {a!r}")


def check_presentation(theory: TheoryPresentation) -> None:
    """Raise ``TermError`` unless every generator and relation is well formed."""
    names = [n for n, _, _ in theory.one_cell_gens] + [g.name for g in theory.two_cell_gens]
    if len(set(names)) != len(names):
        raise TermError(f"{theory.name}: duplicate generator names")
    for g in theory.two_cell_gens:
        for side in (g.src, g.tgt):
            typecheck_one(side, theory)
        if (g.src.source, g.src.target) != (g.tgt.source, g.tgt.target):
            raise TermError(f"{theory.name}: 2-cell generator {g.name} has non-parallel boundary")
    for r in theory.one_cell_relations:
        if typecheck_one(r.lhs, theory) != typecheck_one(r.rhs, theory):
            raise TermError(f"{theory.name}: relation {r.name} is not parallel")
    for r in theory.two_cell_relations:
        sl, tl = typecheck_two(r.lhs, theory)
        sr, tr = typecheck_two(r.rhs, theory)
        if not (one_cells_equal(sl, sr, theory) and one_cells_equal(tl, tr, theory)):
            raise TermError(f"{theory.name}: relation {r.name} is not parallel")


# ---------------------------------------------------------------------------
# morphisms of presentations


@dataclass(frozen=True)
class TheoryMorphismPresentation:
    source: TheoryPresentation
    target: TheoryPresentation
    gen1_map: Mapping[str, OneCellTerm]
    gen2_map: Mapping[str, TwoCellTerm]
    name: str = ""

    def __hash__(self):
        return hash((self.name, self.source.name, self.target.name))


def identity_morphism(t: TheoryPresentation) -> TheoryMorphismPresentation:
    return TheoryMorphismPresentation(
        t, t,
        {n: Gen(n, s, k) for n, s, k in t.one_cell_gens},
        {g.name: GenInst(g.name) for g in t.two_cell_gens},
        name=f"id({t.name})")


def apply_morphism(G: TheoryMorphismPresentation, t):
    if isinstance(t, OneCellTerm):
        return _apply_one(G, t)
    return _apply_two(G, t)


def _apply_one(G: TheoryMorphismPresentation, t: OneCellTerm) -> OneCellTerm:
    if isinstance(t, Base):
        return t
    if isinstance(t, Gen):
        if t.name not in G.gen1_map:
            raise UnknownGenerator(f"morphism {G.name} does not map 1-cell {t.name}")
        return G.gen1_map[t.name]
    if isinstance(t, Compose):
        return Compose(_apply_one(G, t.outer), _apply_one(G, t.inner))
    return Juxtapose(_apply_one(G, t.left), _apply_one(G, t.right))


def _apply_two(G: TheoryMorphismPresentation, a: TwoCellTerm) -> TwoCellTerm:
    if isinstance(a, Id):
        return Id(_apply_one(G, a.w))
    if isinstance(a, GenInst):
        if a.name not in G.gen2_map:
            raise UnknownGenerator(f"morphism {G.name} does not map 2-cell {a.name}")
        return G.gen2_map[a.name]
    if isinstance(a, VComp):
        return VComp(_apply_two(G, a.second), _apply_two(G, a.first))
    if isinstance(a, HComp):
        return HComp(_apply_two(G, a.outer), _apply_two(G, a.inner))
    if isinstance(a, Beside):
        return Beside(_apply_two(G, a.left), _apply_two(G, a.right))
    return Inverse(_apply_two(G, a.a))


def compose_morphisms(G2: TheoryMorphismPresentation,
                      G1: TheoryMorphismPresentation) -> TheoryMorphismPresentation:
    """``G2 o G1``."""
    return TheoryMorphismPresentation(
        G1.source, G2.target,
        {k: _apply_one(G2, v) for k, v in G1.gen1_map.items()},
        {k: _apply_two(G2, v) for k, v in G1.gen2_map.items()},
        name=f"{G2.name}.{G1.name}")


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Check:
    status: str  # PASS, FAIL, UNDECIDED, NOT-CHECKED
    check_id: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.status}\t{self.check_id}\t{self.detail}"


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, status: str, check_id: str, detail: str = "") -> None:
        self.checks.append(Check(status, check_id, detail))

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.status != "FAIL" for c in self.checks)

    def status_of(self, check_id: str) -> str:
        for c in self.checks:
            if c.check_id == check_id:
                return c.status
        raise KeyError(check_id)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "FAIL"]

    def lines(self) -> list[str]:
        return sorted(c.line() for c in self.checks)

    def __str__(self):
        return "\n".join(self.lines())


# relation deciders, consulted in order by validate_morphism; each returns
# True (proved), False (refuted) or None (cannot decide)
RelationDecider = Callable[[TheoryPresentation, TwoCellTerm, TwoCellTerm], Union[bool, None]]


def _identity_only(theory, lhs, rhs):
    if generator_names(lhs) or generator_names(rhs):
        return None
    return True  # composites of identities are identities once boundaries agree


def _is_target_relation(theory, lhs, rhs):
    for r in theory.two_cell_relations:
        if (r.lhs, r.rhs) in ((lhs, rhs), (rhs, lhs)):
            return True
    return None


def validate_morphism(G: TheoryMorphismPresentation,
                      deciders: Sequence[RelationDecider] = ()) -> Report:
    """Check base preservation, arities and relation preservation of ``G``."""
    rep = Report()
    S, T = G.source, G.target
    for name, s, t in S.one_cell_gens:
        cid = f"gen1:{name}"
        if name not in G.gen1_map:
            rep.add("FAIL", cid, "unmapped")
            continue
        img = G.gen1_map[name]
        try:
            arity = typecheck_one(img, T)
        except TermError as exc:
            rep.add("FAIL", cid, str(exc))
            continue
        rep.add("PASS" if arity == (s, t) else "FAIL", cid, f"arity {arity} vs {(s, t)}")
    rep.add("PASS", "base", "Base terms are fixed by construction")
    for g in S.two_cell_gens:
        cid = f"gen2:{g.name}"
        if g.name not in G.gen2_map:
            rep.add("FAIL", cid, "unmapped")
            continue
        try:
            src, tgt = typecheck_two(G.gen2_map[g.name], T)
            want_s, want_t = _apply_one(G, g.src), _apply_one(G, g.tgt)
            ok = one_cells_equal(src, want_s, T) and one_cells_equal(tgt, want_t, T)
            rep.add("PASS" if ok else "FAIL", cid, "boundary")
        except (TermError, UnknownGenerator) as exc:
            rep.add("FAIL", cid, str(exc))
    for r in S.one_cell_relations:
        cid = f"rel1:{r.name}"
        try:
            lhs, rhs = _apply_one(G, r.lhs), _apply_one(G, r.rhs)
        except UnknownGenerator as exc:
            rep.add("FAIL", cid, str(exc))
            continue
        if one_cells_equal(lhs, rhs, T):
            rep.add("PASS", cid, "normal forms agree")
        elif T.coherent or any(
                {normal_form(lhs, T), normal_form(rhs, T)}
                == {normal_form(q.lhs, T), normal_form(q.rhs, T)}
                for q in T.one_cell_relations):
            rep.add("PASS", cid, "target relation")
        else:
            rep.add("UNDECIDED", cid, "normal forms differ")
    for r in S.two_cell_relations:
        cid = f"rel2:{r.name}"
        try:
            lhs, rhs = _apply_two(G, r.lhs), _apply_two(G, r.rhs)
            typecheck_two(lhs, T)
            typecheck_two(rhs, T)
        except (TermError, UnknownGenerator) as exc:
            rep.add("FAIL", cid, str(exc))
            continue
        if lhs == rhs:
            rep.add("PASS", cid, "syntactically equal")
            continue
        verdict, how = None, ""
        for decide, label in [(_is_target_relation, "target relation"),
                              (_identity_only, "identity composites")] + [
                (d, "model check") for d in deciders]:
            verdict = decide(T, lhs, rhs)
            if verdict is not None:
                how = label
                break
        if verdict is None:
            rep.add("UNDECIDED", cid, "no decision procedure")
        else:
            rep.add("PASS" if verdict else "FAIL", cid, how)
    return rep
