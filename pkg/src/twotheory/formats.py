"""Theory files and diagram files in s-expression syntax.

Theory files::

    (theory NAME
      (gen1 NAME SRC TGT)* (gen2 NAME TERM TERM [iso])*
      (rel1 [NAME] TERM TERM)* (rel2 [NAME] TERM TERM)* (normalizer ID)?
      (assoc OP UNIT)* (dimension N)? (coherent)? (role KEY NAME)* (note "text")*)

1-cell terms are ``(base (N ...) [INPUTS])``, ``(gen NAME)``, ``(o OUTER
INNER)`` and ``(+ LEFT RIGHT)``.  2-cell terms are ``(id TERM)``, ``(gen
NAME)``, ``(v SECOND FIRST)``, ``(h OUTER INNER)``, ``(+ LEFT RIGHT)`` and
``(inv CELL)``.
"""
from __future__ import annotations

from .presentation import (
    Base, Beside, Compose, Gen, GenInst, HComp, Id, Inverse, Juxtapose, OneCellTerm, Relation,
    TermError, TheoryPresentation, TwoCellGen, TwoCellTerm, VComp, base, check_presentation,
)
from .sexpr import SExprError, SList, Symbol, parse_all, sym, to_text


# ---------------------------------------------------------------------------
# terms


def one_to_sexpr(t: OneCellTerm):
    if isinstance(t, Base):
        table = SList(t.f.table)
        natural = max(t.f.table) + 1 if t.f.table else 0
        if t.source == natural:
            return SList([Symbol("base"), table])
        return SList([Symbol("base"), table, t.source])
    if isinstance(t, Gen):
        return SList([Symbol("gen"), sym(t.name)])
    if isinstance(t, Compose):
        return SList([Symbol("o"), one_to_sexpr(t.outer), one_to_sexpr(t.inner)])
    if isinstance(t, Juxtapose):
        return SList([Symbol("+"), one_to_sexpr(t.left), one_to_sexpr(t.right)])
    raise TypeError(f"not a 1-cell term: {t!r}")


def two_to_sexpr(a: TwoCellTerm):
    if isinstance(a, Id):
        return SList([Symbol("id"), one_to_sexpr(a.w)])
    if isinstance(a, GenInst):
        return SList([Symbol("gen"), sym(a.name)])
    if isinstance(a, VComp):
        return SList([Symbol("v"), two_to_sexpr(a.second), two_to_sexpr(a.first)])
    if isinstance(a, HComp):
        return SList([Symbol("h"), two_to_sexpr(a.outer), two_to_sexpr(a.inner)])
    if isinstance(a, Beside):
        return SList([Symbol("+"), two_to_sexpr(a.left), two_to_sexpr(a.right)])
    if isinstance(a, Inverse):
        return SList([Symbol("inv"), two_to_sexpr(a.a)])
    raise TypeError(f"not a 2-cell term: {a!r}")


def _head(x) -> str:
    if not isinstance(x, list) or not x or not isinstance(x[0], str):
        raise _err(x, "expected a tagged list")
    return str(x[0])


def _err(x, message: str) -> SExprError:
    if isinstance(x, SList):
        return x.error(message)
    return SExprError(message)


def _arity(x, n: int) -> None:
    if len(x) != n:
        raise _err(x, f"{x[0]} takes {n - 1} arguments, found {len(x) - 1}")


def _name(x, where) -> str:
    if isinstance(x, str):
        return str(x)
    raise _err(where, f"expected a name, found {x!r}")


def _nat(x, where) -> int:
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise _err(where, f"expected a natural number, found {x!r}")


def one_from_sexpr(x, gens: dict) -> OneCellTerm:
    tag = _head(x)
    if tag == "base":
        if len(x) not in (2, 3) or not isinstance(x[1], list):
            raise _err(x, "base takes a table and an optional input count")
        table = [_nat(v, x) for v in x[1]]
        try:
            return base(table, _nat(x[2], x) if len(x) == 3 else None)
        except ValueError as exc:
            raise _err(x, f"arity error: {exc}") from None
    if tag == "gen":
        _arity(x, 2)
        n = _name(x[1], x)
        if n not in gens:
            raise _err(x, f"undeclared generator {n!r}")
        return Gen(n, *gens[n])
    if tag in ("o", "+"):
        _arity(x, 3)
        a, b = one_from_sexpr(x[1], gens), one_from_sexpr(x[2], gens)
        if tag == "o":
            if a.source != b.target:
                raise _err(x, f"arity error: composing {a.source} inputs with {b.target} outputs")
            return Compose(a, b)
        return Juxtapose(a, b)
    raise _err(x, f"unknown 1-cell constructor {tag!r}")


def two_from_sexpr(x, gens1: dict, gens2: set) -> TwoCellTerm:
    tag = _head(x)
    if tag == "id":
        _arity(x, 2)
        return Id(one_from_sexpr(x[1], gens1))
    if tag == "gen":
        _arity(x, 2)
        n = _name(x[1], x)
        if n not in gens2:
            raise _err(x, f"undeclared 2-cell generator {n!r}")
        return GenInst(n)
    if tag == "inv":
        _arity(x, 2)
        return Inverse(two_from_sexpr(x[1], gens1, gens2))
    if tag in ("v", "h", "+"):
        _arity(x, 3)
        a, b = two_from_sexpr(x[1], gens1, gens2), two_from_sexpr(x[2], gens1, gens2)
        return {"v": VComp, "h": HComp, "+": Beside}[tag](a, b)
    raise _err(x, f"unknown 2-cell constructor {tag!r}")


# ---------------------------------------------------------------------------
# theories


def theory_to_sexpr(t: TheoryPresentation) -> SList:
    out = SList([Symbol("theory"), sym(t.name)])
    for n, s, k in t.one_cell_gens:
        out.append(SList([Symbol("gen1"), sym(n), s, k]))
    for g in t.two_cell_gens:
        item = SList([Symbol("gen2"), sym(g.name), one_to_sexpr(g.src), one_to_sexpr(g.tgt)])
        if g.invertible:
            item.append(Symbol("iso"))
        out.append(item)
    for r in t.one_cell_relations:
        out.append(SList([Symbol("rel1"), sym(r.name), one_to_sexpr(r.lhs), one_to_sexpr(r.rhs)]))
    for r in t.two_cell_relations:
        out.append(SList([Symbol("rel2"), sym(r.name), two_to_sexpr(r.lhs), two_to_sexpr(r.rhs)]))
    out.append(SList([Symbol("normalizer"), Symbol(t.normalizer)]))
    for op, unit in t.assoc_ops:
        out.append(SList([Symbol("assoc"), sym(op)] + ([sym(unit)] if unit is not None else [])))
    if t.dimension != 2:
        out.append(SList([Symbol("dimension"), t.dimension]))
    if t.coherent:
        out.append(SList([Symbol("coherent")]))
    for k, v in t.roles:
        out.append(SList([Symbol("role"), sym(k), sym(v)]))
    for note in t.notes:
        out.append(SList([Symbol("note"), note]))
    return out


def print_theory(t: TheoryPresentation) -> str:
    return to_text(theory_to_sexpr(t), indent=2) + "\n"


def theory_from_sexpr(x) -> TheoryPresentation:
    if _head(x) != "theory" or len(x) < 2:
        raise _err(x, "expected (theory NAME ...)")
    name = _name(x[1], x)
    gens1: dict = {}
    gen1_list, gen2_list, rel1, rel2 = [], [], [], []
    normalizer, assoc, dimension, coherent = None, [], 2, False
    roles, notes = [], []
    clauses = x[2:]
    # declarations first so terms can refer to later generators
    for c in clauses:
        if _head(c) == "gen1":
            _arity(c, 4)
            n = _name(c[1], c)
            if n in gens1:
                raise _err(c, f"generator {n!r} declared twice")
            gens1[n] = (_nat(c[2], c), _nat(c[3], c))
            gen1_list.append((n, gens1[n][0], gens1[n][1]))
    gens2 = {_name(c[1], c) for c in clauses if _head(c) == "gen2" and len(c) > 1}
    for c in clauses:
        tag = _head(c)
        try:
            if tag == "gen1":
                continue
            if tag == "gen2":
                if len(c) not in (4, 5) or (len(c) == 5 and c[4] != "iso"):
                    raise _err(c, "gen2 takes a name, two terms and an optional iso flag")
                gen2_list.append(TwoCellGen(_name(c[1], c), one_from_sexpr(c[2], gens1),
                                            one_from_sexpr(c[3], gens1), len(c) == 5))
            elif tag in ("rel1", "rel2"):
                if len(c) == 3:
                    rname, lhs, rhs = f"{tag}-{len(rel1 if tag == 'rel1' else rel2) + 1}", c[1], c[2]
                elif len(c) == 4:
                    rname, lhs, rhs = _name(c[1], c), c[2], c[3]
                else:
                    raise _err(c, f"{tag} takes an optional name and two terms")
                if tag == "rel1":
                    rel1.append(Relation(rname, one_from_sexpr(lhs, gens1), one_from_sexpr(rhs, gens1)))
                else:
                    rel2.append(Relation(rname, two_from_sexpr(lhs, gens1, gens2),
                                         two_from_sexpr(rhs, gens1, gens2)))
            elif tag == "normalizer":
                _arity(c, 2)
                normalizer = _name(c[1], c)
            elif tag == "assoc":
                if len(c) not in (2, 3):
                    raise _err(c, "assoc takes an operation and an optional unit")
                assoc.append((_name(c[1], c), _name(c[2], c) if len(c) == 3 else None))
            elif tag == "dimension":
                _arity(c, 2)
                dimension = _nat(c[1], c)
            elif tag == "coherent":
                _arity(c, 1)
                coherent = True
            elif tag == "role":
                _arity(c, 3)
                roles.append((_name(c[1], c), _name(c[2], c)))
            elif tag == "note":
                _arity(c, 2)
                notes.append(_name(c[1], c))
            else:
                raise _err(c, f"unknown clause {tag!r}")
        except TermError as exc:
            raise _err(c, str(exc)) from None
    if normalizer is None:
        normalizer = "strict-assoc" if assoc else "syntactic"
    try:
        t = TheoryPresentation(name=name, one_cell_gens=tuple(gen1_list),
                               two_cell_gens=tuple(gen2_list), one_cell_relations=tuple(rel1),
                               two_cell_relations=tuple(rel2), normalizer=normalizer,
                               assoc_ops=tuple(assoc), coherent=coherent, dimension=dimension,
                               roles=tuple(sorted(roles)), notes=tuple(notes))
        check_presentation(t)
    except (TermError, ValueError) as exc:
        raise _err(x, str(exc)) from None
    return t


def parse_theory_file(text: str) -> TheoryPresentation:
    items = parse_all(text)
    if len(items) != 1:
        raise SExprError(f"expected one theory, found {len(items)} expressions", 1, 1)
    return theory_from_sexpr(items[0])


# ---------------------------------------------------------------------------
# diagram files
#
#   (category NAME (objects O ...) (gen G SRC TGT)* (rel PATH PATH)*)
#   (functor NAME SRC TGT (obj X Y)* (map G PATH)*)
#   (nat NAME F G (at X PATH)*)
#   (twocat NAME (objects O ...) (gen1 NAME SRC TGT)* (rel1 PATH PATH)*
#                (gen2 NAME CELL CELL)* (rel2 PATH PATH)*)
#   (diagram NAME INDEX (at O CATEGORY)* (on GEN1 FUNCTOR)* (on GEN2 NAT)*)
#   (qcolim NAME DIAGRAM (gamma-cells CELL ...)? (gamma-objects O ...)? (cocone KIND)?)
#   (yoneda NAME INDEX DIAGRAM OBJECT)
#
# A PATH lists generators in running order; () is an identity and needs the
# object, written (id O).  A CELL is a path of 1-cell generators.


class DiagramFile:
    """Everything defined in one diagram file, by name."""

    def __init__(self):
        self.categories: dict = {}     # name -> (FiniteCategory, generator images)
        self.functors: dict = {}
        self.nats: dict = {}
        self.twocats: dict = {}        # name -> (FiniteTwoCategory, 1-cell images)
        self.diagrams: dict = {}
        self.qcolims: list = []        # (name, diagram name, gamma cells, gamma objects, cocone)
        self.yonedas: list = []        # (name, index name, diagram name, object)


def _obj(x, where):
    if isinstance(x, (str, int)) and not isinstance(x, list):
        return str(x) if isinstance(x, str) else x
    raise _err(where, f"expected an object name, found {x!r}")


def _path(x, where) -> tuple:
    """A generator path, or ``("id", O)`` for an identity."""
    if not isinstance(x, list):
        raise _err(where, f"expected a path, found {x!r}")
    if len(x) == 2 and x[0] == "id" and isinstance(x[0], Symbol):
        return ("id", _obj(x[1], x))
    if not x:
        raise _err(x, "an empty path needs its object: write (id O)")
    return tuple(_name(g, where) for g in x)


def _morphism(C, images: dict, p, where):
    if p and p[0] == "id" and len(p) == 2 and p[1] in C.identities:
        return C.ident(p[1])
    if not p:
        raise _err(where, "an empty path needs its object: write (id O)")
    m = None
    for g in p:
        if g not in images:
            raise _err(where, f"unknown generator {g!r}")
        m = images[g] if m is None else C.compose(images[g], m)
    return m


def _letters(*paths):
    return [g for p in paths if not (p and p[0] == "id") for g in p]


def _presented(objects, gens, rels, where, name):
    from .colimit.category import BudgetExceeded, CategoryError
    from .colimit.presented import Presentation, enumerate_presentation
    try:
        relations = []
        for a, b in rels:
            relations.append((() if a and a[0] == "id" else a, () if b and b[0] == "id" else b))
        C, images, _ = enumerate_presentation(Presentation(objects, gens, relations, name=name))
    except (CategoryError, BudgetExceeded) as exc:
        raise _err(where, str(exc)) from None
    return C, images


def _category_form(x):
    name = _name(x[1], x)
    objects, gens, rels = [], {}, []
    for c in x[2:]:
        tag = _head(c)
        if tag == "objects":
            objects += [_obj(o, c) for o in c[1:]]
        elif tag == "gen":
            _arity(c, 4)
            gens[_name(c[1], c)] = (_obj(c[2], c), _obj(c[3], c))
        elif tag == "rel":
            _arity(c, 3)
            rels.append((_path(c[1], c), _path(c[2], c)))
        else:
            raise _err(c, f"unknown category clause {tag!r}")
    for g, (s, t) in gens.items():
        if s not in objects or t not in objects:
            raise _err(x, f"generator {g!r} has an undeclared end")
    return name, _presented(objects, gens, rels, x, name)


def _functor_form(x, df: DiagramFile):
    from .colimit.category import CategoryError, Functor
    _name(x[1], x)
    if len(x) < 4:
        raise _err(x, "functor takes a name, a source and a target")
    (S, s_img), (T, t_img) = (df.categories[_cat_name(x[i], x, df)] for i in (2, 3))
    om, gm = {}, {}
    for c in x[4:]:
        tag = _head(c)
        _arity(c, 3)
        if tag == "obj":
            om[_obj(c[1], c)] = _obj(c[2], c)
        elif tag == "map":
            gm[_name(c[1], c)] = _path(c[2], c)
        else:
            raise _err(c, f"unknown functor clause {tag!r}")
    for o in S.objects:
        if o not in om or om[o] not in T.identities:
            raise _err(x, f"object {o!r} has no image")
    gen_img = {}
    for g, m in s_img.items():
        p = gm.get(g, ("id", om[S.src(m)]))
        gen_img[g] = _morphism(T, t_img, p, x)
    mm = {}
    for m, (s, _) in S.morphisms.items():
        img = T.ident(om[s])
        for g in m[1]:
            img = T.compose(gen_img[g], img)
        mm[m] = img
    F = Functor(S, T, om, mm)
    try:
        F.validate()
    except CategoryError as exc:
        raise _err(x, str(exc)) from None
    return F


def _cat_name(x, where, df):
    n = _name(x, where)
    if n not in df.categories:
        raise _err(where, f"unknown category {n!r}")
    return n


def _nat_form(x, df: DiagramFile):
    from .colimit.category import CategoryError, NatTrans
    if len(x) < 4:
        raise _err(x, "nat takes a name and two functors")
    F, G = (df.functors.get(_name(x[i], x)) for i in (2, 3))
    if F is None or G is None:
        raise _err(x, "unknown functor")
    T = F.target
    images = next(img for C, img in df.categories.values() if C is T)
    comps = {}
    for c in x[4:]:
        if _head(c) != "at":
            raise _err(c, "expected (at OBJECT PATH)")
        _arity(c, 3)
        comps[_obj(c[1], c)] = _morphism(T, images, _path(c[2], c), c)
    for o in F.source.objects:
        comps.setdefault(o, T.ident(F.obj(o)))
    a = NatTrans(F, G, comps)
    try:
        a.validate()
    except CategoryError as exc:
        raise _err(x, str(exc)) from None
    return a


def _twocat_form(x):
    from .colimit.category import CategoryError
    from .colimit.twocat import FiniteTwoCategory
    name = _name(x[1], x)
    objects, g1, r1, g2, r2 = [], {}, [], {}, []
    for c in x[2:]:
        tag = _head(c)
        if tag == "objects":
            objects += [_obj(o, c) for o in c[1:]]
        elif tag == "gen1":
            _arity(c, 4)
            g1[_name(c[1], c)] = (_obj(c[2], c), _obj(c[3], c))
        elif tag == "rel1":
            _arity(c, 3)
            r1.append((_path(c[1], c), _path(c[2], c)))
        elif tag == "gen2":
            _arity(c, 4)
            g2[_name(c[1], c)] = (_path(c[2], c), _path(c[3], c), c)
        elif tag == "rel2":
            _arity(c, 3)
            r2.append((_path(c[1], c), _path(c[2], c)))
        else:
            raise _err(c, f"unknown twocat clause {tag!r}")
    C1, img1 = _presented(objects, g1, r1, x, name)
    gens2 = {}
    for n, (p, q, c) in g2.items():
        gens2[n] = (_morphism(C1, img1, p, c), _morphism(C1, img1, q, c))
    two_cells, vcomp, id2 = {}, {}, {}
    for a in objects:
        for b in objects:
            cells = C1.hom(a, b)
            local = {n: st for n, st in gens2.items() if st[0] in cells}
            rels = [(p, q) for p, q in r2
                    if any(g in local for g in p + q) and all(g in local for g in _letters(p, q))]
            H, _ = _presented(cells, local, rels, x, f"{name}({a},{b})")
            for m, st in H.morphisms.items():
                two_cells[m] = st
            for o in cells:
                id2[o] = H.ident(o)
            vcomp.update(H.composition)
    try:
        D = FiniteTwoCategory(objects, dict(C1.morphisms), dict(C1.composition), two_cells,
                              vcomp, {}, id1=dict(C1.identities), id2=id2, name=name)
    except CategoryError as exc:
        raise _err(x, str(exc)) from None
    return name, D, img1, gens2


def _diagram_form(x, df: DiagramFile):
    from .colimit.category import CategoryError, identity_functor, identity_nat
    from .colimit.twocat import TwoDiagram
    name = _name(x[1], x)
    iname = _name(x[2], x)
    if iname not in df.twocats:
        raise _err(x, f"unknown index {iname!r}")
    I, img1, gens2 = df.twocats[iname]
    cats, f_gen, n_gen = {}, {}, {}
    for c in x[3:]:
        tag = _head(c)
        _arity(c, 3)
        if tag == "at":
            cats[_obj(c[1], c)] = df.categories[_cat_name(c[2], c, df)][0]
        elif tag == "on":
            g = _name(c[1], c)
            if g in img1:
                f_gen[g] = df.functors[_name(c[2], c)]
            elif g in gens2:
                n_gen[g] = df.nats[_name(c[2], c)]
            else:
                raise _err(c, f"unknown index generator {g!r}")
        else:
            raise _err(c, f"unknown diagram clause {tag!r}")
    for o in I.objects:
        if o not in cats:
            raise _err(x, f"index object {o!r} has no category")
    ones = {}
    for f, (a, _) in I.one_cells.items():
        F = identity_functor(cats[a])
        for g in f[1]:
            if g not in f_gen:
                raise _err(x, f"index 1-cell {g!r} has no functor")
            F = F.then(f_gen[g])
        ones[f] = F
    twos = {}
    for cell, (f, f2) in I.two_cells.items():
        a = identity_nat(ones[f])
        for g in cell[1]:
            if g not in n_gen:
                raise _err(x, f"index 2-cell {g!r} has no transformation")
            a = a.then(n_gen[g])
        twos[cell] = a
    try:
        return name, TwoDiagram(I, cats, ones, twos, name=name)
    except CategoryError as exc:
        raise _err(x, str(exc)) from None


def parse_diagram_file(text: str) -> DiagramFile:
    df = DiagramFile()
    for x in parse_all(text):
        tag = _head(x)
        if len(x) < 2:
            raise _err(x, f"{tag} needs a name")
        if tag == "category":
            n, data = _category_form(x)
            df.categories[n] = data
        elif tag == "functor":
            df.functors[_name(x[1], x)] = _functor_form(x, df)
        elif tag == "nat":
            df.nats[_name(x[1], x)] = _nat_form(x, df)
        elif tag == "twocat":
            n, D, img1, gens2 = _twocat_form(x)
            df.twocats[n] = (D, img1, gens2)
        elif tag == "diagram":
            n, d = _diagram_form(x, df)
            df.diagrams[n] = d
        elif tag == "qcolim":
            _qcolim_form(x, df)
        elif tag == "yoneda":
            _arity(x, 5)
            n, iname, dname, r = _name(x[1], x), _name(x[2], x), _name(x[3], x), _obj(x[4], x)
            if iname not in df.twocats or dname not in df.diagrams:
                raise _err(x, "unknown index or diagram")
            df.yonedas.append((n, iname, dname, r))
        else:
            raise _err(x, f"unknown form {tag!r}")
    return df


def _qcolim_form(x, df: DiagramFile) -> None:
    name, dname = _name(x[1], x), _name(x[2], x) if len(x) > 2 else None
    if dname not in df.diagrams:
        raise _err(x, f"unknown diagram {dname!r}")
    I = df.diagrams[dname].index
    img1 = next(img for D, img, _ in df.twocats.values() if D is I)
    gamma_cells, gamma_objects, cocone = [], [], "pseudo"
    for c in x[3:]:
        tag = _head(c)
        if tag == "gamma-cells":
            for p in c[1:]:
                C1 = I.underlying_category()
                gamma_cells.append(_morphism(C1, img1, _path(p, c), c))
        elif tag == "gamma-objects":
            gamma_objects += [_obj(o, c) for o in c[1:]]
        elif tag == "cocone":
            _arity(c, 2)
            cocone = _name(c[1], c)
        else:
            raise _err(c, f"unknown qcolim clause {tag!r}")
    df.qcolims.append((name, dname, gamma_cells, gamma_objects, cocone))
