"""Command-line front end.

Every command writes line-oriented output.  Check reports are sorted lines
``STATUS<TAB>check-id<TAB>detail``.  Exit status is 0 when nothing fails, 1
when some check fails and 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from typing import Sequence

from .presentation import Report, TermError, TheoryPresentation
from .sexpr import SExprError

PRODUCT_NAME = re.compile(r"^([A-Za-z]\w*)\*([A-Za-z]\w*)/([A-Za-z]\w*)$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# theory lookup


def product(left: str, right: str, over: str):
    from .kronecker import inclusion, kronecker
    from .theories import build_theory, canonical_name
    B = build_theory(canonical_name(over))
    L = build_theory(canonical_name(left))
    R = build_theory(canonical_name(right))
    return kronecker(B, inclusion(B, L), inclusion(B, R))


def resolve(name: str) -> tuple[TheoryPresentation, object]:
    """A theory by name, product name ``L*R/B`` or file; returns ``(theory, product or None)``."""
    from .formats import parse_theory_file, print_theory
    from .theories import build_theory, canonical_name
    if os.path.isfile(name):
        with open(name, encoding="utf-8") as fh:
            t = parse_theory_file(fh.read())
        m = PRODUCT_NAME.match(t.name)
        if m is None:
            return t, None
        kp = product(*m.groups())
        if print_theory(kp.underlying) != print_theory(t):
            raise UsageError(f"{name}: contents differ from the product {t.name}")
        return kp.underlying, kp
    m = PRODUCT_NAME.match(name)
    if m is not None:
        kp = product(*m.groups())
        return kp.underlying, kp
    return build_theory(canonical_name(name)), None


def _sizes(values: Sequence[str] | None):
    if not values:
        return None
    out = []
    for v in values:
        try:
            out.append(tuple(int(x) for x in v.split(",") if x.strip() != ""))
        except ValueError:
            raise UsageError(f"bad size vector {v!r}") from None
        if any(x < 0 for x in out[-1]):
            raise UsageError(f"bad size vector {v!r}")
    return out


def _names(values: Sequence[str] | None) -> list[str]:
    return [n for v in values or () for n in v.split(",") if n]


# ---------------------------------------------------------------------------
# commands


def cmd_list_theories(args) -> tuple[int, list[str]]:
    from .theories import THEORY_NAMES, build_theory
    lines = []
    for n in sorted(THEORY_NAMES, key=str.lower):
        t = build_theory(n)
        lines.append(f"{n}\tdimension {t.dimension}\t{len(t.one_cell_gens)} gen1\t"
                     f"{len(t.two_cell_gens)} gen2")
    return 0, lines


def cmd_show(args) -> tuple[int, list[str]]:
    from .formats import print_theory
    t, _ = resolve(args.name)
    return 0, print_theory(t).splitlines()


def cmd_kronecker(args) -> tuple[int, list[str]]:
    from .formats import print_theory
    kp = product(args.left, args.right, args.over)
    text = print_theory(kp.underlying)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        return 0, [f"wrote {kp.underlying.name}"]
    return 0, text.splitlines()


def cmd_check(args) -> tuple[int, list[str]]:
    from .catalog import check_entries, context_for, resolve_names
    from .kronecker import check_kronecker_model
    from .models.evaluate import ModelInterp, check_relations, default_rules
    t, kp = resolve(args.name)
    sizes = _sizes(args.sizes)
    catalog = _names(args.catalog)
    try:
        resolve_names(catalog)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if kp is not None:
        rep = check_kronecker_model(kp, args.model, sizes, catalog)
    else:
        rep = check_relations(t, ModelInterp(args.model, t, default_rules(t)), sizes)
        if catalog:
            rep.extend(check_entries(catalog, context_for(t), args.model, sizes))
    return (0 if rep.ok else 1), rep.lines()


def cmd_normalize_braid(args) -> tuple[int, list[str]]:
    from .models.braids import ModelError, braid_normal_form, parse_braid
    if args.strands < 1:
        raise UsageError("--strands must be positive")
    try:
        w = parse_braid(" ".join(args.word).replace("s", " s"), args.strands)
    except ModelError as exc:
        raise UsageError(str(exc)) from None
    return 0, [" ".join(braid_normal_form(w)) or "1"]


def _load_diagrams(path: str):
    from .formats import parse_diagram_file
    with open(path, encoding="utf-8") as fh:
        return parse_diagram_file(fh.read())


def qcolim_report(df, budget: int = 200_000) -> Report:
    from .colimit import (
        BudgetExceeded, find_equivalence, find_isomorphism, find_relative_terminal, qcolim,
    )
    rep = Report()
    for name, dname, gamma, gamma_objects, cocone in df.qcolims:
        d = df.diagrams[dname]
        Q = qcolim(d, gamma=gamma, cocone=cocone).category
        objs, mors = Q.size()
        rep.add("INFO", f"{name}:size", f"{objs} objects, {mors} morphisms")
        t = find_relative_terminal(d.index, gamma_objects)
        if t is None:
            rep.add("UNDECIDED", f"{name}:terminal", "no relative terminal object")
            continue
        rep.add("INFO", f"{name}:terminal", str(t))
        try:
            eq = find_equivalence(Q, d(t), budget)
        except BudgetExceeded:
            rep.add("UNDECIDED", f"{name}:equivalent", f"not verified within {budget} candidates")
        else:
            rep.add("PASS" if eq else "FAIL", f"{name}:equivalent",
                    f"qcolim ~ d({t})" if eq else f"no equivalence with d({t})")
        if len(d.index.objects) == 1:
            try:
                iso = find_isomorphism(Q, d(t), budget)
            except BudgetExceeded:
                rep.add("UNDECIDED", f"{name}:isomorphic", f"not verified within {budget} candidates")
            else:
                rep.add("PASS" if iso else "FAIL", f"{name}:isomorphic",
                        f"qcolim = d({t})" if iso else "not isomorphic")
    return rep


def yoneda_report(df, budget: int = 1_000_000) -> Report:
    from .colimit import (
        BudgetExceeded, enumerate_qnats, modification_problems, psi, psihat, unit_modification,
    )
    rep = Report()
    for name, iname, dname, r in df.yonedas:
        D, K = df.twocats[iname][0], df.diagrams[dname]
        Kr = K(r)
        bad = [U for U in Kr.objects if psi(D, K, r, psihat(D, K, r, U)) != U]
        rep.add("FAIL" if bad else "PASS", f"{name}:counit",
                f"fails at {bad[0]!r}" if bad else f"recovers all {len(Kr.objects)} of K({r})")
        try:
            every = enumerate_qnats(D, K, r, budget)
            strict = enumerate_qnats(D, K, r, budget, strict=True)
        except BudgetExceeded as exc:
            rep.add("UNDECIDED", f"{name}:enumeration", str(exc))
            continue
        rep.add("INFO", f"{name}:enumeration", f"{len(every)} quasi-natural transformations")
        unit_bad = 0
        for s in every:
            m = unit_modification(D, K, r, s)
            if modification_problems(D, K, r, m):
                unit_bad += 1
            elif all(K(D.tgt1(f)).is_iso(c) for (f, _), c in s.cells.items()):
                if not all(K(d).is_iso(c) for (d, _), c in m.components.items()):
                    unit_bad += 1
        rep.add("FAIL" if unit_bad else "PASS", f"{name}:unit",
                f"{unit_bad} bad unit modifications" if unit_bad else "natural, invertible on iso cells")
        images = sorted(map(repr, (psi(D, K, r, s) for s in strict)))
        ok = images == sorted(map(repr, Kr.objects))
        rep.add("PASS" if ok else "FAIL", f"{name}:strict",
                f"{len(strict)} strict, objects of K({r}): {len(Kr.objects)}")
    return rep


def cmd_qcolim(args) -> tuple[int, list[str]]:
    rep = qcolim_report(_load_diagrams(args.file))
    return (0 if rep.ok else 1), rep.lines()


def cmd_yoneda(args) -> tuple[int, list[str]]:
    rep = yoneda_report(_load_diagrams(args.file))
    return (0 if rep.ok else 1), rep.lines()


def cmd_change(args) -> tuple[int, list[str]]:
    from .formats import print_theory
    from .theories import change_dimension
    t, _ = resolve(args.name)
    return 0, print_theory(change_dimension(args.kind, t)).splitlines()


# ---------------------------------------------------------------------------
# entry points


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twotheory", description="Algebraic 2-theories and their models.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sub.add_parser("list-theories").set_defaults(run=cmd_list_theories)
    s = sub.add_parser("show")
    s.add_argument("name")
    s.set_defaults(run=cmd_show)
    s = sub.add_parser("kronecker")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--over", required=True)
    s.add_argument("--out")
    s.set_defaults(run=cmd_kronecker)
    s = sub.add_parser("check")
    s.add_argument("name")
    s.add_argument("--model", required=True, choices=("perm", "braid", "ribbon", "thin"))
    s.add_argument("--sizes", action="append", help="comma-separated sizes; repeatable")
    s.add_argument("--catalog", action="append", help="comma-separated entry or group names")
    s.set_defaults(run=cmd_check)
    s = sub.add_parser("normalize-braid")
    s.add_argument("--strands", type=int, required=True)
    s.add_argument("word", nargs="+", help='letters such as "s1 s2^-1"')
    s.set_defaults(run=cmd_normalize_braid)
    s = sub.add_parser("qcolim")
    s.add_argument("file")
    s.set_defaults(run=cmd_qcolim)
    s = sub.add_parser("yoneda")
    s.add_argument("file")
    s.set_defaults(run=cmd_yoneda)
    s = sub.add_parser("change")
    s.add_argument("kind", choices=("c", "u", "d", "pi0"))
    s.add_argument("name")
    s.set_defaults(run=cmd_change)
    return p


def run_command(argv: Sequence[str]) -> tuple[int, str]:
    """Run one command; returns the exit status and the text it prints."""
    try:
        args = build_parser().parse_args(list(argv))
        code, lines = args.run(args)
    except (UsageError, SExprError, TermError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return 2, f"error: {msg}\n"
    return code, "".join(line + "\n" for line in lines)


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    (sys.stderr if code == 2 else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
