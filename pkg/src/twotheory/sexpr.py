"""S-expressions: symbols, naturals, strings and lists.

Lists remember the line and column of their opening parenthesis so later
stages can report errors at a location.  ``;`` starts a comment.
"""
from __future__ import annotations

import re


class SExprError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class Symbol(str):
    """A bare atom; plain ``str`` values are string atoms."""
    __slots__ = ()


class SList(list):
    def __init__(self, items=(), line: int = 0, col: int = 0):
        super().__init__(items)
        self.line, self.col = line, col

    def error(self, message: str) -> SExprError:
        return SExprError(message, self.line, self.col)


_TOKEN = re.compile(r'\s+|;[^\n]*|\(|\)|"(?:[^"\\]|\\.)*"|[^\s()";]+')
_PLAIN = re.compile(r"^[A-Za-z_+*/<>=!?.\-][A-Za-z0-9_+*/<>=!?.\-']*$")


def _positions(text: str):
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SExprError(f"unexpected character {text[pos]!r}", line, col)
        tok = m.group(0)
        yield tok, line, col
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()


def parse_all(text: str) -> list:
    """Every top-level expression in ``text``."""
    stack: list[SList] = []
    out: list = []
    for tok, line, col in _positions(text):
        if tok[0].isspace() or tok[0] == ";":
            continue
        if tok == "(":
            stack.append(SList(line=line, col=col))
            continue
        if tok == ")":
            if not stack:
                raise SExprError("unbalanced ')'", line, col)
            item = stack.pop()
        elif tok[0] == '"':
            item = re.sub(r"\\(.)", r"\1", tok[1:-1])
        elif tok.isdigit():
            item = int(tok)
        else:
            item = Symbol(tok)
        (stack[-1] if stack else out).append(item)
    if stack:
        raise SExprError("unclosed '('", stack[-1].line, stack[-1].col)
    return out


def parse(text: str):
    items = parse_all(text)
    if len(items) != 1:
        raise SExprError(f"expected one expression, found {len(items)}", 1, 1)
    return items[0]


def atom_text(x) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not atoms")
    if isinstance(x, int):
        if x < 0:
            raise ValueError("only naturals are atoms")
        return str(x)
    if isinstance(x, Symbol) and _PLAIN.match(x):
        return str(x)
    if isinstance(x, str):
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"not an s-expression atom: {x!r}")


def to_text(x, indent: int | None = None, _level: int = 0) -> str:
    """Canonical text; with ``indent`` top-level list items go on their own lines."""
    if not isinstance(x, list):
        return atom_text(x)
    inner = [to_text(y) for y in x]
    if indent is None or _level > 0 or len(x) <= 2:
        return "(" + " ".join(inner) + ")"
    pad = " " * indent
    return "(" + " ".join(inner[:2]) + "".join("\n" + pad + s for s in inner[2:]) + ")"


def sym(name: str) -> Symbol:
    """A name as an atom: bare when it is a plain identifier, quoted otherwise."""
    return Symbol(name) if _PLAIN.match(name) else name
