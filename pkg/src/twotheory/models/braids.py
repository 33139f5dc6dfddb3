"""Permutations, braids and ribbon braids, with decidable equality.

Composition is diagrammatic throughout: ``a.then(b)`` runs ``a`` first.  A
braid word lists letters top to bottom; letter ``+k`` is the positive
crossing of positions ``k-1`` and ``k`` (left strand over right).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from . import _dynnikov_py

try:
    from . import _dynnikov as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def set_backend(name: str) -> None:
    """Select ``cython`` or ``python`` for the Dynnikov kernel."""
    global BACKEND
    if name == "cython" and _compiled is None:
        raise RuntimeError("compiled kernel is not available")
    if name not in ("cython", "python"):
        raise ValueError(name)
    BACKEND = name


def dynnikov_coords(letters: Sequence[int], strands: int) -> tuple[int, ...]:
    if BACKEND == "cython":
        try:
            return _compiled.dynnikov_coords(letters, strands)
        except OverflowError:
            pass
    return _dynnikov_py.dynnikov_coords(letters, strands)


class ModelError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """``table[i]`` is the bottom position of the strand starting at ``i``."""
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if sorted(self.table) != list(range(len(self.table))):
            raise ModelError(f"not a permutation: {self.table}")

    @property
    def size(self) -> int:
        return len(self.table)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def then(self, other: "Permutation") -> "Permutation":
        if other.size != self.size:
            raise ModelError("size mismatch")
        return Permutation(tuple(other.table[x] for x in self.table))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, x in enumerate(self.table):
            inv[x] = i
        return Permutation(tuple(inv))

    def beside(self, other: "Permutation") -> "Permutation":
        n = self.size
        return Permutation(self.table + tuple(n + x for x in other.table))

    def equals(self, other) -> bool:
        return self == other

    def underlying(self) -> "Permutation":
        return self

    def __str__(self):
        return "perm" + str(list(self.table))


# ---------------------------------------------------------------------------
# braids


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ModelError(f"letter {x} invalid on {self.strands} strands")

    @classmethod
    def identity(cls, n: int) -> "BraidWord":
        return cls(n, ())

    def then(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ModelError("strand mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def beside(self, other: "BraidWord") -> "BraidWord":
        n = self.strands
        shifted = tuple(x + n if x > 0 else x - n for x in other.letters)
        return BraidWord(n + other.strands, self.letters + shifted)

    def underlying(self) -> Permutation:
        arrangement = list(range(self.strands))   # arrangement[pos] = strand
        for x in self.letters:
            i = abs(x)
            arrangement[i - 1], arrangement[i] = arrangement[i], arrangement[i - 1]
        table = [0] * self.strands
        for p, s in enumerate(arrangement):
            table[s] = p
        return Permutation(tuple(table))

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def equals(self, other) -> bool:
        return braid_equal(self, other)

    def __str__(self):
        return format_braid(self.letters) or "1"


def braid_equal(a: BraidWord, b: BraidWord) -> bool:
    if a.strands != b.strands:
        raise ModelError("strand mismatch")
    if a.letters == b.letters:
        return True
    if a.strands < 2:
        return True
    return dynnikov_coords(a.letters, a.strands) == dynnikov_coords(b.letters, b.strands)


def permutation_braid(perm: Permutation) -> BraidWord:
    """Positive braid in which each pair of strands crosses at most once."""
    n = perm.size
    target = [0] * n
    for s, p in enumerate(perm.table):
        target[p] = s
    current = list(range(n))
    letters = []
    for p in range(n):
        q = current.index(target[p])
        while q > p:
            letters.append(q)     # swap positions q-1, q
            current[q - 1], current[q] = current[q], current[q - 1]
            q -= 1
    return BraidWord(n, tuple(letters))


def full_twist(n: int) -> BraidWord:
    half = permutation_braid(Permutation(tuple(reversed(range(n)))))
    return half.then(half)


_TOKEN = re.compile(r"^s(\d+)(\^-1)?$")


def parse_braid(text: str, strands: int) -> BraidWord:
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ModelError(f"bad braid token {tok!r}")
        k = int(m.group(1))
        letters.append(-k if m.group(2) else k)
    return BraidWord(strands, tuple(letters))


def format_braid(letters: Sequence[int]) -> str:
    return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in letters)


# ---------------------------------------------------------------------------
# Garside left normal form
#
# A simple element is stored as its arrangement: arr[pos] = starting position
# of the strand that ends at ``pos``.


def _simple_then(a: tuple, b: tuple) -> tuple:
    return tuple(a[x] for x in b)


def _tau(a: tuple) -> tuple:
    n = len(a)
    return tuple(n - 1 - a[n - 1 - p] for p in range(n))


def _finish(a: tuple) -> set:
    return {i for i in range(1, len(a)) if a[i - 1] > a[i]}


def _start(a: tuple) -> set:
    pos = {s: p for p, s in enumerate(a)}
    return {i for i in range(1, len(a)) if pos[i - 1] > pos[i]}


def _letter(n: int, i: int) -> tuple:
    arr = list(range(n))
    arr[i - 1], arr[i] = arr[i], arr[i - 1]
    return tuple(arr)


def _complement(a: tuple) -> tuple:
    """``c`` with ``a c = Delta``."""
    n = len(a)
    inv = [0] * n
    for p, s in enumerate(a):
        inv[s] = p
    return tuple(inv[n - 1 - p] for p in range(n))


def _left_weight(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    while True:
        movable = _start(b) - _finish(a)
        if not movable:
            return a, b
        i = min(movable)
        a = _simple_then(a, _letter(len(a), i))
        # strip sigma_i from the front of b
        b = tuple(i - 1 if s == i else i if s == i - 1 else s for s in b)


def garside_normal_form(word: BraidWord) -> tuple[int, list[tuple]]:
    """``(k, factors)`` with the braid equal to ``Delta^k`` times the factors."""
    n = word.strands
    ident = tuple(range(n))
    delta = tuple(reversed(range(n)))
    k = 0
    flip = False   # stored factors must be read through tau when set
    raw: list[tuple] = []
    for x in word.letters:
        if x > 0:
            s = _letter(n, x)
            raw.append(_tau(s) if flip else s)
        else:
            # s_i^-1 = comp(s_i) Delta^-1, and y Delta^-1 = Delta^-1 tau(y)
            k -= 1
            flip = not flip
            s = _tau(_complement(_letter(n, -x)))
            raw.append(_tau(s) if flip else s)
    factors = [_tau(s) if flip else s for s in raw]
    factors = [f for f in factors if f != ident]
    changed = True
    while changed:
        changed = False
        for j in range(len(factors) - 1, 0, -1):
            a, b = _left_weight(factors[j - 1], factors[j])
            if (a, b) != (factors[j - 1], factors[j]):
                factors[j - 1], factors[j] = a, b
                changed = True
        factors = [f for f in factors if f != ident]
    while factors and factors[0] == delta:
        factors.pop(0)
        k += 1
    return k, factors


def _simple_word(a: tuple) -> list[int]:
    table = [0] * len(a)
    for p, s in enumerate(a):
        table[s] = p
    return list(permutation_braid(Permutation(tuple(table))).letters)


def braid_normal_form(word: BraidWord) -> list[str]:
    """Canonical tokens: ``D^k`` (omitted when ``k = 0``) then one token per factor."""
    if word.strands < 2:
        return []
    k, factors = garside_normal_form(word)
    out = [f"D^{k}"] if k else []
    out += ["".join(f"s{i}" for i in _simple_word(f)) for f in factors]
    return out


# ---------------------------------------------------------------------------
# ribbon braids


@dataclass(frozen=True)
class RibbonBraid:
    """A twist vector (indexed by top positions) followed by a braid."""
    twists: tuple[int, ...]
    braid: BraidWord

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(x) for x in self.twists))
        if len(self.twists) != self.braid.strands:
            raise ModelError("twist vector length differs from strand count")

    @property
    def strands(self) -> int:
        return self.braid.strands

    @classmethod
    def identity(cls, n: int) -> "RibbonBraid":
        return cls((0,) * n, BraidWord.identity(n))

    def then(self, other: "RibbonBraid") -> "RibbonBraid":
        if other.strands != self.strands:
            raise ModelError("strand mismatch")
        perm = self.braid.underlying().table
        tw = tuple(self.twists[j] + other.twists[perm[j]] for j in range(self.strands))
        return RibbonBraid(tw, self.braid.then(other.braid))

    def inverse(self) -> "RibbonBraid":
        perm = self.braid.underlying().table
        tw = [0] * self.strands
        for j in range(self.strands):
            tw[perm[j]] = -self.twists[j]
        return RibbonBraid(tuple(tw), self.braid.inverse())

    def beside(self, other: "RibbonBraid") -> "RibbonBraid":
        return RibbonBraid(self.twists + other.twists, self.braid.beside(other.braid))

    def underlying(self) -> Permutation:
        return self.braid.underlying()

    def equals(self, other) -> bool:
        return ribbon_equal(self, other)

    def __str__(self):
        return f"({list(self.twists)}, {self.braid})"


def ribbon_equal(a: RibbonBraid, b: RibbonBraid) -> bool:
    if a.strands != b.strands:
        raise ModelError("strand mismatch")
    return a.twists == b.twists and braid_equal(a.braid, b.braid)
