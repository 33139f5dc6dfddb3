"""Skeletal finite sets and their chosen coproduct structure.

Objects are natural numbers ``n = {0, ..., n-1}``.  Nested coproducts are
flattened left to right, so ``coprod_m n`` is the ordinal ``m*n`` with block
``i`` occupying ``[i*n, (i+1)*n)``.  Under that convention the structural
isomorphism ``mu`` is an identity table and ``sigma``/``nu`` are computed
permutations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class FinTypeError(TypeError):
    """Raised when two finite maps are composed across mismatched ordinals."""


@dataclass(frozen=True)
class FinMap:
    source: int
    target: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(x) for x in self.table))
        if self.source < 0 or self.target < 0:
            raise ValueError("ordinals are non-negative")
        if len(self.table) != self.source:
            raise ValueError(
                f"table has length {len(self.table)}, expected {self.source}")
        for x in self.table:
            if not 0 <= x < self.target:
                raise ValueError(f"entry {x} out of range for target {self.target}")

    @classmethod
    def from_table(cls, table: Sequence[int], target: int | None = None) -> "FinMap":
        table = tuple(table)
        if target is None:
            target = max(table) + 1 if table else 0
        return cls(len(table), target, table)

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __repr__(self):
        return f"FinMap({self.source}->{self.target}, {list(self.table)})"

    def is_bijection(self) -> bool:
        return self.source == self.target and sorted(self.table) == list(range(self.source))

    def inverse(self) -> "FinMap":
        if not self.is_bijection():
            raise ValueError("only bijections are invertible")
        inv = [0] * self.source
        for i, j in enumerate(self.table):
            inv[j] = i
        return FinMap(self.source, self.source, tuple(inv))


def identity(n: int) -> FinMap:
    return FinMap(n, n, tuple(range(n)))


def fin_compose(g: FinMap, f: FinMap) -> FinMap:
    """``g o f``: first ``f``, then ``g``."""
    if f.target != g.source:
        raise FinTypeError(f"cannot compose {g} after {f}: {f.target} != {g.source}")
    return FinMap(f.source, g.target, tuple(g.table[x] for x in f.table))


def fin_coproduct(f: FinMap, g: FinMap) -> FinMap:
    """Block sum ``f + g``."""
    return FinMap(f.source + g.source, f.target + g.target,
                  f.table + tuple(f.target + x for x in g.table))


def coproduct_all(maps: Iterable[FinMap]) -> FinMap:
    out = identity(0)
    for f in maps:
        out = fin_coproduct(out, f)
    return out


def sigma(m: int, n: int) -> FinMap:
    """Transpose an ``m x n`` grid: ``i*n + j -> j*m + i``."""
    table = [0] * (m * n)
    for i in range(m):
        for j in range(n):
            table[i * n + j] = j * m + i
    return FinMap(m * n, m * n, tuple(table))


def mu(m: int, n: int, p: int) -> FinMap:
    # coprod_m p + coprod_n p -> coprod_{m+n} p; identity under left-to-right flattening
    return identity((m + n) * p)


def nu(p: int, m: int, n: int) -> FinMap:
    """coprod_p m + coprod_p n -> coprod_p (m+n), interleaving the blocks."""
    table = []
    for k in range(p):
        for i in range(m):
            table.append(k * (m + n) + i)
    for k in range(p):
        for j in range(n):
            table.append(k * (m + n) + m + j)
    size = p * (m + n)
    return FinMap(size, size, tuple(table))


def corner_iso(kind: str, m: int, n: int, p: int = 0) -> FinMap:
    """Structural isomorphism of the coproduct structure.

    ``sigma`` ignores ``p``; ``mu`` is ``mu^p_{m,n}``; ``nu`` is ``nu_p^{m,n}``.
    """
    if kind == "sigma":
        return sigma(m, n)
    if kind == "mu":
        return mu(m, n, p)
    if kind == "nu":
        return nu(p, m, n)
    raise ValueError(f"unknown corner isomorphism {kind!r}")


def verify_coprod_square(m: int, n: int, p: int) -> bool:
    """Check ``sigma o mu == nu o (sigma + sigma)`` as tables."""
    top = fin_compose(sigma(m + n, p), mu(m, n, p))
    bottom = fin_compose(nu(p, m, n), fin_coproduct(sigma(m, p), sigma(n, p)))
    return top == bottom
