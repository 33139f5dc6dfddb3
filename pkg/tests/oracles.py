"""Independent reference implementations used only by the tests."""
from __future__ import annotations

from itertools import product


def all_words(strands: int, max_len: int):
    alphabet = [s * i for i in range(1, strands) for s in (1, -1)]
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            gp = self.parent.setdefault(p, p)
            self.parent[x] = gp
            x, p = p, gp
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                ra, rb = rb, ra
            self.parent[ra] = rb


def _neighbours(w):
    """Words reachable by one relation rewrite of equal or smaller length."""
    n = len(w)
    for k in range(n - 1):
        a, b = w[k], w[k + 1]
        if a == -b:
            yield w[:k] + w[k + 2:]
        if abs(abs(a) - abs(b)) >= 2:
            yield w[:k] + (b, a) + w[k + 2:]
    for k in range(n - 2):
        a, b, c = w[k], w[k + 1], w[k + 2]
        if a == c and a * b > 0 and abs(abs(a) - abs(b)) == 1:
            yield w[:k] + (b, a, b) + w[k + 3:]


def braid_classes(strands: int, max_len: int, slack: int = 2):
    """Map each word of length <= max_len to a class id by bounded rewriting.

    All words up to ``max_len + slack`` take part, so equalities that need a
    short detour through longer words are still found.
    """
    uf = _UnionFind()
    for w in all_words(strands, max_len + slack):
        uf.find(w)
        for v in _neighbours(w):
            uf.union(w, v)
    return {w: uf.find(w) for w in all_words(strands, max_len)}


# ---------------------------------------------------------------------------
# finite sets with labelled elements
#
# An element of a coproduct is a tagged pair instead of an index, so the
# structural maps are written by what they do to labels.


def grid(m: int, n: int):
    """Elements of the m-fold coproduct of n: pairs (block, element)."""
    return [(i, j) for i in range(m) for j in range(n)]


def tagged(left, right):
    return [("L", x) for x in left] + [("R", x) for x in right]


def coprod_square_by_labels(m: int, n: int, p: int) -> bool:
    """sigma o mu = nu o (sigma + sigma) on labelled elements."""
    def sigma(e):
        i, j = e
        return (j, i)

    def mu(e):
        side, (i, k) = e
        return (i if side == "L" else m + i, k)

    def nu(e):
        side, (k, i) = e
        return (k, i if side == "L" else m + i)

    def plus(f, g):
        return lambda e: (e[0], f(e[1]) if e[0] == "L" else g(e[1]))

    domain = tagged(grid(m, p), grid(n, p))
    return all(sigma(mu(e)) == nu(plus(sigma, sigma)(e)) for e in domain)


def flatten_pair(e, size: int) -> int:
    """Index of (block, element) when blocks of ``size`` are laid out in order."""
    i, j = e
    return i * size + j


# ---------------------------------------------------------------------------
# finite categories, compared through skeletons


def skeleton(C):
    """Full subcategory on the first object of every isomorphism class."""
    reps = []
    for o in C.objects:
        if not any(_iso(C, o, r) for r in reps):
            reps.append(o)
    mors = [m for m, (s, t) in C.morphisms.items() if s in reps and t in reps]
    return reps, mors


def _iso(C, a, b):
    for f in C.hom(a, b):
        for g in C.hom(b, a):
            if C.compose(g, f) == C.ident(a) and C.compose(f, g) == C.ident(b):
                return True
    return False


def skeletons_isomorphic(A, B) -> bool:
    """Brute force over object bijections and hom-set bijections."""
    from itertools import permutations
    oa, ma = skeleton(A)
    ob, mb = skeleton(B)
    if len(oa) != len(ob) or len(ma) != len(mb):
        return False
    for perm in permutations(ob):
        om = dict(zip(oa, perm))
        if any(len(A.hom(x, y)) != len(B.hom(om[x], om[y])) for x in oa for y in oa):
            continue
        if _extend(A, B, om, oa, {}):
            return True
    return False


def _extend(A, B, om, objs, mm):
    pending = [(x, y) for x in objs for y in objs if any(f not in mm for f in A.hom(x, y))]
    if not pending:
        for (g, f), h in A.composition.items():
            if f in mm and g in mm and h in mm and B.compose(mm[g], mm[f]) != mm[h]:
                return False
        return all(mm[A.ident(x)] == B.ident(om[x]) for x in objs)
    from itertools import permutations
    x, y = pending[0]
    src = A.hom(x, y)
    for image in permutations(B.hom(om[x], om[y])):
        trial = dict(mm)
        trial.update(zip(src, image))
        if _partial_ok(A, B, trial) and _extend(A, B, om, objs, trial):
            return True
    return False


def _partial_ok(A, B, mm):
    for (g, f), h in A.composition.items():
        if f in mm and g in mm and h in mm and B.compose(mm[g], mm[f]) != mm[h]:
            return False
    return True
