"""Free products of fusion rings: alternating reduced words."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from ..cosets import ClassOracle, SubgroupSet
from ..fusion import FusionRing


class FreeProduct(FusionRing):
    """Objects are tuples of (side, letter) alternating between the two
    factors, with no unit letters.  The grade of a word is the sum over its
    letters of 1 + (grade of the letter in its factor), so each grade window
    is finite even when a factor is infinite."""

    def __init__(self, r0: FusionRing, r1: FusionRing, tags=None):
        super().__init__()
        self.f = (r0, r1)
        self.tags = tuple(tags) if tags else (r0.name, r1.name)
        self.name = f"{r0.name} * {r1.name}"
        self.kac = r0.kac and r1.kac

    @property
    def unit(self):
        return ()

    def contains(self, a):
        if not isinstance(a, tuple):
            return False
        prev = None
        for t in a:
            if not (isinstance(t, tuple) and len(t) == 2 and t[0] in (0, 1)):
                return False
            s, x = t
            if s == prev or not self.f[s].contains(x) or x == self.f[s].unit:
                return False
            prev = s
        return True

    def letter(self, side, x):
        return () if x == self.f[side].unit else ((side, x),)

    def conj(self, a):
        return tuple((s, self.f[s].conj(x)) for s, x in reversed(a))

    def grade(self, a):
        return sum(1 + self.f[s].grade(x) for s, x in a)

    def order(self, a):
        return tuple((s, self.f[s].key(x)) for s, x in a)

    def dim(self, a):
        d = 1
        for s, x in a:
            d *= self.f[s].dim(x)
        return d

    def qdim(self, a):
        d = Fraction(1)
        for s, x in a:
            d *= self.f[s].qdim(x)
        return d

    def label(self, a):
        if not a:
            return "1"
        return "*".join(f"{self.tags[s]}:{self.f[s].label(x)}" for s, x in a)

    def _fuse(self, u, v):
        if not u:
            return Counter({v: 1})
        if not v:
            return Counter({u: 1})
        (s, x), (t, y) = u[-1], v[0]
        if s != t:
            return Counter({u + v: 1})
        out = Counter()
        F = self.f[s]
        for z, m in F.fuse(x, y):
            if z == F.unit:
                for w, n in self.fuse(u[:-1], v[1:]):
                    out[w] += m * n
            else:
                out[u[:-1] + ((s, z),) + v[1:]] += m
        return out

    def _enumerate(self, g):
        letters = [[(x, 1 + F.grade(x)) for x in F.objects_up_to(g - 1) if x != F.unit] for F in self.f]
        out = [()]

        def rec(word, last, budget):
            for s in (0, 1):
                if s == last:
                    continue
                for x, c in letters[s]:
                    if c <= budget:
                        w = word + ((s, x),)
                        out.append(w)
                        rec(w, s, budget - c)

        rec((), None, g)
        return out

    def recognize_subgroup(self, S, g):
        for i in (0, 1):
            F = self.f[i]
            want = {()} | {((i, x),) for x in F.objects_up_to(g - 1) if x != F.unit}
            if S == want and len(want) > 1:
                return factor_subgroup(self, i)
        return None


class _FactorOracle(ClassOracle):
    def __init__(self, ring: FreeProduct, side: int):
        self.ring, self.i = ring, side
        F = ring.f[side]
        self.finite = F.finite
        self.lmax = max((1 + F.grade(x) for x in F.objects_up_to(0)), default=0) if F.finite else None

    def right_key(self, a):
        return a[:-1] if a and a[-1][0] == self.i else a

    def left_key(self, a):
        return a[1:] if a and a[0][0] == self.i else a

    def double_key(self, a):
        return self.left_key(self.right_key(a))

    def certified(self, a, g):
        core = self.double_key(a)
        if not core:
            return True
        if not self.finite:
            return False
        return self.ring.grade(core) + self.lmax <= g

    def unbounded(self, a):
        return not self.finite and bool(self.double_key(a))


def factor_subgroup(ring: FreeProduct, side: int) -> SubgroupSet:
    F = ring.f[side]
    pred = lambda a: a == () or (len(a) == 1 and a[0][0] == side)  # noqa: E731
    members = None
    if F.finite:
        members = [()] + [((side, x),) for x in F.objects_up_to(0) if x != F.unit]
    return SubgroupSet(ring, members=members, predicate=None if F.finite else pred,
                       certificate="closed", finite=F.finite,
                       oracle=_FactorOracle(ring, side), name=ring.tags[side])


def build_free_product(r0, r1, tags=None) -> FreeProduct:
    return FreeProduct(r0, r1, tags)
