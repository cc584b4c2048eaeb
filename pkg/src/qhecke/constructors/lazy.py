"""Infinite lazy rings: the dual of SU(2) and the integers."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from ..cosets import ClassOracle, SubgroupSet
from ..fusion import FusionRing


class _Residue(ClassOracle):
    """Classes of an abelian-like situation where all three relations
    reduce to a residue."""

    def __init__(self, f, reps_bound, count=None):
        self.f = f
        self.reps_bound = reps_bound
        self.count = count

    def double_count(self):
        return self.count

    def right_key(self, a):
        return self.f(a)

    left_key = double_key = right_key

    def certified(self, a, g):
        return g >= self.reps_bound


class SU2Dual(FusionRing):
    """Objects n >= 0 (twice the spin); qdim n+1; Clebsch-Gordan fusion."""

    name = "dual(SU2)"

    @property
    def unit(self):
        return 0

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and a >= 0

    def conj(self, a):
        return self.check(a)

    def grade(self, a):
        return self.check(a)

    def dim(self, a):
        return a + 1

    def qdim(self, a):
        return Fraction(a + 1)

    def _fuse(self, a, b):
        return Counter(range(abs(a - b), a + b + 1, 2))

    def _enumerate(self, g):
        return range(g + 1)

    def recognize_subgroup(self, S, g):
        if S == frozenset(range(0, g + 1, 2)) and g >= 2:
            return so3_in_su2(self)
        if S == frozenset(range(g + 1)) and g >= 1:
            return SubgroupSet(self, predicate=self.contains, certificate="closed", finite=False,
                               oracle=_Residue(lambda a: 0, 0, 1), name="whole")
        return None


def so3_in_su2(ring: SU2Dual | None = None) -> SubgroupSet:
    ring = ring or SU2Dual()
    return SubgroupSet(ring, predicate=lambda a: a % 2 == 0, certificate="closed", finite=False,
                       oracle=_Residue(lambda a: a % 2, 1, 2), name="dual(SO3)")


class ZRing(FusionRing):
    """The pointed ring of the integers, grade |n|."""

    name = "Z"

    @property
    def unit(self):
        return 0

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def conj(self, a):
        return -self.check(a)

    def grade(self, a):
        return abs(self.check(a))

    def order(self, a):
        return a

    def dim(self, a):
        return 1

    def qdim(self, a):
        return Fraction(1)

    def _fuse(self, a, b):
        return Counter({a + b: 1})

    def _enumerate(self, g):
        return range(-g, g + 1)

    def recognize_subgroup(self, S, g):
        pos = sorted(x for x in S if x > 0)
        if not pos:
            return None
        m = pos[0]
        if S == frozenset(range(-(g // m) * m, g + 1, m)):
            return multiples(self, m)
        return None


def multiples(ring: ZRing, m: int) -> SubgroupSet:
    return SubgroupSet(ring, predicate=lambda a: a % m == 0, certificate="closed", finite=m == 0,
                       oracle=_Residue(lambda a: a % m, m - 1, m), name=f"{m}Z")


def build_su2_dual() -> SU2Dual:
    return SU2Dual()


def build_z() -> ZRing:
    return ZRing()
