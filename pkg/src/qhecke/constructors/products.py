"""Direct products and restricted products along the nonzero integers."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product

from ..fusion import FusionRing


class ProductRing(FusionRing):
    """Objects are pairs; fusion, dims and grades are componentwise."""

    def __init__(self, r1: FusionRing, r2: FusionRing):
        super().__init__()
        self.r1, self.r2 = r1, r2
        self.name = f"{r1.name} x {r2.name}"
        self.finite = r1.finite and r2.finite
        self.kac = r1.kac and r2.kac

    @property
    def unit(self):
        return (self.r1.unit, self.r2.unit)

    def contains(self, a):
        return (isinstance(a, tuple) and len(a) == 2
                and self.r1.contains(a[0]) and self.r2.contains(a[1]))

    def conj(self, a):
        return (self.r1.conj(a[0]), self.r2.conj(a[1]))

    def grade(self, a):
        return self.r1.grade(a[0]) + self.r2.grade(a[1])

    def order(self, a):
        return (self.r1.key(a[0]), self.r2.key(a[1]))

    def dim(self, a):
        return self.r1.dim(a[0]) * self.r2.dim(a[1])

    def qdim(self, a):
        return Fraction(self.r1.qdim(a[0]) * self.r2.qdim(a[1]))

    def label(self, a):
        return f"({self.r1.label(a[0])},{self.r2.label(a[1])})"

    def _fuse(self, a, b):
        out = Counter()
        for (x, m), (y, n) in product(self.r1.fuse(a[0], b[0]), self.r2.fuse(a[1], b[1])):
            out[(x, y)] += m * n
        return out

    def _enumerate(self, g):
        left = self.r1.objects_up_to(g)
        return [(x, y) for x in left for y in self.r2.objects_up_to(g - self.r1.grade(x))]


def build_product(r1, r2) -> ProductRing:
    return ProductRing(r1, r2)


class RestrictedProduct(FusionRing):
    """Finitely supported families indexed by nonzero integers k.

    Position k carries a letter of ``plus`` when k > 0 and of ``minus`` when
    k < 0.  Objects are sorted tuples of (k, letter) with non-unit letters.
    The grade is the sum of |k| over the support, so every grade window is
    finite and fusion is grade-subadditive.
    """

    def __init__(self, plus: FusionRing, minus: FusionRing):
        super().__init__()
        if not (plus.finite and minus.finite):
            raise ValueError("restricted products need finite factors")
        self.plus, self.minus = plus, minus
        self.name = f"prod'({plus.name}|{minus.name})"
        self.kac = plus.kac and minus.kac

    def factor(self, k):
        return self.plus if k > 0 else self.minus

    @property
    def unit(self):
        return ()

    def contains(self, a):
        if not isinstance(a, tuple):
            return False
        ks = [t[0] for t in a if isinstance(t, tuple) and len(t) == 2]
        if len(ks) != len(a) or ks != sorted(set(ks)) or 0 in ks:
            return False
        return all(isinstance(k, int) and self.factor(k).contains(x) and x != self.factor(k).unit
                   for k, x in a)

    def conj(self, a):
        return tuple((k, self.factor(k).conj(x)) for k, x in a)

    def grade(self, a):
        return sum(abs(k) for k, _ in a)

    def order(self, a):
        return tuple((k, self.factor(k).key(x)) for k, x in a)

    def dim(self, a):
        d = 1
        for k, x in a:
            d *= self.factor(k).dim(x)
        return d

    def qdim(self, a):
        d = Fraction(1)
        for k, x in a:
            d *= self.factor(k).qdim(x)
        return d

    def label(self, a):
        if not a:
            return "1"
        return ".".join(f"{self.factor(k).label(x)}@{k}" for k, x in a)

    def letter(self, a, k):
        return dict(a).get(k, self.factor(k).unit)

    def make(self, letters: dict):
        return tuple(sorted((k, x) for k, x in letters.items() if x != self.factor(k).unit))

    def _fuse(self, a, b):
        da, db = dict(a), dict(b)
        keys = sorted(set(da) | set(db))
        choices = []
        for k in keys:
            F = self.factor(k)
            choices.append(F.fuse(da.get(k, F.unit), db.get(k, F.unit)))
        out = Counter()
        for combo in product(*choices):
            m = 1
            letters = {}
            for k, (x, n) in zip(keys, combo):
                m *= n
                letters[k] = x
            out[self.make(letters)] += m
        return out

    def _enumerate(self, g):
        pos = [k for k in range(1, g + 1)] + [-k for k in range(1, g + 1)]
        out = []

        def rec(i, budget, acc):
            if i == len(pos):
                out.append(tuple(sorted(acc)))
                return
            rec(i + 1, budget, acc)
            k = pos[i]
            if abs(k) <= budget:
                F = self.factor(k)
                for x in F.objects_up_to(0):
                    if x != F.unit:
                        rec(i + 1, budget - abs(k), acc + [(k, x)])

        rec(0, g, [])
        return out


def build_restricted_product(plus, minus) -> RestrictedProduct:
    return RestrictedProduct(plus, minus)
