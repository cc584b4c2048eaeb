"""HNN extensions of a base ring by a letter w conjugating L+ onto L-.

Relations: w^e b w^-e = theta^e(b) for b in L_e, hence
l (x) w^e = w^e (x) theta^-e(l) for l in L_-e.

Words are normalized left to right: each letter x_i before w^e is split as
x_i = g (x) l with g a fixed coset representative of base/L_-e and l in
L_-e, then l is pushed through w^e.  A letter equal to the unit between
w^-e and w^e cancels the pair.  This is exact whenever every representative
g satisfies (g* (x) g) meets L_-e only in the unit, which makes g (x) l
irreducible for all l; recipes are checked for this on construction.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..cosets import ClassOracle, SubgroupSet, coset_classes
from ..fusion import FusionError, FusionRing, HorizonExceeded
from .lazy import ZRing, multiples, so3_in_su2, SU2Dual
from .products import RestrictedProduct
from .rep import dual_s3, dual_z2

SIGNS = (1, -1)


class InvalidTheta(FusionError):
    pass


class LengthUnsupported(FusionError):
    """The recipe does not admit the normal form used for word fusion."""


@dataclass
class HnnRecipe:
    base: FusionRing
    lam: dict  # sign -> SubgroupSet
    reps: dict  # sign -> right coset representatives of base / L_sign, unit first
    theta: Callable  # theta(x, +1) = theta(x) on L+, theta(x, -1) = theta^-1(x) on L-
    generators: list = field(default_factory=list)
    factor: Callable | None = None  # factor(x, s) -> (g, l); generic search if None
    name: str = "hnn"
    faithful_closure: bool = False  # builder asserts the domain chain exhausts the base
    check_grade: int = 3

    def split(self, x, s):
        if self.factor is not None:
            return self.factor(x, s)
        B = self.base
        for g in self.reps[s]:
            hits = [(l, m) for l, m in B.fuse(B.conj(g), x) if l in self.lam[s]]
            if hits:
                if len(hits) != 1 or hits[0][1] != 1 or B.qdim(g) * B.qdim(hits[0][0]) != B.qdim(x):
                    raise LengthUnsupported(f"{B.label(x)} does not factor over the subgroup")
                return g, hits[0][0]
        raise LengthUnsupported(f"{B.label(x)} lies in no listed coset")

    def validate(self):
        B = self.base
        u = B.unit
        for s in SIGNS:
            if self.reps[s][0] != u:
                raise InvalidTheta("coset representatives must start with the unit")
        window = [x for x in B.objects_up_to(self.check_grade)]
        for s in SIGNS:
            L = [x for x in window if x in self.lam[s]]
            if self.theta(u, s) != u:
                raise InvalidTheta("theta must fix the unit")
            for x in L:
                y = self.theta(x, s)
                if y not in self.lam[-s]:
                    raise InvalidTheta(f"theta maps {B.label(x)} outside the target subgroup")
                if self.theta(y, -s) != x:
                    raise InvalidTheta(f"theta is not invertible at {B.label(x)}")
                if B.conj(y) != self.theta(B.conj(x), s) or B.qdim(y) != B.qdim(x):
                    raise InvalidTheta(f"theta does not respect conj/qdim at {B.label(x)}")
            for x in L:
                for z in L:
                    lhs = Counter({self.theta(c, s): m for c, m in B.fuse(x, z)})
                    rhs = Counter(dict(B.fuse(self.theta(x, s), self.theta(z, s))))
                    if lhs != rhs:
                        raise InvalidTheta(f"theta is not multiplicative at ({B.label(x)}, {B.label(z)})")

    def factorizable(self) -> bool:
        B = self.base
        for s in SIGNS:
            for g in self.reps[s]:
                if sum(m for l, m in B.fuse(B.conj(g), g) if l in self.lam[s]) != 1:
                    return False
        return True


class HnnRing(FusionRing):
    """Irreducibles are normal-form words (x0, e1, x1, ..., en, xn)."""

    def __init__(self, recipe: HnnRecipe, max_layers: int = 12):
        super().__init__()
        recipe.validate()
        if not recipe.factorizable():
            raise LengthUnsupported(
                "recipe has a coset representative g with more than the unit in "
                "(g* x g) restricted to the subgroup; word fusion needs intertwiner data")
        self.r = recipe
        self.B = recipe.base
        self.name = recipe.name
        self.kac = self.B.kac
        self.max_layers = max_layers
        u = self.B.unit
        self.w = (u, 1, u)
        self.wbar = (u, -1, u)
        gens = [self.w, self.wbar] + [(x,) for x in recipe.generators if x != u]
        self.gens = sorted(set(gens), key=repr)
        self._layers = [{(u,)}]
        self._grade = {(u,): 0}
        self._nf = {}

    # --- normal form -----------------------------------------------------
    def normalize(self, raw) -> Counter:
        raw = tuple(raw)
        hit = self._nf.get(raw)
        if hit is not None:
            return hit
        B, r = self.B, self.r
        u = B.unit
        out = Counter()
        stack = [(raw, 1)]
        while stack:
            word, mult = stack.pop()
            n = (len(word) - 1) // 2
            for i in range(n):
                x, e = word[2 * i], word[2 * i + 1]
                g, l = r.split(x, -e)
                if l != u:
                    pushed = r.theta(l, -e)
                    for z, m in B.fuse(pushed, word[2 * i + 2]):
                        stack.append((word[:2 * i] + (g, e, z) + word[2 * i + 3:], mult * m))
                    break
                if i >= 1 and g == u and word[2 * i - 1] == -e:
                    for z, m in B.fuse(word[2 * i - 2], word[2 * i + 2]):
                        stack.append((word[:2 * i - 2] + (z,) + word[2 * i + 3:], mult * m))
                    break
            else:
                out[word] += mult
        self._nf[raw] = out
        return out

    # --- ring interface --------------------------------------------------
    @property
    def unit(self):
        return (self.B.unit,)

    def contains(self, a):
        if not isinstance(a, tuple) or len(a) % 2 == 0:
            return False
        if not all(self.B.contains(a[i]) for i in range(0, len(a), 2)):
            return False
        if not all(a[i] in SIGNS for i in range(1, len(a), 2)):
            return False
        try:
            nf = self.normalize(a)
        except FusionError:
            return False
        return nf == Counter({a: 1})

    def conj(self, a):
        B = self.B
        raw = []
        for i in range(len(a) - 1, -1, -1):
            raw.append(B.conj(a[i]) if i % 2 == 0 else -a[i])
        nf = self.normalize(raw)
        if len(nf) != 1 or next(iter(nf.values())) != 1:
            raise FusionError(f"conjugate of {self.label(a)} is not simple")
        return next(iter(nf))

    def wlen(self, a) -> int:
        return (len(a) - 1) // 2

    def dim(self, a):
        d = 1
        for i in range(0, len(a), 2):
            d *= self.B.dim(a[i])
        return d

    def qdim(self, a):
        d = Fraction(1)
        for i in range(0, len(a), 2):
            d *= self.B.qdim(a[i])
        return d

    def order(self, a):
        return tuple(self.B.key(x) if i % 2 == 0 else x for i, x in enumerate(a))

    def label(self, a):
        B, u = self.B, self.B.unit
        parts = []
        for i, x in enumerate(a):
            if i % 2:
                parts.append("w" if x == 1 else "w^-1")
            elif x != u:
                parts.append(B.label(x))
        return " ".join(parts) or B.label(u)

    def _grow(self):
        if len(self._layers) > self.max_layers:
            raise HorizonExceeded(f"{self.name}: grade layers beyond {self.max_layers}")
        n = len(self._layers)
        new = set()
        for a in self._layers[-1]:
            for s in self.gens:
                for c in self._fuse(a, s):
                    if c not in self._grade:
                        self._grade[c] = n
                        new.add(c)
        self._layers.append(new)

    def grade(self, a):
        while a not in self._grade:
            self.check(a)
            self._grow()
        return self._grade[a]

    def _enumerate(self, g):
        while len(self._layers) <= g:
            self._grow()
        return [a for layer in self._layers[:g + 1] for a in layer]

    def _fuse(self, a, b):
        out = Counter()
        for z, m in self.B.fuse(a[-1], b[0]):
            for w, n in self.normalize(a[:-1] + (z,) + b[1:]).items():
                out[w] += m * n
        return out

    # --- helpers ---------------------------------------------------------
    def base_object(self, x):
        return (x,)

    def power(self, e: int, n: int):
        u = self.B.unit
        return (u,) + (e, u) * n

    def base_subgroup(self) -> SubgroupSet:
        return SubgroupSet(self, predicate=lambda a: len(a) == 1, certificate="closed",
                           finite=False, oracle=_BaseOracle(self), name="base")


class _BaseOracle(ClassOracle):
    """Exact classes relative to the base: right classes of a word are fixed
    by the normal-form prefix up to the last w."""

    def __init__(self, ring: HnnRing):
        self.ring = ring
        self._m = None

    def right_key(self, a):
        return a[:-1]

    def left_key(self, a):
        return self.ring.conj(a)[:-1]

    def double_key(self, a):
        n = self.ring.wlen(a)
        if n == 0:
            return ()
        if n == 1:
            return (a[1],)
        return None

    @property
    def m(self):
        if self._m is None:
            R = self.ring
            self._m = max(R.grade((g,)) for s in SIGNS for g in R.r.reps[s])
        return self._m

    def certified(self, a, g):
        n = self.ring.wlen(a)
        if n <= 1:
            return g >= n * (1 + self.m)
        if n == 2:
            return g >= n * (1 + self.m) + 2 * self.m
        return False


def build_hnn_pair(recipe: HnnRecipe):
    ring = HnnRing(recipe)
    return ring, ring.base_subgroup()


# ---------------------------------------------------------------------------
# closed forms


def _lambda_qdim(B, x, y, sub):
    return sum(m * B.qdim(c) for c, m in B.fuse(x, y) if c in sub)


def hnn_closed_forms(recipe: HnnRecipe) -> dict:
    """L, R, the weighted sums and the modular value of the class of w,
    from base data only."""
    B = recipe.base
    lt = Fraction(0)
    for g in recipe.reps[1]:
        d = B.conj(g)  # left class representative of L+ \ base
        lt += B.qdim(d) ** 2 / _lambda_qdim(B, d, B.conj(d), recipe.lam[1])
    rt = Fraction(0)
    for e in recipe.reps[-1]:
        rt += B.qdim(e) ** 2 / _lambda_qdim(B, B.conj(e), e, recipe.lam[-1])
    return {"L_w": len(recipe.reps[1]), "R_w": len(recipe.reps[-1]),
            "Ltilde_w": lt, "Rtilde_w": rt, "nabla_w": lt / rt}


# ---------------------------------------------------------------------------
# builders


def _shift(a, s):
    """theta on the restricted product: positions move one step towards
    -infinity (s=+1) or +infinity (s=-1) in the order ..,-2,-1,1,2,.."""
    out = []
    for k, x in a:
        if s == 1:
            if k == 1:
                raise InvalidTheta("theta undefined off its domain")
            k2 = k - 1
        else:
            if k == -1:
                raise InvalidTheta("theta^-1 undefined off its domain")
            k2 = k + 1
        out.append((k2, x))
    return tuple(sorted(out))


def profinite_recipe(plus: FusionRing | None = None, minus: FusionRing | None = None) -> HnnRecipe:
    """Base = restricted product of ``plus`` on k > 0 and ``minus`` on k < 0;
    L_e = families trivial at position e; theta = shift."""
    plus = plus or dual_s3()
    minus = minus or dual_z2()
    B = RestrictedProduct(plus, minus)
    lam = {s: SubgroupSet(B, predicate=(lambda a, s=s: all(k != s for k, _ in a)),
                          finite=False, name=f"L{'+' if s == 1 else '-'}") for s in SIGNS}
    reps = {s: [()] + [((s, x),) for x in B.factor(s).objects_up_to(0) if x != B.factor(s).unit]
            for s in SIGNS}

    def factor(x, s):
        return tuple(t for t in x if t[0] == s), tuple(t for t in x if t[0] != s)

    gens = [a for a in B.objects_up_to(1) if a]
    return HnnRecipe(B, lam, reps, _shift, gens, factor, name=f"HNN({B.name})",
                     faithful_closure=True)


def baumslag_solitar_recipe(m: int = 2, n: int = 2) -> HnnRecipe:
    """BS(m,n): base Z, L+ = mZ, L- = nZ, theta(mk) = nk."""
    Z = ZRing()
    lam = {1: multiples(Z, m), -1: multiples(Z, n)}
    reps = {1: list(range(m)), -1: list(range(n))}

    def theta(x, s):
        if s == 1:
            if x % m:
                raise InvalidTheta("theta undefined off mZ")
            return x // m * n
        if x % n:
            raise InvalidTheta("theta^-1 undefined off nZ")
        return x // n * m

    def factor(x, s):
        k = m if s == 1 else n
        return x % k, x - x % k

    return HnnRecipe(Z, lam, reps, theta, [1, -1], factor, name=f"BS({m},{n})")


def su2_center_recipe() -> HnnRecipe:
    """Base dual(SU2) with L+ = L- = the even objects and theta = id; the
    fusion-level shadow of an HNN extension over a central quotient."""
    S = SU2Dual()
    ev = so3_in_su2(S)
    return HnnRecipe(S, {1: ev, -1: ev}, {1: [0, 1], -1: [0, 1]}, lambda x, s: x, [1],
                     None, name="HNN(dual(SU2); SO3)")


def explicit_recipe(base: FusionRing, plus, minus, theta_pairs, name="hnn") -> HnnRecipe:
    """Finite base with explicit subgroups and theta given as pairs."""
    if not base.finite:
        raise InvalidTheta("explicit recipes need a finite base")
    lp = SubgroupSet(base, plus, name="L+")
    lm = SubgroupSet(base, minus, name="L-")
    fwd = dict(theta_pairs)
    if set(fwd) != set(plus) or set(fwd.values()) != set(minus) or len(set(fwd.values())) != len(fwd):
        raise InvalidTheta("theta must be a bijection from L+ onto L-")
    bwd = {v: k for k, v in fwd.items()}

    def theta(x, s):
        try:
            return fwd[x] if s == 1 else bwd[x]
        except KeyError:
            raise InvalidTheta(f"theta undefined at {x!r}") from None

    reps = {}
    for s, sub in ((1, lp), (-1, lm)):
        dec = coset_classes(sub, "right", 0)
        reps[s] = [dec.representative[c] for c in dec.classes]
    return HnnRecipe(base, {1: lp, -1: lm}, reps, theta, list(base.objects_up_to(0)), None, name=name)
