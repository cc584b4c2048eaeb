"""Quantum subgroups as closed object sets, and their coset relations.

Right classes: a ~ b iff a is a subobject of b(x)l for some l in the subgroup.
Left classes use l(x)b, double classes are generated by both.

On a finite window of an infinite ring a class may leak past the horizon.
Every class therefore carries a completeness flag.  There are two ways to
certify completeness: the conservative grade rule for finite subgroups, or an
exact class oracle supplied by the ring's builder (parity for SU(2)/SO(3),
residues for Z, normal forms for free products and HNN extensions).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

from .fusion import FusionRing, HorizonExceeded


class ClassOracle:
    """Exact class keys for one subgroup, supplied by a builder."""

    def right_key(self, a):
        raise NotImplementedError

    def left_key(self, a):
        raise NotImplementedError

    def double_key(self, a):
        return None

    def certified(self, a, g: int) -> bool:
        """True if every right and left class inside the double class of
        ``a`` has a member of grade <= g."""
        return False

    def unbounded(self, a) -> bool:
        """True if the double class of ``a`` provably has infinitely many
        right classes."""
        return False

    def double_count(self):
        """Total number of double classes if known, else None."""
        return None


class SubgroupSet:
    def __init__(self, ring: FusionRing, members=None, predicate=None, certificate="closed",
                 bound=None, finite=None, oracle: ClassOracle | None = None, name=None):
        self.ring = ring
        self.members = frozenset(members) if members is not None else None
        self._pred = predicate
        self.certificate = certificate
        self.bound = bound
        self.finite = finite if finite is not None else (members is not None and predicate is None)
        self.oracle = oracle
        self.name = name or "subgroup"
        if self.members is None and predicate is None:
            raise ValueError("subgroup needs members or a predicate")

    def __contains__(self, a) -> bool:
        if self._pred is not None:
            return self._pred(a)
        if a in self.members:
            return True
        if self.bound is not None and self.ring.grade(a) > self.bound:
            raise HorizonExceeded(f"membership of {self.ring.label(a)} is beyond the closure bound {self.bound}")
        return False

    def members_up_to(self, g: int) -> list:
        if self.members is not None and self._pred is None:
            return sorted((a for a in self.members if self.ring.grade(a) <= g), key=self.ring.key)
        return [a for a in self.ring.objects_up_to(g) if a in self]

    @property
    def max_grade(self) -> float:
        if not self.finite:
            return inf
        return max(self.ring.grade(a) for a in self.members)

    def describe(self, g: int) -> dict:
        return {"name": self.name, "certificate": self.certificate, "finite": self.finite,
                "members": [self.ring.label(a) for a in self.members_up_to(g)]}


def close_subgroup(ring: FusionRing, seed, g: int, name=None) -> SubgroupSet:
    """Least closed set containing ``seed``, truncated at grade g."""
    S = {ring.unit}
    for a in seed:
        ring.check(a)
        S.add(a)
        S.add(ring.conj(a))
    overflow = False
    frontier = list(S)
    while frontier:
        new = []
        for a in frontier:
            for b in list(S):
                for x, y in ((a, b), (b, a)):
                    for c, _ in ring.fuse(x, y):
                        if c in S:
                            continue
                        if ring.grade(c) > g:
                            overflow = True
                            continue
                        S.add(c)
                        new.append(c)
        frontier = new
    hook = getattr(ring, "recognize_subgroup", None)
    rec = hook(frozenset(S), g) if hook else None
    if rec is not None:
        return rec
    if overflow:
        return SubgroupSet(ring, S, certificate=f"closed-within-grade {g}", bound=g, finite=False, name=name)
    return SubgroupSet(ring, S, certificate="closed", finite=True, name=name)


def trivial_subgroup(ring: FusionRing) -> SubgroupSet:
    return SubgroupSet(ring, {ring.unit}, name="trivial")


# ---------------------------------------------------------------------------


class _UF:
    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[rb] = ra


@dataclass
class CosetDecomposition:
    side: str
    horizon: int
    class_of: dict
    classes: dict  # class id -> members in the window, sorted
    representative: dict
    complete: dict

    def ids(self) -> list:
        return list(self.classes)


def class_id(side: str, ring: FusionRing, rep) -> str:
    return f"{side[0].upper()}:{ring.label(rep)}"


def _grouped(ring, objs, keyf):
    groups = {}
    for a in objs:
        groups.setdefault(keyf(a), []).append(a)
    return list(groups.values())


def _bfs_groups(ring, sub, objs, g, side):
    uf = _UF(objs)
    window = set(objs)
    lam = sub.members_up_to(g)
    for a in objs:
        for l in lam:
            steps = []
            if side in ("right", "double"):
                steps.append(ring.fuse(a, l))
            if side in ("left", "double"):
                steps.append(ring.fuse(l, a))
            for dec in steps:
                for c, _ in dec:
                    if c in window:
                        uf.union(a, c)
    groups = {}
    for a in objs:
        groups.setdefault(uf.find(a), []).append(a)
    return list(groups.values())


def coset_classes(sub: SubgroupSet, side: str, g: int) -> CosetDecomposition:
    if side not in ("right", "left", "double"):
        raise ValueError(side)
    ring = sub.ring
    objs = ring.objects_up_to(g)
    orc = sub.oracle
    if orc is not None:
        if side == "right":
            groups = _grouped(ring, objs, orc.right_key)
        elif side == "left":
            groups = _grouped(ring, objs, orc.left_key)
        else:
            uf = _UF(objs)
            for keyf in (orc.right_key, orc.left_key):
                for grp in _grouped(ring, objs, keyf):
                    for b in grp[1:]:
                        uf.union(grp[0], b)
            dk = {}
            for a in objs:
                k = orc.double_key(a)
                if k is not None:
                    if k in dk:
                        uf.union(dk[k], a)
                    else:
                        dk[k] = a
            tmp = {}
            for a in objs:
                tmp.setdefault(uf.find(a), []).append(a)
            groups = list(tmp.values())
    else:
        groups = _bfs_groups(ring, sub, objs, g, side)

    ell = sub.max_grade
    reach = ell if side != "double" else 2 * ell
    class_of, classes, reps, complete = {}, {}, {}, {}
    for grp in sorted(groups, key=lambda grp: ring.key(min(grp, key=ring.key))):
        grp = sorted(grp, key=ring.key)
        rep = grp[0]
        cid = class_id(side, ring, rep)
        classes[cid] = grp
        reps[cid] = rep
        for a in grp:
            class_of[a] = cid
        if orc is not None:
            complete[cid] = True if side != "double" else bool(orc.certified(rep, g))
        else:
            complete[cid] = ring.grade(rep) + reach <= g
    return CosetDecomposition(side, g, class_of, classes, reps, complete)


@dataclass
class Count:
    value: int
    exact: bool

    def __str__(self):
        return str(self.value) if self.exact else f">={self.value}"

    def as_json(self):
        return self.value if self.exact else {"at_least": self.value}


@dataclass
class CosetCounts:
    L: dict = field(default_factory=dict)
    R: dict = field(default_factory=dict)


class Pair:
    """A ring with a subgroup and a grade horizon; caches coset data."""

    def __init__(self, sub: SubgroupSet, g: int):
        self.sub = sub
        self.ring = sub.ring
        self.g = g
        self._cache = {}

    def classes(self, side: str) -> CosetDecomposition:
        if side not in self._cache:
            self._cache[side] = coset_classes(self.sub, side, self.g)
        return self._cache[side]

    @property
    def right(self):
        return self.classes("right")

    @property
    def left(self):
        return self.classes("left")

    @property
    def double(self):
        return self.classes("double")

    def same_right(self, a, b) -> bool:
        """a ~ b, decided exactly from fusion data (no horizon)."""
        o = self.sub.oracle
        if o is not None:
            return o.right_key(a) == o.right_key(b)
        return any(c in self.sub for c, _ in self.ring.fuse(self.ring.conj(b), a))

    def same_left(self, a, b) -> bool:
        o = self.sub.oracle
        if o is not None:
            return o.left_key(a) == o.left_key(b)
        return any(c in self.sub for c, _ in self.ring.fuse(a, self.ring.conj(b)))

    def right_in(self, tau: str) -> list:
        """Right class ids inside the double class ``tau`` (window)."""
        R = self.right
        return sorted({R.class_of[a] for a in self.double.classes[tau]},
                      key=lambda c: self.ring.key(R.representative[c]))

    def left_in(self, tau: str) -> list:
        L = self.left
        return sorted({L.class_of[a] for a in self.double.classes[tau]},
                      key=lambda c: self.ring.key(L.representative[c]))

    def double_of(self, a) -> str:
        return self.double.class_of[a]

    def unit_class(self) -> str:
        return self.double.class_of[self.ring.unit]

    def conj_class(self, tau: str) -> str:
        """Involution: the double class of the conjugates of ``tau``."""
        rep = self.double.representative[tau]
        c = self.ring.conj(rep)
        if c not in self.double.class_of:
            raise HorizonExceeded(f"conjugate of {tau} outside the window")
        return self.double.class_of[c]

    def complete(self, tau: str) -> bool:
        return self.double.complete[tau]

    def all_doubles_visible(self) -> bool:
        """Every double class of the ring has a representative in the window."""
        if self.ring.finite:
            return True
        o = self.sub.oracle
        n = o.double_count() if o is not None else None
        return n is not None and len(self.double.classes) >= n


def coset_counts(pair: Pair) -> CosetCounts:
    out = CosetCounts()
    for tau in pair.double.classes:
        ex = pair.complete(tau)
        out.L[tau] = Count(len(pair.left_in(tau)), ex)
        out.R[tau] = Count(len(pair.right_in(tau)), ex)
    return out


def commensurator(pair: Pair):
    """Objects whose double class has certified finite L and R.

    Returns (members, horizon_limited) where the second set lists objects
    whose status could not be decided inside the window.
    """
    ring = pair.ring
    members, limited = [], []
    orc = pair.sub.oracle
    for tau, objs in pair.double.classes.items():
        rep = pair.double.representative[tau]
        if orc is not None and orc.unbounded(rep):
            continue
        if pair.complete(tau):
            members.extend(objs)
        else:
            limited.extend(objs)
    return sorted(members, key=ring.key), sorted(limited, key=ring.key)


def is_hecke_pair(pair: Pair) -> dict:
    ring = pair.ring
    orc = pair.sub.oracle
    if orc is not None:
        for tau, rep in pair.double.representative.items():
            if orc.unbounded(rep):
                return {"verdict": "no", "witness": tau}
    incomplete = [t for t in pair.double.classes if not pair.complete(t)]
    if ring.finite:
        return {"verdict": "certified-yes", "witness": None}
    return {"verdict": "yes-within-horizon", "witness": None, "incomplete_classes": len(incomplete)}
