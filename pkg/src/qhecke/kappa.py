"""kappa constants: the quantum dimension of the subgroup-isotypic part of a
tensor product, their class-invariance laws, and the (RT) ratio scanner."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cosets import Pair
from .fusion import HorizonExceeded


def kappa(pair: Pair, a, b) -> Fraction:
    """Sum of c * qdim(l) over subobjects l of a (x) b lying in the subgroup."""
    memo = pair._cache.setdefault("kappa", {})
    hit = memo.get((a, b))
    if hit is not None:
        return hit
    ring, sub = pair.ring, pair.sub
    val = Fraction(0)
    for c, m in ring.fuse(a, b):
        if c in sub:
            val += m * ring.qdim(c)
    memo[(a, b)] = val
    return val


def kappa_self(pair: Pair, a) -> Fraction:
    """kappa_a = kappa(conj a, a); at least 1 since the unit occurs once."""
    return kappa(pair, pair.ring.conj(a), a)


def mass(pair: Pair, a) -> Fraction:
    """qdim(a)^2 / kappa_a, the squared norm of the right-class projection."""
    return pair.ring.qdim(a) ** 2 / kappa_self(pair, a)


@dataclass
class InvarianceReport:
    passed: bool = True
    checked_pairs: int = 0
    violations: list = field(default_factory=list)
    mass: dict = field(default_factory=dict)  # right class -> qdim^2/kappa

    def as_dict(self):
        return {"passed": self.passed, "checked_pairs": self.checked_pairs,
                "violations": self.violations[:20],
                "mass": {k: f"{v.numerator}/{v.denominator}" for k, v in sorted(self.mass.items())}}


def check_class_invariance(pair: Pair) -> InvarianceReport:
    """kappa(conj a, b)/(qdim a qdim b) must only depend on the right
    classes of a and b, and qdim(a)^2/kappa_a only on the class of a."""
    ring, R = pair.ring, pair.right
    rep = R.representative
    out = InvarianceReport()
    for cid, members in R.classes.items():
        m0 = mass(pair, rep[cid])
        out.mass[cid] = m0
        for a in members[1:]:
            if mass(pair, a) != m0:
                out.passed = False
                out.violations.append({"law": "mass", "class": cid, "a": ring.label(a),
                                       "expected": str(m0), "got": str(mass(pair, a))})
    ids = list(R.classes)

    def ratio(a, b):
        return kappa(pair, ring.conj(a), b) / (ring.qdim(a) * ring.qdim(b))

    for s in ids:
        for t in ids:
            r0 = ratio(rep[s], rep[t])
            if (r0 != 0) != (s == t):
                out.passed = False
                out.violations.append({"law": "support", "classes": [s, t], "value": str(r0)})
            for a in R.classes[s]:
                for b in R.classes[t]:
                    out.checked_pairs += 1
                    r = ratio(a, b)
                    if r != r0:
                        out.passed = False
                        out.violations.append({"law": "ratio", "a": ring.label(a), "b": ring.label(b),
                                               "expected": str(r0), "got": str(r)})
    return out


def rt_scan(pair: Pair, betas=None) -> dict:
    """For each beta, the largest kappa_c / kappa_a over c in a (x) beta
    with a, c inside the window.  A lower bound for the optimal constant."""
    ring, g = pair.ring, pair.g
    window = ring.objects_up_to(g)
    inside = set(window)
    betas = window if betas is None else list(betas)
    out = {}
    for beta in betas:
        best, wit = Fraction(0), None
        for a in window:
            ka = kappa_self(pair, a)
            for c, _ in ring.fuse(a, beta):
                if c not in inside:
                    continue
                r = kappa_self(pair, c) / ka
                if r > best:
                    best, wit = r, (a, c)
        out[beta] = (best, wit)
    return out


def rt_profile(pair_factory, grades, betas) -> dict:
    """Max ratios for fixed betas as the window grows; used to watch them
    stabilize.  ``pair_factory(g)`` builds the pair at horizon g."""
    rows = {}
    for g in grades:
        p = pair_factory(g)
        try:
            res = rt_scan(p, betas)
        except HorizonExceeded:
            break
        rows[g] = {b: res[b][0] for b in betas}
    return rows
