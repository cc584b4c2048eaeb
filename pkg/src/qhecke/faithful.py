"""Faithfulness of the action on right classes, theta-domain chains of HNN
recipes, and the block support of the cokernel algebra."""
from __future__ import annotations

from dataclasses import dataclass, field

from .cosets import Pair
from .fusion import FusionError
from .hecke import class_product


@dataclass
class FaithfulnessReport:
    status: str  # certified-faithful | inconclusive
    witnesses: dict = field(default_factory=dict)  # label(a) -> label(gamma)
    missing: list = field(default_factory=list)
    horizon: int = 0
    reason: str = ""

    def as_dict(self):
        return {"status": self.status, "horizon": self.horizon, "reason": self.reason,
                "witnesses": dict(sorted(self.witnesses.items())), "missing": self.missing}


def is_witness(pair: Pair, a, gamma) -> bool:
    """No subobject of a (x) gamma lies in the right class of gamma."""
    return not any(pair.same_right(x, gamma) for x, _ in pair.ring.fuse(a, gamma))


def faithful_sufficient(pair: Pair, closure: bool = False) -> FaithfulnessReport:
    """Search a witness gamma for every nontrivial a in the window.

    Certified only if every a has one and either the ring is finite, the
    subgroup is trivial, or ``closure`` says the builder has an argument
    covering the objects beyond the window."""
    ring, sub, g = pair.ring, pair.sub, pair.g
    u = ring.unit
    trivial = sub.finite and sub.members is not None and sub.members == frozenset({u})
    objs = ring.objects_up_to(g)
    rep = FaithfulnessReport("inconclusive", horizon=g)
    cands = [u] + [c for c in objs if c != u]
    for a in objs:
        if a == u:
            continue
        w = next((c for c in cands if is_witness(pair, a, c)), None)
        if w is None:
            rep.missing.append(ring.label(a))
        else:
            rep.witnesses[ring.label(a)] = ring.label(w)
    if rep.missing:
        rep.reason = "some objects have no witness inside the window"
    elif trivial:
        rep.status, rep.reason = "certified-faithful", "trivial subgroup: [g] = {g}"
    elif ring.finite:
        rep.status, rep.reason = "certified-faithful", "finite ring searched exhaustively"
    elif closure:
        rep.status, rep.reason = "certified-faithful", "builder closure argument"
    else:
        rep.reason = "all window objects have witnesses; no argument beyond the window"
    return rep


# ---------------------------------------------------------------------------
# HNN recipes


def _in_domain(recipe, a, s, k):
    """Return (True, theta^{ks}(a)) if a is in Dom theta^{ks}, else (False, None)."""
    x = a
    for _ in range(k):
        if x not in recipe.lam[s]:
            return False, None
        x = recipe.theta(x, s)
    return True, x


def hnn_theta_domains(recipe, k_max: int = 5, g: int | None = None) -> dict:
    """Dom theta^{k e} for 1 <= k <= k_max over base objects of grade <= g
    (default g = k_max), and their common intersection."""
    B = recipe.base
    g = k_max if g is None else g
    window = B.objects_up_to(g)
    chain = {}
    inter = set(window)
    for s in (1, -1):
        for k in range(1, k_max + 1):
            dom = [a for a in window if _in_domain(recipe, a, s, k)[0]]
            chain[f"{k * s}"] = [B.label(a) for a in dom]
            inter &= set(dom)
    inter = sorted(inter, key=B.key)
    return {"k_max": k_max, "base_horizon": g, "window_size": len(window),
            "chain": chain, "intersection": [B.label(a) for a in inter],
            "intersection_trivial": inter == [B.unit]}


def hnn_faithfulness_witnesses(ring, pair: Pair, k_max: int = 8, g: int = 3) -> FaithfulnessReport:
    """Witness gamma = w^{-n e} for each nontrivial base object a of grade
    <= g, with n minimal such that a leaves Dom theta^{n e}; each witness is
    re-checked by decomposing a (x) gamma."""
    r, B = ring.r, ring.B
    rep = FaithfulnessReport("inconclusive", horizon=g)
    for x in B.objects_up_to(g):
        if x == B.unit:
            continue
        found = None
        for n in range(1, k_max + 1):
            for s in (1, -1):
                if not _in_domain(r, x, s, n)[0]:
                    found = (n, s)
                    break
            if found:
                break
        a = (x,)
        label = ring.label(a)
        if found is None:
            rep.missing.append(label)
            continue
        n, s = found
        gamma = ring.power(-s, n)
        if not is_witness(pair, a, gamma):
            raise FusionError(f"theta-domain witness for {label} fails the class test")
        rep.witnesses[label] = ring.label(gamma)
    if rep.missing:
        rep.reason = f"objects stay in every domain up to k = {k_max}"
    elif r.faithful_closure:
        rep.status, rep.reason = "certified-faithful", "domain chain exhausts the base (builder argument)"
    else:
        rep.reason = "witnesses found in the window only"
    return rep


# ---------------------------------------------------------------------------
# cokernel support


def cokernel_support(pair: Pair) -> dict:
    """Union of the supports of all right-by-left class products."""
    ring = pair.ring
    support = set()
    for s in pair.right.classes:
        for t in pair.left.classes:
            support |= set(class_product(pair, s, t))
    objs = ring.objects_up_to(pair.g)
    members = sorted(support, key=ring.key)
    conj_closed = all(ring.conj(a) in support for a in members if ring.grade(ring.conj(a)) <= pair.g)
    notes = []
    if not pair.sub.finite:
        notes.append("completion non-discrete")
    return {"support": [ring.label(a) for a in members], "size": len(members),
            "window_size": len(objs), "full": len(members) == len(objs),
            "contains_unit": ring.unit in support, "conj_closed": conj_closed, "notes": notes}
