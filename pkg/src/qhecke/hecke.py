"""The central Hecke algebra spanned by double-class projections.

Everything is driven by one coefficient formula for the product of a right
class projection p[a] and a left class projection p[b]: the coefficient at
an object d is

    qdim(b)/kappa(b, conj b) * sum_{a' in [a], a' < d (x) conj b} c * qdim(a') / qdim(d).

The right hand side only needs exact class membership, so each coefficient
is exact at every object of the window; what can be incomplete is the set of
classes summed over or the set of visible targets, and both are flagged.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cosets import Pair
from .fusion import FusionError, HorizonExceeded, fmt
from .kappa import kappa, kappa_self, mass


class CentralityViolation(FusionError):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class RegimeUnavailable(FusionError):
    pass


# ---------------------------------------------------------------------------
# class products


def class_product(pair: Pair, sigma: str, sigma2: str) -> dict:
    """Per-object coefficients of p[sigma] * p[sigma2] over the window.

    ``sigma`` is a right class id, ``sigma2`` a left class id."""
    ring = pair.ring
    memo = pair._cache.setdefault("cp", {})
    if (sigma, sigma2) in memo:
        return memo[(sigma, sigma2)]
    a = pair.right.representative[sigma]
    b = pair.left.representative[sigma2]
    bb = ring.conj(b)
    pref = ring.qdim(b) / kappa(pair, b, bb)
    out = {}
    for d in ring.objects_up_to(pair.g):
        s = Fraction(0)
        for x, m in ring.fuse(d, bb):
            if pair.same_right(x, a):
                s += m * ring.qdim(x)
        if s:
            out[d] = pref * s / ring.qdim(d)
    memo[(sigma, sigma2)] = out
    return out


def _collapse(pair: Pair, coeffs: dict, decomp) -> dict:
    """Check that ``coeffs`` is constant on each class of ``decomp`` (within
    the window) and return the class coefficients."""
    ring = pair.ring
    out = {}
    for cid, members in decomp.classes.items():
        vals = {coeffs.get(a, Fraction(0)) for a in members}
        if len(vals) > 1:
            a0 = members[0]
            bad = next(a for a in members if coeffs.get(a, 0) != coeffs.get(a0, 0))
            raise CentralityViolation(
                f"coefficients differ on {cid}",
                {"class": cid, "objects": [ring.label(a0), ring.label(bad)],
                 "values": [fmt(coeffs.get(a0, Fraction(0))), fmt(coeffs.get(bad, Fraction(0)))]})
        v = vals.pop()
        if v:
            out[cid] = v
    return out


@dataclass
class ClassProduct:
    coeffs: dict  # double class id -> Fraction
    exact: bool  # every right class of tau and left class of tau2 enumerated
    support_complete: bool  # no other double class can carry a coefficient


def double_class_product(pair: Pair, tau: str, tau2: str) -> ClassProduct:
    memo = pair._cache.setdefault("dcp", {})
    if (tau, tau2) in memo:
        return memo[(tau, tau2)]
    total = {}
    for s in pair.right_in(tau):
        for t in pair.left_in(tau2):
            for d, c in class_product(pair, s, t).items():
                total[d] = total.get(d, Fraction(0)) + c
    exact = pair.complete(tau) and pair.complete(tau2)
    try:
        coeffs = _collapse(pair, total, pair.double)
    except CentralityViolation as e:
        if exact:
            raise
        raise HorizonExceeded(f"{tau} * {tau2}: classes leak past the horizon ({e})") from None
    res = ClassProduct(coeffs, exact, exact and pair.all_doubles_visible())
    memo[(tau, tau2)] = res
    return res


def involution_class(pair: Pair, tau: str) -> str:
    return pair.conj_class(tau)


# ---------------------------------------------------------------------------
# structure table


@dataclass
class StructureTable:
    classes: list
    N: dict = field(default_factory=dict)  # (t, t2) -> {t3: Fraction}
    exact: dict = field(default_factory=dict)
    support_complete: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    unresolved: list = field(default_factory=list)  # pairs whose classes leak past the horizon

    def entry(self, t, t2, t3) -> Fraction:
        return self.N[(t, t2)].get(t3, Fraction(0))

    def as_dict(self):
        rows = []
        for (t, t2), row in sorted(self.N.items()):
            rows.append({"left": t, "right": t2,
                         "product": {k: fmt(v) for k, v in sorted(row.items())},
                         "exact": self.exact[(t, t2)],
                         "support_complete": self.support_complete[(t, t2)]})
        return {"classes": self.classes, "entries": rows, "checks": self.checks,
                "unresolved": self.unresolved}


def structure_table(pair: Pair, classes=None, threads: int = 1) -> StructureTable:
    classes = list(pair.double.classes) if classes is None else list(classes)
    T = StructureTable(classes)
    jobs = [(t, t2) for t in classes for t2 in classes]
    for side in ("double", "left", "right"):  # fill the coset caches before fanning out
        pair.classes(side)
    def run(k):
        try:
            return double_class_product(pair, *k)
        except HorizonExceeded:
            return None

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            done = list(ex.map(run, jobs))
    else:
        done = [run(k) for k in jobs]
    for (t, t2), r in zip(jobs, done):
        if r is None:
            T.N[(t, t2)], T.exact[(t, t2)], T.support_complete[(t, t2)] = {}, False, False
            T.unresolved.append([t, t2])
            continue
        T.N[(t, t2)] = r.coeffs
        T.exact[(t, t2)] = r.exact
        T.support_complete[(t, t2)] = r.support_complete
    T.checks = _table_checks(pair, T)
    return T


def _table_checks(pair: Pair, T: StructureTable) -> dict:
    one = pair.unit_class()
    bad = {"unit": [], "involution": [], "associativity": []}
    cls = T.classes
    for t in cls:
        for side in ((one, t), (t, one)):
            if side in T.N and T.exact[side] and T.N[side] != {t: Fraction(1)}:
                bad["unit"].append(list(side))
    bar = {}
    for t in cls:
        try:
            bar[t] = pair.conj_class(t)
        except HorizonExceeded:
            pass
    for (t, t2), row in T.N.items():
        if not (T.exact[(t, t2)] and t in bar and t2 in bar):
            continue
        k = (bar[t2], bar[t])
        if k not in T.N or not T.exact[k]:
            continue
        for t3, v in row.items():
            if t3 in bar and T.entry(*k, bar[t3]) != v:
                bad["involution"].append([t, t2, t3])
    # associativity only where every intermediate sum is known to be complete
    full = [t for t in cls if all(T.support_complete.get((t, x), False) and
                                  T.support_complete.get((x, t), False) for x in cls)]
    for a in full:
        for b in full:
            for c in full:
                lhs, rhs = {}, {}
                for r, v in T.N[(a, b)].items():
                    for s, u in T.N.get((r, c), {}).items():
                        lhs[s] = lhs.get(s, 0) + v * u
                for r, v in T.N[(b, c)].items():
                    for s, u in T.N.get((a, r), {}).items():
                        rhs[s] = rhs.get(s, 0) + v * u
                if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                    bad["associativity"].append([a, b, c])
    return {k: {"passed": not v, "failures": v[:10]} for k, v in bad.items()}


# ---------------------------------------------------------------------------
# measures and states


def mu(pair: Pair, sigma: str) -> Fraction:
    """Invariant measure of a right class; checked against every member."""
    R = pair.right
    v = mass(pair, R.representative[sigma])
    for a in R.classes[sigma]:
        if mass(pair, a) != v:
            raise CentralityViolation(f"mu is not constant on {sigma}", {"class": sigma})
    return v


def inner_product(pair: Pair, sigma: str, sigma2: str) -> Fraction:
    return mu(pair, sigma) if sigma == sigma2 else Fraction(0)


def omega(pair: Pair, x: dict) -> Fraction:
    """Canonical state: the coefficient of the unit class."""
    return Fraction(x.get(pair.unit_class(), 0))


def multiply(pair: Pair, x: dict, y: dict) -> dict:
    """Product of two central elements given as class -> coefficient."""
    out = {}
    for t, a in x.items():
        for t2, b in y.items():
            for t3, c in double_class_product(pair, t, t2).coeffs.items():
                out[t3] = out.get(t3, Fraction(0)) + a * b * c
    return {k: v for k, v in out.items() if v}


def sharp(pair: Pair, x: dict) -> dict:
    """x -> x^#: conjugate classes, conjugate (real) coefficients."""
    return {pair.conj_class(t): v for t, v in x.items()}


# ---------------------------------------------------------------------------
# modular element


@dataclass
class NablaValue:
    value: Fraction
    left_sum: Fraction
    right_sum: Fraction
    L: int
    R: int
    exact: bool
    regime: str = "kac-certified"


def nabla(pair: Pair, tau: str) -> NablaValue:
    """Left over right weighted class counts of tau (unimodular rings only)."""
    ring = pair.ring
    if not ring.kac:
        raise RegimeUnavailable("the modular element needs a unimodular (Kac) ring")
    Ld, Rd = pair.left, pair.right
    lt = Fraction(0)
    ls = pair.left_in(tau)
    for cid in ls:
        d = Ld.representative[cid]
        lt += ring.qdim(d) ** 2 / kappa(pair, d, ring.conj(d))
    rt = Fraction(0)
    rs = pair.right_in(tau)
    for cid in rs:
        e = Rd.representative[cid]
        rt += ring.qdim(e) ** 2 / kappa_self(pair, e)
    return NablaValue(lt / rt, lt, rt, len(ls), len(rs), pair.complete(tau))


def nabla_all(pair: Pair, only_complete=True) -> dict:
    out = {}
    for t in pair.double.classes:
        if only_complete and not pair.complete(t):
            continue
        out[t] = nabla(pair, t).value
    return out


def verify_kms(pair: Pair, nab: dict | None = None, classes=None) -> dict:
    """N[t, t2 -> 1] = nabla(t)^-1 N[t2, t -> 1] on every complete pair."""
    nab = nabla_all(pair) if nab is None else nab
    one = pair.unit_class()
    classes = [t for t in (classes or nab) if t in nab]
    fails, checked = [], 0
    for t in classes:
        for t2 in classes:
            p, q = double_class_product(pair, t, t2), double_class_product(pair, t2, t)
            if not (p.exact and q.exact):
                continue
            checked += 1
            lhs = p.coeffs.get(one, Fraction(0))
            rhs = q.coeffs.get(one, Fraction(0)) / nab[t]
            if lhs != rhs:
                fails.append({"tau": t, "tau2": t2, "lhs": fmt(lhs), "rhs": fmt(rhs)})
    return {"passed": not fails, "checked": checked, "failures": fails}


def verify_grouplike_nabla(pair: Pair, g: int | None = None, nab: dict | None = None) -> dict:
    """nabla[d] = nabla[a] nabla[b] whenever d is a subobject of a (x) b."""
    ring = pair.ring
    g = pair.g if g is None else g
    nab = nabla_all(pair) if nab is None else nab
    D = pair.double.class_of
    fails, checked, skipped = [], 0, 0
    objs = ring.objects_up_to(g)
    for a in objs:
        for b in objs:
            if ring.grade(a) + ring.grade(b) > pair.g:
                continue
            ta, tb = D[a], D[b]
            for d, _ in ring.fuse(a, b):
                td = D.get(d)
                if td is None or not all(t in nab for t in (ta, tb, td)):
                    skipped += 1
                    continue
                checked += 1
                if nab[td] != nab[ta] * nab[tb]:
                    fails.append({"a": ring.label(a), "b": ring.label(b), "d": ring.label(d),
                                  "values": [fmt(nab[ta]), fmt(nab[tb]), fmt(nab[td])]})
    return {"passed": not fails, "checked": checked, "skipped": skipped, "failures": fails[:20]}


# ---------------------------------------------------------------------------
# Hecke operators


@dataclass
class OperatorMatrix:
    tau: str
    index: list  # right class ids
    M: list  # M[r][c] = coefficient of p_r in p_c * p_tau
    gram: list
    exact: bool

    def onb(self) -> np.ndarray:
        """Entries in the orthonormal basis p_r / sqrt(gram_r)."""
        n = len(self.index)
        A = np.zeros((n, n))
        for r in range(n):
            for c in range(n):
                if self.M[r][c]:
                    A[r, c] = float(self.M[r][c]) * math.sqrt(self.gram[r] / self.gram[c])
        return A

    def as_dict(self):
        return {"tau": self.tau, "index": self.index, "exact": self.exact,
                "gram": [fmt(x) for x in self.gram],
                "matrix": [[fmt(x) for x in row] for row in self.M]}


def hecke_operator_matrix(pair: Pair, tau: str) -> OperatorMatrix:
    """Right convolution by p_tau on the right class projections of the window."""
    R = pair.right
    idx = list(R.classes)
    pos = {c: i for i, c in enumerate(idx)}
    n = len(idx)
    M = [[Fraction(0)] * n for _ in range(n)]
    for c in idx:
        total = {}
        for t in pair.left_in(tau):
            for d, v in class_product(pair, c, t).items():
                total[d] = total.get(d, Fraction(0)) + v
        try:
            col = _collapse(pair, total, R)
        except CentralityViolation as e:
            if pair.complete(tau):
                raise
            raise HorizonExceeded(f"operator for {tau}: left classes leak past the horizon ({e})") from None
        for r, v in col.items():
            M[pos[r]][pos[c]] = v
    gram = [mu(pair, c) for c in idx]
    return OperatorMatrix(tau, idx, M, gram, pair.complete(tau))


def operator_norm_estimate(op: OperatorMatrix, tol=1e-9, max_iter=10000, seed=0):
    """(lower, upper): power iteration on A^T A for the largest singular
    value of the finite section, and the Schur test bound."""
    A = op.onb()
    if A.size == 0:
        return 0.0, 0.0
    rng = np.random.default_rng(seed)
    x = rng.random(A.shape[1]) + 0.5
    x /= np.linalg.norm(x)
    lam = 0.0
    B = A.T @ A
    for _ in range(max_iter):
        y = B @ x
        ny = np.linalg.norm(y)
        if ny == 0:
            break
        new = float(x @ y)
        x = y / ny
        if abs(new - lam) <= tol * max(1.0, abs(new)):
            lam = new
            break
        lam = new
    lower = math.sqrt(max(lam, 0.0))
    absA = np.abs(A)
    upper = math.sqrt(float(absA.sum(axis=1).max()) * float(absA.sum(axis=0).max()))
    return lower, max(upper, lower)


def verify_adjoint(pair: Pair, tau: str) -> dict:
    """gram_r M(tau)[r][c] == gram_c M(conj tau)[c][r] on every entry."""
    A = hecke_operator_matrix(pair, tau)
    B = hecke_operator_matrix(pair, pair.conj_class(tau))
    fails = []
    n = len(A.index)
    for r in range(n):
        for c in range(n):
            lhs = A.gram[r] * A.M[r][c]
            rhs = A.gram[c] * B.M[c][r]
            if lhs != rhs:
                fails.append({"row": A.index[r], "col": A.index[c], "lhs": fmt(lhs), "rhs": fmt(rhs)})
    return {"passed": not fails, "tau": tau, "tau_bar": B.tau, "size": n,
            "exact": A.exact and B.exact, "failures": fails[:20]}
