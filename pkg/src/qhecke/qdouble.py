"""The quantum double of a finite group H as a locally compact quantum group
with compact open subgroup H, and its Hecke algebra.

The function algebra is spanned by d[g] (x) u[h]: point masses d[g] on H
times group-algebra elements u[h].  Products are componentwise (pointwise
on the first leg, group law on the second).  Elements are dicts mapping
(g, h) to Fractions.

    coproduct  D(d[g] u[h]) = sum_{xy=g} (d[x] u[h]) (x) (d[y] u[x^-1 h x])
    counit     e(d[g] u[h]) = [g = 1]
    antipode   S(d[x] u[h]) = d[x^-1] u[x^-1 h^-1 x]       (S^2 = id)
    Haar       phi(d[g] u[h]) = c/|H| [h = 1], c fixed by phi(p_H) = 1

where p_H = sum_g d[g] (x) p0 and p0 is the averaging idempotent of u.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import sympy

from .constructors.groups import GroupTable


def _clean(f: dict) -> dict:
    return {k: v for k, v in f.items() if v}


class QuantumDouble:
    def __init__(self, t: GroupTable):
        self.t = t
        self.H = list(t.elements)
        self.e = t.identity
        self.inv = t.inverse
        self.n = len(self.H)
        self.basis = list(product(self.H, self.H))
        self.haar_scale = self._solve_haar_scale()

    # --- structure maps ---------------------------------------------------
    def conjx(self, x, h):
        """x^-1 h x"""
        t = self.t
        return t(t(self.inv[x], h), x)

    def mul(self, f: dict, g: dict) -> dict:
        t = self.t
        out = {}
        for (a, b), c in f.items():
            for (a2, b2), c2 in g.items():
                if a == a2:
                    k = (a, t(b, b2))
                    out[k] = out.get(k, Fraction(0)) + c * c2
        return _clean(out)

    def unit(self) -> dict:
        return {(g, self.e): Fraction(1) for g in self.H}

    def coproduct(self, f: dict) -> dict:
        """Returns {((x, h), (y, h')): coeff}."""
        t = self.t
        out = {}
        for (g, h), c in f.items():
            for x in self.H:
                y = t(self.inv[x], g)
                k = ((x, h), (y, self.conjx(x, h)))
                out[k] = out.get(k, Fraction(0)) + c
        return _clean(out)

    def counit(self, f: dict) -> Fraction:
        return sum((c for (g, _), c in f.items() if g == self.e), Fraction(0))

    def antipode(self, f: dict) -> dict:
        out = {}
        for (x, h), c in f.items():
            k = (self.inv[x], self.conjx(x, self.inv[h]))
            out[k] = out.get(k, Fraction(0)) + c
        return out

    def _phi_raw(self, f: dict) -> Fraction:
        return sum((c for (_, h), c in f.items() if h == self.e), Fraction(0)) / self.n

    def _solve_haar_scale(self) -> Fraction:
        return 1 / self._phi_raw(self.p_H())

    def phi(self, f: dict) -> Fraction:
        return self.haar_scale * self._phi_raw(f)

    def p_H(self) -> dict:
        w = Fraction(1, self.n)
        return {(g, h): w for g in self.H for h in self.H}

    # --- convolution -------------------------------------------------------
    def convolve(self, f: dict, g: dict) -> dict:
        """f * g = sum phi(S^-1(g1) f) g2."""
        out = {}
        for (a, b), c in g.items():
            for x in self.H:
                # g1 = d[x] u[b], g2 = d[x^-1 a] u[x^-1 b x]
                s = self.antipode({(x, b): Fraction(1)})  # S^-1 = S
                w = self.phi(self.mul(s, f))
                if w:
                    k = (self.t(self.inv[x], a), self.conjx(x, b))
                    out[k] = out.get(k, Fraction(0)) + c * w
        return _clean(out)

    # --- linear algebra ---------------------------------------------------
    def vec(self, f: dict) -> list:
        return [f.get(k, Fraction(0)) for k in self.basis]

    def unvec(self, v) -> dict:
        return _clean({k: Fraction(x) for k, x in zip(self.basis, v)})


def _to_sym(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


def _from_sym(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def build_double(t: GroupTable) -> QuantumDouble:
    return QuantumDouble(t)


@dataclass
class HeckeSubalgebra:
    basis: list  # list of element dicts
    dimension: int
    table: list = field(default_factory=list)  # table[i][j] = coordinates of b_i * b_j

    def as_dict(self):
        return {"dimension": self.dimension,
                "table": [[[f"{x.numerator}/{x.denominator}" for x in c] for c in row]
                          for row in self.table]}


def _coords(D: QuantumDouble, basis_mat, f: dict) -> list:
    """Exact coordinates of f in the row basis ``basis_mat``."""
    A = basis_mat.T
    b = _to_sym([D.vec(f)]).T
    sol, params = A.gauss_jordan_solve(b)
    if params.shape[0]:
        raise ValueError("basis is not independent")
    return [_from_sym(x) for x in sol]


def hecke_subalgebra(D: QuantumDouble) -> HeckeSubalgebra:
    """The biinvariant corner p_H * O_c * p_H, by exact row reduction."""
    p = D.p_H()
    imgs = []
    for k in D.basis:
        f = D.convolve(D.convolve(p, {k: Fraction(1)}), p)
        imgs.append(D.vec(f))
    R, pivots = _to_sym(imgs).rref()
    rows = [[_from_sym(x) for x in R.row(i)] for i in range(len(pivots))]
    basis = [D.unvec(r) for r in rows]
    bm = _to_sym(rows)
    table = [[_coords(D, bm, D.convolve(a, b)) for b in basis] for a in basis]
    return HeckeSubalgebra(basis, len(basis), table)


def verify_character_identification(D: QuantumDouble, A: HeckeSubalgebra | None = None) -> dict:
    """Commutative, semisimple, dimension = number of conjugacy classes."""
    A = A or hecke_subalgebra(D)
    n = A.dimension
    commutative = all(A.table[i][j] == A.table[j][i] for i in range(n) for j in range(n))
    # trace form Tr(L_a L_b) of the regular representation
    L = [_to_sym([[A.table[i][j][k] for j in range(n)] for k in range(n)]) for i in range(n)]
    gram = sympy.Matrix(n, n, lambda i, j: (L[i] * L[j]).trace())
    semisimple = gram.det() != 0
    classes = len(D.t.conjugacy_classes())
    # for a commutative semisimple algebra the minimal idempotents number the dimension
    idempotents = n if (commutative and semisimple) else None
    return {"dimension": n, "conjugacy_classes": classes, "commutative": commutative,
            "semisimple": bool(semisimple), "minimal_idempotents": idempotents,
            "haar_scale": f"{D.haar_scale.numerator}/{D.haar_scale.denominator}",
            "passed": commutative and bool(semisimple) and n == classes}


def verify_endomorphism_correspondence(D: QuantumDouble, A: HeckeSubalgebra | None = None) -> dict:
    """T(f): h -> h * f on {h : h * p_H = h}; checks T(f*g) = T(g) T(f) and
    T(f)(p_H) = f on a spanning set of biinvariant f, g."""
    A = A or hecke_subalgebra(D)
    p = D.p_H()
    span = []
    for k in D.basis:
        v = D.convolve({k: Fraction(1)}, p)
        if v:
            span.append(v)
    R, piv = _to_sym([D.vec(v) for v in span]).rref()
    space = [D.unvec([_from_sym(x) for x in R.row(i)]) for i in range(len(piv))]
    anti, inverse, checked = True, True, 0
    for f in A.basis:
        if D.convolve(p, f) != f:
            inverse = False
        for g in A.basis:
            fg = D.convolve(f, g)
            for h in space:
                checked += 1
                if D.convolve(h, fg) != D.convolve(D.convolve(h, f), g):
                    anti = False
    return {"space_dimension": len(space), "checked": checked,
            "antimultiplicative": anti, "inverse": inverse, "passed": anti and inverse}


def verify_hopf_axioms(D: QuantumDouble) -> dict:
    """Coassociativity, counit and antipode laws on every basis element,
    plus the group-like projection identity for p_H."""
    coassoc = counit = antip = True
    one = D.unit()
    for k in D.basis:
        f = {k: Fraction(1)}
        cf = D.coproduct(f)
        left, right = {}, {}
        for (a, b), c in cf.items():
            for (a1, a2), c2 in D.coproduct({a: Fraction(1)}).items():
                key = (a1, a2, b)
                left[key] = left.get(key, 0) + c * c2
            for (b1, b2), c2 in D.coproduct({b: Fraction(1)}).items():
                key = (a, b1, b2)
                right[key] = right.get(key, 0) + c * c2
        coassoc &= _clean(left) == _clean(right)
        lhs, rhs = {}, {}
        for (a, b), c in cf.items():
            lhs[b] = lhs.get(b, 0) + c * D.counit({a: 1})
            rhs[a] = rhs.get(a, 0) + c * D.counit({b: 1})
        counit &= _clean(lhs) == f and _clean(rhs) == f
        acc = {}
        for (a, b), c in cf.items():
            for kk, v in D.mul(D.antipode({a: Fraction(1)}), {b: Fraction(1)}).items():
                acc[kk] = acc.get(kk, 0) + c * v
        eps = D.counit(f)
        antip &= _clean(acc) == _clean({kk: eps * v for kk, v in one.items()})
    p = D.p_H()
    lhs = {}
    for (a, b), c in D.coproduct(p).items():
        for kk, v in D.mul({b: Fraction(1)}, p).items():
            lhs[(a, kk)] = lhs.get((a, kk), 0) + c * v
    pp = {(a, b): c * d for a, c in p.items() for b, d in p.items()}
    grouplike = _clean(lhs) == _clean(pp)
    involutive = all(D.antipode(D.antipode({k: Fraction(1)})) == {k: Fraction(1)} for k in D.basis)
    idem = D.mul(p, p) == p and D.convolve(p, p) == p
    return {"coassociative": coassoc, "counit": counit, "antipode": antip,
            "antipode_involutive": involutive, "grouplike_projection": grouplike,
            "p_H_idempotent": idem, "phi_p_H": str(D.phi(p)),
            "passed": all([coassoc, counit, antip, involutive, grouplike, idem])}
