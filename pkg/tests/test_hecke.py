from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import classical_operator, classical_structure, cycle_name, perm_group
from qhecke.constructors import (SU2Dual, ZRing, build_hnn_pair, build_pointed_group, dihedral_group,
                                 dual_s3, hnn_closed_forms, multiples, profinite_recipe, so3_in_su2,
                                 symmetric_group)
from qhecke.cosets import Pair, close_subgroup, trivial_subgroup
from qhecke.hecke import (RegimeUnavailable, double_class_product, hecke_operator_matrix, multiply,
                          mu, nabla, nabla_all, omega, operator_norm_estimate, sharp, structure_table,
                          verify_adjoint, verify_grouplike_nabla, verify_kms)


def _d4_oracle():
    """D4 as permutations of square vertices, named through r1 and s."""
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    mul = lambda a, b: tuple(a[b[i]] for i in range(4))
    t = dihedral_group(4)
    names = {(0, 1, 2, 3): "e"}
    frontier = [((0, 1, 2, 3), "e")]
    while frontier:
        p, n = frontier.pop()
        for g, gn in ((r, "r1"), (s, "s")):
            q = mul(p, g)
            if q not in names:
                names[q] = t(n, gn)
                frontier.append((q, names[q]))
    els = list(names)
    table = {a: {b: mul(a, b) for b in els} for a in els}
    return els, table, names, t


def _s_oracle(n):
    els, mul = perm_group(n)
    return els, mul, {p: cycle_name(p) for p in els}, symmetric_group(n)


def _setup(oracle, seed_names):
    els, mul, names, t = oracle
    ring = build_pointed_group(t)
    P = Pair(close_subgroup(ring, seed_names, 0), 0)
    H = [x for x in els if names[x] in P.sub.members]
    return els, mul, names, P, H


CASES = {
    "S3/(12)": (lambda: _s_oracle(3), ["(12)"]),
    "D4/s": (_d4_oracle, ["s"]),
    "S4/S3": (lambda: _s_oracle(4), ["(12)", "(23)"]),
}


@pytest.mark.parametrize("case", list(CASES))
def test_structure_constants_match_classical_convolution(case):
    make, seeds = CASES[case]
    els, mul, names, P, H = _setup(make(), seeds)
    D, N = classical_structure(els, mul, H)
    cid = {}
    for k, members in P.double.classes.items():
        s = frozenset(x for x in els if names[x] in members)
        cid[k] = D.index(s)
    T = structure_table(P)
    assert all(c["passed"] for c in T.checks.values())
    assert not T.unresolved
    for (t, t2), row in T.N.items():
        expect = {k: v for k, v in N[(cid[t], cid[t2])].items()}
        assert {cid[k]: v for k, v in row.items()} == expect
        assert T.exact[(t, t2)] and T.support_complete[(t, t2)]


@pytest.mark.parametrize("case", list(CASES))
def test_operator_matrix_matches_classical(case):
    make, seeds = CASES[case]
    els, mul, names, P, H = _setup(make(), seeds)
    for tau, members in P.double.classes.items():
        C, M = classical_operator(els, mul, H, {x for x in els if names[x] in members})
        op = hecke_operator_matrix(P, tau)
        pos = [C.index(frozenset(x for x in els if names[x] in P.right.classes[c])) for c in op.index]
        for i, r in enumerate(pos):
            for j, c in enumerate(pos):
                assert op.M[i][j] == M[r][c]
        assert verify_adjoint(P, tau)["passed"]


def test_s3_operator_norm():
    _, _, _, P, _ = _setup(_s_oracle(3), ["(12)"])
    op = hecke_operator_matrix(P, "D:(23)")
    lo, hi = operator_norm_estimate(op)
    assert abs(lo - 2.0) <= 1e-9 and abs(hi - 2.0) <= 1e-9
    A = op.onb()
    assert np.allclose(A, A.T)
    assert abs(np.linalg.svd(A, compute_uv=False)[0] - lo) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=3, max_size=3))
def test_state_is_positive(coeffs):
    P = _setup(_d4_oracle(), ["s"])[3]
    cls = list(P.double.classes)
    x = {t: c for t, c in zip(cls, coeffs) if c}
    val = omega(P, multiply(P, sharp(P, x), x))
    # omega(x# x) = sum |c_t|^2 mu-weighted: strictly positive unless x = 0
    assert val >= 0 and (val > 0) == bool(x)


def test_omega_and_mu_on_s3():
    P = _setup(_s_oracle(3), ["(12)"])[3]
    assert omega(P, {"D:e": Fraction(3)}) == 3
    assert all(mu(P, s) == 1 for s in P.right.classes)
    assert omega(P, multiply(P, {"D:(23)": 1}, {"D:(23)": 1})) == 2


def test_su2_so3_table_is_z2():
    P = Pair(so3_in_su2(SU2Dual()), 20)
    T = structure_table(P, threads=2)
    assert T.N[("D:1", "D:1")] == {"D:0": 1}
    assert T.N[("D:0", "D:1")] == {"D:1": 1}
    assert all(c["passed"] for c in T.checks.values())
    assert nabla_all(P) == {"D:0": 1, "D:1": 1}
    assert verify_kms(P)["passed"]


def test_z_mod_m_table_is_cyclic():
    P = Pair(multiples(ZRing(), 3), 9)
    T = structure_table(P)
    ids = sorted(P.double.classes)
    for a, b in product(ids, ids):
        assert len(T.N[(a, b)]) == 1 and set(T.N[(a, b)].values()) == {1}


def test_non_kac_ring_has_no_modular_element():
    R = dual_s3()
    R.kac = False
    P = Pair(trivial_subgroup(R), 0)
    with pytest.raises(RegimeUnavailable):
        nabla(P, P.unit_class())


def _hnn(g):
    r, sub = build_hnn_pair(profinite_recipe())
    return Pair(sub, g)


def test_hnn_modular_element_generic_class():
    P = _hnn(2)
    v = nabla(P, "D:w")
    assert (v.L, v.R, v.value) == (3, 2, 3)
    assert nabla(P, "D:w^-1").value == Fraction(1, 3)
    cf = hnn_closed_forms(profinite_recipe())
    assert cf["nabla_w"] == v.value and cf["Ltilde_w"] == 6
    assert verify_kms(P)["passed"]
    assert verify_adjoint(P, "D:w")["passed"]
    assert verify_grouplike_nabla(P)["passed"]


def test_hnn_second_power():
    P = _hnn(6)
    v = nabla(P, "D:w w")
    assert (v.L, v.R, v.value) == (9, 4, 9)
    res = verify_grouplike_nabla(P, g=3)
    assert res["passed"] and res["checked"] > 1000


def test_hnn_leaking_class_is_flagged():
    P = _hnn(2)
    # the product lives beyond the window: reported inexact, never as a value
    r = double_class_product(P, "D:w w", "D:w w")
    assert not r.exact and not r.support_complete
    T = structure_table(P)
    assert ["D:w w", "D:w^-1"] in T.unresolved
    assert not T.exact[("D:w w", "D:w w")]
