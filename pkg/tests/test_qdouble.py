import random
from fractions import Fraction

import pytest

from oracles import conjugacy_class_count, cycle_name, double_convolution, perm_group
from qhecke.constructors import cyclic_group, dihedral_group, symmetric_group, trivial_group
from qhecke.qdouble import (build_double, hecke_subalgebra, verify_character_identification,
                            verify_endomorphism_correspondence, verify_hopf_axioms)


def _relabel(f, names):
    return {(names[x], names[h]): c for (x, h), c in f.items()}


def test_convolution_matches_oracle_on_s3():
    els, mul = perm_group(3)
    names = {p: cycle_name(p) for p in els}
    D = build_double(symmetric_group(3))
    rnd = random.Random(7)
    keys = [(x, h) for x in els for h in els]
    for _ in range(25):
        f = {k: Fraction(rnd.randint(-3, 3), rnd.randint(1, 4)) for k in rnd.sample(keys, 4)}
        g = {k: Fraction(rnd.randint(-3, 3), rnd.randint(1, 4)) for k in rnd.sample(keys, 4)}
        f = {k: v for k, v in f.items() if v}
        g = {k: v for k, v in g.items() if v}
        want = _relabel(double_convolution(els, mul, f, g), names)
        assert D.convolve(_relabel(f, names), _relabel(g, names)) == want


def test_haar_normalisation():
    D = build_double(symmetric_group(3))
    assert D.phi(D.p_H()) == 1
    assert D.haar_scale == 6


@pytest.mark.parametrize("t", [trivial_group(), cyclic_group(4), symmetric_group(3)],
                         ids=lambda t: t.name)
def test_hopf_axioms(t):
    assert verify_hopf_axioms(build_double(t))["passed"]


def test_hecke_dimension_counts_conjugacy_classes():
    els, mul = perm_group(3)
    expected = conjugacy_class_count(els, mul)
    D = build_double(symmetric_group(3))
    A = hecke_subalgebra(D)
    assert A.dimension == expected == 3
    rep = verify_character_identification(D, A)
    assert rep["passed"] and rep["minimal_idempotents"] == 3


@pytest.mark.parametrize("t,dim", [(trivial_group(), 1), (cyclic_group(4), 4), (symmetric_group(3), 3)],
                         ids=["trivial", "Z4", "S3"])
def test_endomorphism_correspondence(t, dim):
    D = build_double(t)
    A = hecke_subalgebra(D)
    assert A.dimension == dim
    assert verify_endomorphism_correspondence(D, A)["passed"]


def test_d4_double():
    D = build_double(dihedral_group(4))
    A = hecke_subalgebra(D)
    assert A.dimension == 5
    assert verify_character_identification(D, A)["passed"]
