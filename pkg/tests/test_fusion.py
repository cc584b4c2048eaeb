import copy
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import cycle_name, perm_group, su2_fusion
from qhecke.constructors import (GroupTable, InvalidTable, SU2Dual, ZRing, build_free_product,
                                 build_pointed_group, build_product, build_rep_ring,
                                 build_restricted_product, cyclic_group, dihedral_group, dual_q8,
                                 dual_s3, dual_z2, ring_from_dict, ring_to_dict, symmetric_group)
from qhecke.constructors.rep import RingFormatError, RingValidationError
from qhecke.fusion import HorizonExceeded, UnknownObject, fmt, frac, validate_ring


def test_frac_parsing_and_format():
    assert frac("6/4") == Fraction(3, 2)
    assert frac("2") == 2
    assert fmt(Fraction(4, 2)) == "2/1"
    with pytest.raises(ValueError):
        frac("1/0x")


def test_symmetric_group_matches_brute_force():
    els, mul = perm_group(3)
    t = symmetric_group(3)
    for a in els:
        for b in els:
            assert t(cycle_name(a), cycle_name(b)) == cycle_name(mul[a][b])
    assert len(t.conjugacy_classes()) == 3


def test_group_tables():
    assert [len(c) for c in dihedral_group(4).conjugacy_classes()] == [1, 2, 1, 2, 2]
    assert len(cyclic_group(5).conjugacy_classes()) == 5
    t = symmetric_group(3)
    assert GroupTable.from_dict(json.loads(json.dumps(t.to_dict()))).mult == t.mult


def test_bad_group_table():
    with pytest.raises(InvalidTable, match="associative"):
        GroupTable("bad", ["e", "a", "b"], {
            "e": {"e": "e", "a": "a", "b": "b"},
            "a": {"e": "a", "a": "a", "b": "e"},
            "b": {"e": "b", "a": "e", "b": "a"},
        })


@pytest.mark.parametrize("ring", [
    build_pointed_group(symmetric_group(3)), build_pointed_group(dihedral_group(4)),
    dual_s3(), dual_z2(), dual_q8(), build_product(dual_s3(), dual_s3()),
], ids=lambda r: r.name)
def test_finite_rings_validate(ring):
    rep = validate_ring(ring, 0)
    assert rep.passed, rep.as_dict(ring)


@pytest.mark.parametrize("ring,g", [
    (SU2Dual(), 12), (ZRing(), 12),
    (build_restricted_product(dual_s3(), dual_z2()), 6),
    (build_free_product(dual_s3(), ZRing()), 6),
    (build_free_product(SU2Dual(), ZRing()), 6),
], ids=lambda x: getattr(x, "name", str(x)))
def test_infinite_rings_validate(ring, g):
    assert validate_ring(ring, g).passed


def test_su2_matches_weight_oracle():
    S = SU2Dual()
    for a in range(9):
        for b in range(9):
            assert dict(S.fuse(a, b)) == dict(su2_fusion(a, b))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7))
def test_su2_associative_and_frobenius(a, b, c):
    S = SU2Dual()
    assert S.fuse_many(a, b, c) == S.fuse_many(a, S.conj(S.conj(b)), c)
    left = {}
    for x, m in S.fuse(a, b):
        for y, n in S.fuse(x, c):
            left[y] = left.get(y, 0) + m * n
    right = {}
    for x, m in S.fuse(b, c):
        for y, n in S.fuse(a, x):
            right[y] = right.get(y, 0) + m * n
    assert left == right
    for x, m in S.fuse(a, b):
        assert S.mult(b, S.conj(a), x) == m


def test_character_table_dual_s3():
    # dims squared sum to |S3| and v (x) v = 1 + sgn + v
    R = dual_s3()
    assert sum(R.dim(a) ** 2 for a in R.objects_up_to(0)) == 6
    v = R.by_label("v", 0)
    assert sorted(R.label(x) for x, _ in R.fuse(v, v)) == ["1", "sgn", "v"]


def test_dual_q8_table():
    Q = dual_q8()
    assert sum(Q.dim(a) ** 2 for a in Q.objects_up_to(0)) == 8
    v = Q.by_label("v", 0)
    assert sorted(Q.label(x) for x, _ in Q.fuse(v, v)) == ["1", "a", "b", "c"]


def test_unknown_object():
    with pytest.raises(UnknownObject):
        SU2Dual().fuse(-1, 2)
    with pytest.raises(UnknownObject):
        dual_s3().by_label("w", 0)


# --- planted defects --------------------------------------------------------

def _s3_doc():
    return ring_to_dict(dual_s3())


def _entry(doc, a, b):
    return next(e for e in doc["fusion"] if e["left"] == a and e["right"] == b)


def test_planted_frobenius_defect():
    doc = _s3_doc()
    _entry(doc, "sgn", "v")["decomp"] = [["v", 1]]
    _entry(doc, "v", "v")["decomp"] = [["1", 1], ["v", 1], ["sgn", 1]]
    # break v (x) sgn only: qdim still balances but Frobenius does not
    _entry(doc, "v", "sgn")["decomp"] = [["sgn", 1], ["1", 1]]
    ring = ring_from_dict(doc, validate=False)
    rep = validate_ring(ring, 0)
    bad = {a.name: a.witness for a in rep.axioms if not a.passed}
    assert "frobenius" in bad and bad["frobenius"] is not None
    with pytest.raises(RingValidationError):
        ring_from_dict(doc)


def test_planted_multiplicity_defect():
    doc = _s3_doc()
    _entry(doc, "v", "v")["decomp"] = [["1", 1], ["sgn", 1], ["sgn", 1]]
    ring = ring_from_dict(doc, validate=False)
    rep = validate_ring(ring, 0)
    failed = {a.name for a in rep.axioms if not a.passed}
    assert "qdim-homomorphism" in failed
    assert rep.as_dict(ring)["axioms"]["qdim-homomorphism"]["witness"] == ["v", "v"]


def test_planted_qdim_defect():
    doc = _s3_doc()
    next(o for o in doc["objects"] if o["id"] == "v")["qdim"] = "3/1"
    rep = validate_ring(ring_from_dict(doc, validate=False), 0)
    assert not rep.passed


def test_ring_format_diagnostics():
    doc = _s3_doc()
    bad = copy.deepcopy(doc)
    bad["objects"][1]["qdim"] = "1/x"
    with pytest.raises(RingFormatError, match=r"objects\[1\]\.qdim"):
        ring_from_dict(bad)
    bad = copy.deepcopy(doc)
    bad["fusion"][3]["decomp"][0][0] = "zz"
    with pytest.raises(RingFormatError, match=r"fusion\[3\]\.decomp\[0\]"):
        ring_from_dict(bad)
    bad = copy.deepcopy(doc)
    del bad["fusion"][0]
    with pytest.raises(RingFormatError, match="incomplete"):
        ring_from_dict(bad)
    with pytest.raises(RingFormatError, match="format"):
        ring_from_dict({"format": "other"})


def test_round_trip_rep_ring(tmp_path):
    for ring in (dual_s3(), dual_q8(), build_pointed_group(dihedral_group(4)),
                 build_product(dual_s3(), dual_z2())):
        p = tmp_path / "r.json"
        p.write_text(json.dumps(ring_to_dict(ring)))
        back = build_rep_ring(str(p))
        objs = ring.objects_up_to(0)
        assert [ring.label(a) for a in objs] == [back.label(a) for a in back.objects_up_to(0)]
        for a in objs:
            ba = back.by_label(ring.label(a), 0)
            assert back.dim(ba) == ring.dim(a) and back.qdim(ba) == ring.qdim(a)
            for b in objs:
                bb = back.by_label(ring.label(b), 0)
                assert [(ring.label(x), m) for x, m in ring.fuse(a, b)] == \
                       [(back.label(x), m) for x, m in back.fuse(ba, bb)]


def test_hnn_grade_cap():
    from qhecke.constructors import build_hnn_pair, profinite_recipe
    r, _ = build_hnn_pair(profinite_recipe())
    r.max_layers = 2
    with pytest.raises(HorizonExceeded):
        r.objects_up_to(5)
