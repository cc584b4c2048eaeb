from oracles import cycle_name, perm_group
from qhecke.constructors import (SU2Dual, baumslag_solitar_recipe, build_hnn_pair, build_pointed_group,
                                 dual_s3, profinite_recipe, so3_in_su2, symmetric_group)
from qhecke.cosets import Pair, close_subgroup, trivial_subgroup
from qhecke.faithful import (cokernel_support, faithful_sufficient, hnn_faithfulness_witnesses,
                             hnn_theta_domains, is_witness)


def test_s3_witnesses_agree_with_brute_force():
    els, mul = perm_group(3)
    H = [p for p in els if cycle_name(p) in ("e", "(12)")]
    name = {p: cycle_name(p) for p in els}
    r = build_pointed_group(symmetric_group(3))
    P = Pair(close_subgroup(r, ["(12)"], 0), 0)
    for a in els:
        for c in els:
            moved = {mul[mul[a][c]][h] for h in H} != {mul[c][h] for h in H}
            assert is_witness(P, name[a], name[c]) == moved
    rep = faithful_sufficient(P)
    assert rep.status == "certified-faithful" and len(rep.witnesses) == 5


def test_trivial_subgroup_is_faithful():
    rep = faithful_sufficient(Pair(trivial_subgroup(dual_s3()), 0))
    assert rep.status == "certified-faithful"


def test_su2_so3_is_inconclusive():
    # even weights fuse back into their own class: no witness exists
    rep = faithful_sufficient(Pair(so3_in_su2(SU2Dual()), 6))
    assert rep.status == "inconclusive" and rep.missing == ["2", "4", "6"]


def test_profinite_theta_domains():
    r, _ = build_hnn_pair(profinite_recipe())
    dom = hnn_theta_domains(r.r, 5)
    assert dom["intersection"] == ["1"] and dom["intersection_trivial"]
    sizes = [len(dom["chain"][str(k)]) for k in range(1, 6)]
    assert sizes == sorted(sizes, reverse=True)


def test_baumslag_solitar_domains_do_not_shrink():
    r, _ = build_hnn_pair(baumslag_solitar_recipe(2, 2))
    dom = hnn_theta_domains(r.r, 5)
    assert dom["chain"]["1"] == dom["chain"]["5"]
    assert not dom["intersection_trivial"]


def test_hnn_witnesses_are_powers_of_the_stable_letter():
    r, sub = build_hnn_pair(profinite_recipe())
    P = Pair(sub, 4)
    rep = hnn_faithfulness_witnesses(r, P, g=3)
    assert rep.status == "certified-faithful" and not rep.missing
    assert rep.witnesses["v@2"] == "w^-1 w^-1"
    assert rep.witnesses["z@-3"] == "w w w"
    for lab, wit in rep.witnesses.items():
        assert set(wit.split()) <= {"w", "w^-1"}


def test_cokernel_support():
    r = build_pointed_group(symmetric_group(3))
    s = cokernel_support(Pair(close_subgroup(r, ["(12)"], 0), 0))
    assert s["full"] and s["contains_unit"] and s["conj_closed"] and not s["notes"]
    s = cokernel_support(Pair(so3_in_su2(SU2Dual()), 6))
    assert s["full"] and "completion non-discrete" in s["notes"]
