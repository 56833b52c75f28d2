import random
from fractions import Fraction

import pytest

from nearcut import (
    AugmentInstance,
    InfeasibleError,
    InputError,
    Multigraph,
    deficient_family,
    implemented_ratio_bound,
    is_k_edge_connected,
    level_family,
    mask_from_nodes,
    near_min_cuts_cover,
)
from nearcut.augment import _stage_plan
from nearcut.harness import exact_augment, make_augment_corpus

from conftest import c4, g_from


def m(*nodes):
    return mask_from_nodes(nodes)


def c4_chords_instance(k=4):
    edges = [(0, 1, 0, 1, 0, 1), (1, 2, 0, 1, 0, 1), (2, 3, 0, 1, 0, 1),
             (3, 0, 0, 1, 0, 1),
             (0, 2, 1, max(k - 2, 1), 0, 0), (1, 3, 1, max(k - 2, 1), 0, 0)]
    return AugmentInstance(Multigraph.from_edges(4, edges), k)


# ---------------------------------------------------------------------------
# families


def test_deficient_family_c4_k4():
    fam = deficient_family(c4(), 4)
    assert set(fam.members) == {m(1), m(2), m(3), m(1, 2), m(2, 3), m(1, 2, 3)}


def test_deficient_family_already_connected():
    g = g_from(4, [(0, 1, 0, 2), (1, 2, 0, 2), (2, 3, 0, 2), (3, 0, 0, 2)])
    assert len(deficient_family(g, 4)) == 0


def test_deficient_family_chord_capacity_two():
    g = g_from(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2, 0, 2)])
    fam = deficient_family(g, 4)
    # the capacity-2 chord lifts every cut it crosses to 4; {1} and {3} stay at 2
    assert set(fam.members) == {m(1), m(3)}


def test_level_family_c4():
    fam = level_family(c4(), 2)
    assert len(fam) == 6
    # at level 3 the only {3,4}-valued cut of the 4-cycle is the opposite
    # pair {1,3}, whose cut value is 4
    fam3 = level_family(c4(), 3)
    assert set(fam3.members) == {m(1, 3)}
    only3 = level_family(c4(), 3, include_plus_one=False)
    assert len(only3) == 0


def test_disconnected_base_rejected():
    edges = [(0, 1, 0, 1, 0, 1), (2, 3, 0, 1, 0, 1), (0, 2, 1, 2, 0, 0)]
    inst = AugmentInstance(Multigraph.from_edges(4, edges), 2)
    with pytest.raises(InputError):
        near_min_cuts_cover(inst)


# ---------------------------------------------------------------------------
# schedule and bound


def test_stage_plan_parities():
    assert _stage_plan(2, 4) == [(2, "pair")]
    assert _stage_plan(3, 4) == [(3, "single")]
    assert _stage_plan(2, 5) == [(2, "pair"), (4, "single")]
    assert _stage_plan(3, 5) == [(3, "single"), (4, "single")]
    assert _stage_plan(3, 7) == [(3, "single"), (4, "pair"), (6, "single")]
    assert _stage_plan(4, 4) == []


def test_implemented_ratio_bound_defaults():
    assert implemented_ratio_bound(2, 4) == 2
    assert implemented_ratio_bound(3, 4) == 2
    assert implemented_ratio_bound(3, 5) == 4
    assert implemented_ratio_bound(2, 6) == 4          # k - lam0, both even
    assert implemented_ratio_bound(2, 5) == 4          # k - lam0 + 1, mixed
    assert implemented_ratio_bound(1, 5) == 6          # k - lam0 + 2, both odd
    assert implemented_ratio_bound(3, 4, g_single=Fraction(3, 2)) == Fraction(3, 2)


def test_bound_matches_parity_formula():
    for lam0 in range(1, 5):
        for k in range(lam0 + 1, lam0 + 5):
            bound = implemented_ratio_bound(lam0, k)
            if lam0 % 2 == 0 and k % 2 == 0:
                assert bound == k - lam0
            elif lam0 % 2 != k % 2:
                assert bound == k - lam0 + 1
            else:
                assert bound == k - lam0 + 2


# ---------------------------------------------------------------------------
# the algorithm


def test_cover_c4_to_four():
    inst = c4_chords_instance(4)
    res = near_min_cuts_cover(inst)
    assert res.chosen == (4, 5)
    assert res.cost == 2
    assert res.bound == 2
    final = inst.current_graph(set(res.chosen))
    assert is_k_edge_connected(final, 4, weighted=True)
    oracle = exact_augment(inst)
    assert oracle.cost == 2
    assert Fraction(res.cost, oracle.cost) <= res.bound


def test_nothing_to_do_when_lam0_at_target():
    inst = c4_chords_instance(2)
    res = near_min_cuts_cover(inst)
    assert res.chosen == () and res.cost == 0


def test_stage_costs_sum_to_total():
    rng = random.Random(41)
    for _, inst in make_augment_corpus(12, 99):
        res = near_min_cuts_cover(inst)
        assert sum(s.cost for s in res.stages) == res.cost
        assert res.bound == implemented_ratio_bound(res.lam0, inst.k)


def test_connectivity_reaches_each_stage_target():
    from nearcut import min_cut_value
    for _, inst in make_augment_corpus(8, 7):
        res = near_min_cuts_cover(inst)
        chosen: set = set()
        for log in res.stages:
            chosen.update(log.added)
            reach = min(log.level + (2 if log.kind == "pair" else 1), inst.k)
            conn = min_cut_value(inst.current_graph(chosen), weighted=True)
            assert conn >= reach
        final = inst.current_graph(set(res.chosen))
        assert is_k_edge_connected(final, inst.k, weighted=True)


def test_infeasible_instance_reports_witness():
    # base path 0-1-2, lone candidate 0-1 cannot fix the cut {2}
    edges = [(0, 1, 0, 1, 0, 1), (1, 2, 0, 1, 0, 1), (0, 1, 1, 1, 0, 0)]
    inst = AugmentInstance(Multigraph.from_edges(3, edges), 2)
    with pytest.raises(InfeasibleError) as err:
        near_min_cuts_cover(inst)
    assert err.value.witness == m(2)


def test_validation_errors():
    # non-unit base capacity
    edges = [(0, 1, 0, 2, 0, 1), (1, 2, 0, 1, 0, 1), (0, 2, 1, 1, 0, 0)]
    inst = AugmentInstance(Multigraph.from_edges(3, edges), 2)
    with pytest.raises(InputError):
        near_min_cuts_cover(inst)
    # candidate capacity below k - lam0
    edges = [(0, 1, 0, 1, 0, 1), (1, 2, 0, 1, 0, 1), (2, 0, 0, 1, 0, 1),
             (0, 2, 1, 1, 0, 0)]
    inst = AugmentInstance(Multigraph.from_edges(3, edges), 4)
    with pytest.raises(InputError):
        near_min_cuts_cover(inst)
    with pytest.raises(InputError):
        AugmentInstance(c4(), 2)  # no base edges at all


# ---------------------------------------------------------------------------
# oracle


def test_single_level_solver_slot_changes_bound():
    edges = [(0, 1, 0, 1, 0, 1), (1, 2, 0, 1, 0, 1),
             (0, 2, 5, 1, 0, 0), (0, 1, 2, 1, 0, 0), (1, 2, 3, 1, 0, 0)]
    inst = AugmentInstance(Multigraph.from_edges(3, edges), 2)
    pd = near_min_cuts_cover(inst, single_solver="pd2")
    ex = near_min_cuts_cover(inst, single_solver="exact")
    assert pd.bound == Fraction(2) and ex.bound == Fraction(1)
    assert ex.cost <= pd.cost
    assert exact_augment(inst).cost == ex.cost


def test_exact_augment_examples():
    inst = c4_chords_instance(4)
    assert exact_augment(inst).cost == 2
    assert exact_augment(c4_chords_instance(2)).cost == 0
    edges = [(0, 1, 0, 1, 0, 1), (0, 1, 7, 1, 0, 0)]
    inst = AugmentInstance(Multigraph.from_edges(2, edges), 2)
    sol = exact_augment(inst)
    assert sol.chosen == (1,) and sol.cost == 7
