"""Acceptance gate: every criterion at its stated size and tolerance.

All comparisons are exact (integer or rational); there are no numeric
tolerances anywhere.  Each test prints one PASS line with the evidence
counts; a failing criterion fails its test.
"""

import random

from nearcut import (
    EdgeRecord,
    Multigraph,
    flex_connected_by_removal,
    is_flex_connected,
    run_suite,
)

CORPUS = {"graphs": 1000, "n_min": 6, "n_max": 12, "m_factor": 3, "seed": 20260801}


def _report(name, rep, detail=""):
    status = "PASS" if rep["pass"] else "FAIL"
    print(f"CRITERION {name}: {status} - {detail or rep['counts']}")
    if not rep["pass"]:
        print("  first counterexample:", rep["first_counterexample"])
    assert rep["pass"], rep["first_counterexample"]


def test_criterion_01_square_identities():
    rep = run_suite("squares", CORPUS)
    assert rep["counts"]["graphs"] >= 1000
    assert rep["counts"]["pairs_checked"] > 5000
    _report("1 square identities", rep,
            f"{rep['counts']['graphs']} graphs, "
            f"{rep['counts']['pairs_checked']} crossing pairs, exact equality")


def test_criterion_02_case_totality():
    rep = run_suite("classify", CORPUS)
    assert rep["counts"]["graphs"] >= 1000
    assert "Other" not in rep["histogram"]
    _report("2 case totality", rep,
            f"{rep['counts']['pairs_checked']} pairs, histogram {rep['histogram']}")


def test_criterion_03_even_lambda_uncrossable():
    rep = run_suite("uncrossable", dict(CORPUS, graphs=600, seed=20260802))
    assert rep["counts"]["even_lam_checked"] >= 200
    _report("3 even-lambda uncrossable", rep,
            f"{rep['counts']['even_lam_checked']} even-connectivity graphs, "
            f"0 counterexamples")


def test_criterion_04_level2_structure():
    rep = run_suite("c1", {"per_k": 40, "k_values": [1, 2, 3], "n_min": 4,
                           "n_max": 10, "seed": 20260803})
    assert rep["counts"]["graphs"] == 120
    assert rep["counts"]["crossing_pairs"] >= 100
    assert rep["counts"]["odd_k_decompositions"] == 80
    _report("4 level-2 family structure", rep,
            f"{rep['counts']['graphs']} flex graphs, "
            f"{rep['counts']['crossing_pairs']} crossing pairs, "
            f"{rep['counts']['odd_k_decompositions']} verified decompositions")


def test_criterion_05_augmentation_end_to_end():
    from nearcut.harness import make_augment_corpus
    for _, inst in make_augment_corpus(200, 20260806):
        assert len(inst.candidate_ids) <= 20
    rep = run_suite("ratios", {"kind": "augment", "augment_count": 200,
                               "seed": 20260806})
    recs = rep["records"]
    assert len(recs) >= 200
    parities = set()
    for rec in recs:
        lam0, k = rec["lam0"], rec["k"]
        assert 1 <= lam0 <= 4 and k <= lam0 + 4
        parities.add((lam0 % 2, k % 2))
        num, den = rec["bound"]
        gap = k - lam0
        if lam0 % 2 == 0 and k % 2 == 0:
            assert (num, den) == (gap, 1)
        elif lam0 % 2 != k % 2:
            assert (num, den) == (gap + 1, 1)
        else:
            assert (num, den) == (gap + 2, 1)
    assert parities == {(0, 0), (0, 1), (1, 0), (1, 1)}
    _report("5 augmentation vs oracle", rep,
            f"{len(recs)} instances, all four parity mixes, "
            f"ratio <= bound exactly")


def test_criterion_06_flex_end_to_end():
    rep = run_suite("ratios", {"kind": "fgc", "fgc_count": 200, "seed": 20260807})
    recs = rep["records"]
    assert len(recs) >= 200
    seen = set()
    for rec in recs:
        assert 1 <= rec["k"] <= 4 and 0 <= rec["q"] <= 2
        assert rec["m"] <= 22
        assert rec["feasible"]
        seen.add((rec["k"], rec["q"]))
    assert seen == {(k, q) for k in (1, 2, 3, 4) for q in (0, 1, 2)}
    _report("6 flex-connectivity vs oracle", rep,
            f"{len(recs)} instances over k in 1..4, q in 0..2, "
            f"cost within logged guarantees")


def test_criterion_07_forest_property():
    rep = run_suite("forest", {"pairs": 10000, "seed": 20260805})
    assert rep["counts"]["pairs"] == 10000
    _report("7 minimal covers are forests", rep,
            "10000 random family/cover pairs, all acyclic and covering")


def test_criterion_08_unit_cost_bound():
    rep = run_suite("ratios", {"kind": "unit", "unit_count": 60, "seed": 20260808})
    assert rep["counts"]["unit_checked"] >= 60
    _report("8 unit-cost size bound", rep,
            f"{rep['counts']['unit_checked']} instances: phases <= n-1, "
            f"opt >= kn/2, size within kecss + 2q/k")


def test_criterion_09_feasibility_equivalence():
    rng = random.Random(20260809)
    checked = 0
    for trial in range(120):
        n = rng.randint(3, 12) if trial % 8 else 12
        pairs = [(rng.randrange(v), v) for v in range(1, n)]
        for _ in range(rng.randint(0, n)):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                pairs.append((min(u, v), max(u, v)))
        unsafe_budget = 8
        edges = []
        for (u, v) in pairs:
            unsafe = rng.random() < 0.4 and unsafe_budget > 0
            if unsafe:
                unsafe_budget -= 1
            edges.append(EdgeRecord(u, v, 0, 1, unsafe, False))
        g = Multigraph(n, tuple(edges))
        ids = [i for i in range(g.m) if rng.random() < 0.85]
        for k in (1, 2, 3):
            for q in (0, 1, 2):
                a, _ = is_flex_connected(g, ids, k, q)
                b = flex_connected_by_removal(g, ids, k, q)
                assert a == b, (n, ids, k, q)
                checked += 1
    print(f"CRITERION 9 feasibility equivalence: PASS - {checked} "
          f"(graph, subgraph, k, q) combinations, per-cut == removal form")


def test_criterion_10_primal_dual_factor_two():
    rep = run_suite("ratios", {"kind": "pd", "pd_count": 150, "seed": 20260810})
    assert rep["counts"]["pd_checked"] >= 150
    _report("10 primal-dual within 2x optimum", rep,
            f"{rep['counts']['pd_checked']} uncrossable instances, "
            f"cost <= 2 x oracle optimum")
