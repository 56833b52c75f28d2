import random

import pytest

from nearcut import (
    InputError,
    PartShape,
    PreconditionError,
    SetFamily,
    SquareCase,
    build_square,
    classify_square,
    crosses,
    crosses_strongly,
    decompose_F2_odd,
    decompose_plus_cuts,
    enumerate_cuts_at_most,
    family_quotient,
    is_laminar,
    is_symmetric_proper_crossing,
    is_uncrossable,
    mask_from_nodes,
    min_cut_value,
    nodes_from_mask,
    verify_part_shape,
)
from nearcut.cut_structure import QuotientEdge, QuotientGraph
from nearcut.multigraph import cut_value_array

from conftest import c4, canonical_subsets, g_from, k4, random_multigraph


def m(*nodes):
    return mask_from_nodes(nodes)


# ---------------------------------------------------------------------------
# crossing predicates


def test_crossing_examples():
    # {0,1} and {1,2} cross with all four corners non-empty
    assert crosses_strongly(m(0, 1), m(1, 2), 4)
    assert crosses(m(0, 1), m(1, 2), 4)
    # one set inside the other: never strongly crossing, but the weak
    # condition (shared node + uncovered node) still holds
    assert not crosses_strongly(m(0), m(0, 1), 4)
    assert crosses(m(0), m(0, 1), 4)
    # disjoint sets covering everything: neither
    assert not crosses(m(0, 1), m(2, 3), 4)
    assert not crosses_strongly(m(0, 1), m(2, 3), 4)


def test_crossing_rejects_bad_input():
    with pytest.raises(InputError):
        crosses(0, m(1), 4)
    with pytest.raises(InputError):
        crosses_strongly(m(0, 1), m(0, 1, 2, 3), 4)


# ---------------------------------------------------------------------------
# squares


def five_edge_graph():
    # unit edges p1p2, p2p3, p3p4, p4p1, p2p4 with p1.. mapped to 0..
    return g_from(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])


def test_build_square_five_edge_example():
    sq = build_square(five_edge_graph(), m(0, 1), m(0, 3))
    assert sq.sides == (1, 1, 1, 1)
    assert (sq.a, sq.b) == (1, 0)
    assert sq.alpha == 2
    assert (sq.da, sq.db) == (3, 3)
    assert sq.degrees == (2, 3, 2, 3)
    assert sq.formula_residuals() == (0, 0, 0, 0)
    assert sq.counting_residuals() == (0, 0)


def test_build_square_doubled_side_example():
    g = g_from(4, [(0, 1), (1, 2), (2, 3), (2, 3), (3, 0)])
    sq = build_square(g, m(0, 1), m(0, 3))
    assert sq.sides == (1, 1, 1, 2)
    assert (sq.a, sq.b) == (0, 0)
    assert sorted((sq.da, sq.db)) == [2, 3]


def test_build_square_rejects_non_crossing():
    with pytest.raises(InputError):
        build_square(c4(), m(1), m(1, 2))


def test_square_identities_random():
    rng = random.Random(5)
    for _ in range(40):
        g = random_multigraph(rng, rng.randint(4, 8), extra=8)
        subs = [mask_from_nodes(s) for s in canonical_subsets(g.n)]
        pairs = 0
        for i in range(len(subs)):
            for j in range(i + 1, len(subs)):
                if not crosses_strongly(subs[i], subs[j], g.n):
                    continue
                sq = build_square(g, subs[i], subs[j], lam=1)
                assert sq.alpha % 2 == 0
                assert sq.formula_residuals() == (0, 0, 0, 0)
                assert sq.counting_residuals() == (0, 0)
                d1, d2, d3, d4 = sq.degrees
                assert d1 <= d2 and d1 <= d3 and d1 <= d4 and d2 <= d4
                if d1 == d2:
                    assert sq.a >= sq.b
                # all six capacities equal direct edge counts between corners
                corner_sets = [set(nodes_from_mask(c)) for c in sq.corners]

                def between(ca, cb):
                    return sum(1 for e in g.edges
                               if (e.u in corner_sets[ca]) != (e.v in corner_sets[ca])
                               and {e.u, e.v} <= corner_sets[ca] | corner_sets[cb])

                assert (sq.z, sq.y, sq.w, sq.x) == \
                    (between(0, 1), between(1, 2), between(2, 3), between(3, 0))
                assert (sq.a, sq.b) == (between(1, 3), between(0, 2))
                pairs += 1
                if pairs > 40:
                    break
            if pairs > 40:
                break


def test_classify_examples():
    sq = build_square(five_edge_graph(), m(0, 1), m(0, 3))
    assert classify_square(sq) is SquareCase.PP_B

    g = g_from(4, [(0, 1), (1, 2), (2, 3), (2, 3), (3, 0)])
    sq = build_square(g, m(0, 1), m(0, 3))
    assert classify_square(sq) is SquareCase.MIN_PLUS_EVEN

    pairs = [(i, (i + 1) % 5) for i in range(5)]
    g = g_from(5, pairs + pairs[1:])  # doubled C5 minus one parallel: lam = 3
    assert min_cut_value(g) == 3
    sq = build_square(g, m(2, 3), m(3, 4))
    assert sq.degrees == (4, 4, 4, 4) and sq.sides == (2, 2, 2, 2)
    assert classify_square(sq) is SquareCase.PP_F


def test_classify_min_min_and_pp_e():
    sq = build_square(c4(), m(1, 2), m(2, 3))
    assert classify_square(sq) is SquareCase.MIN_MIN
    assert sq.sides == (1, 1, 1, 1) and (sq.a, sq.b) == (0, 0)

    sq = build_square(k4(), m(0, 1), m(0, 3))
    assert classify_square(sq) is SquareCase.PP_E


def test_classify_min_plus_odd():
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    g = g_from(5, pairs + pairs[1:])
    # {1,2} is a 3-cut (uses the light bundle), {2,3} a 4-cut
    sq = build_square(g, m(1, 2), m(2, 3))
    assert classify_square(sq) is SquareCase.MIN_PLUS_ODD
    light = (sq.lam - 1) // 2
    assert sorted(sq.sides) == [light, light + 1, light + 1, light + 1]


def test_classify_rejects_far_values():
    g = c4()
    sq = build_square(g, m(1, 2), m(2, 3), lam=4)  # claims lam=4, cuts are 2
    with pytest.raises(InputError):
        classify_square(sq)


# ---------------------------------------------------------------------------
# family predicates


def test_is_laminar_examples():
    assert is_laminar(SetFamily.from_sets(4, [[1], [1, 2]]))[0]
    ok, wit = is_laminar(SetFamily.from_sets(4, [[0, 1], [1, 2]]))
    assert not ok and set(wit) == {m(0, 1), m(1, 2)}
    assert is_laminar(SetFamily(4, ()))[0]


def test_is_uncrossable_examples():
    g = c4()
    fam = SetFamily(4, tuple(r.mask for r in enumerate_cuts_at_most(g, 3)))
    assert is_uncrossable(fam)[0]

    ok, wit = is_uncrossable(SetFamily.from_sets(4, [[0, 1], [1, 2]]))
    assert not ok and wit is not None

    assert is_uncrossable(SetFamily.from_sets(4, [[1], [1, 2]]))[0]


def test_is_symmetric_proper_crossing_examples():
    # all 12 oriented arcs of the 4-cycle
    arcs = [[0], [1], [2], [3], [0, 1], [1, 2], [2, 3], [3, 0],
            [1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
    fam = SetFamily.from_sets(4, arcs)
    assert is_symmetric_proper_crossing(fam)[0]

    ok, wit = is_symmetric_proper_crossing(SetFamily.from_sets(4, [[1], [1, 2]]))
    assert not ok  # fails symmetry

    assert is_symmetric_proper_crossing(SetFamily(4, ()))[0]


def test_symmetric_closure_and_canonical():
    fam = SetFamily.from_sets(4, [[1, 2]])
    closed = fam.symmetric_closure()
    assert set(closed.members) == {m(1, 2), m(0, 3)}
    assert closed.canonical().members == (m(1, 2),)


# ---------------------------------------------------------------------------
# quotients and shapes


def test_family_quotient_examples():
    g = c4()
    fam = SetFamily(4, tuple(r.mask for r in enumerate_cuts_at_most(g, 2)))
    qg = family_quotient(g, fam)
    assert qg.n_classes == 4  # every node pair separated by some 2-cut
    assert sorted((e.a, e.b, e.capacity) for e in qg.edges) == \
        [(0, 1, 1), (0, 3, 1), (1, 2, 1), (2, 3, 1)]

    qg = family_quotient(g, SetFamily.from_sets(4, [[3]]))
    assert qg.n_classes == 2
    assert [(e.capacity, e.unsafe_tally) for e in qg.edges] == [(2, 0)]

    with pytest.raises(InputError):
        family_quotient(g, SetFamily(4, ()))


def test_quotient_edge_colors():
    e = QuotientEdge(0, 1, 3, 0)
    assert e.color == "black"
    assert QuotientEdge(0, 1, 3, 1).color == "blue"
    assert QuotientEdge(0, 1, 3, 2).color == "red"


def cycle_quotient(caps):
    n = len(caps)
    edges = tuple(QuotientEdge(min(i, (i + 1) % n), max(i, (i + 1) % n), caps[i], 0)
                  for i in range(n))
    return QuotientGraph(n, tuple(1 << i for i in range(n)), tuple(range(n)), edges)


def test_verify_part_shape_examples():
    assert verify_part_shape(cycle_quotient([2] * 5), 3) is PartShape.CYCLE_UNIFORM
    assert verify_part_shape(cycle_quotient([1, 3, 3, 3]), 3) is PartShape.CYCLE_ONE_LIGHT
    assert verify_part_shape(cycle_quotient([1, 1, 1]), 3) is PartShape.OTHER
    with pytest.raises(InputError):
        verify_part_shape(cycle_quotient([2] * 4), 2)


def test_verify_part_shape_cube():
    edges = [(i, j) for i in range(8) for j in range(i + 1, 8)
             if bin(i ^ j).count("1") == 1]
    g = g_from(8, edges)
    fam = SetFamily(8, tuple(r.mask for r in enumerate_cuts_at_most(g, 4)
                             if r.size == 4))
    qg = family_quotient(g, fam)
    assert verify_part_shape(qg, 3) is PartShape.CUBE
    assert verify_part_shape(qg, 5) is PartShape.OTHER


# ---------------------------------------------------------------------------
# decompositions


def test_decompose_plus_cuts_doubled_c5():
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    g = g_from(5, pairs + pairs[1:])
    res = decompose_plus_cuts(g, 3)
    assert len(res.parts) == 1
    part = res.parts[0]
    assert part.shape in (PartShape.CYCLE_UNIFORM, PartShape.CYCLE_ONE_LIGHT)
    assert len(part.members) == 6
    assert res.diagnostics == ()
    assert set(res.coverage().values()) == {1}


def test_decompose_plus_cuts_no_plus_cuts():
    g = g_from(2, [(0, 1), (0, 1), (0, 1)])  # single 3-cut, no 4-cuts
    res = decompose_plus_cuts(g, 3)
    assert res.parts == ()
    with pytest.raises(PreconditionError):
        decompose_plus_cuts(g, 5)


def test_decompose_plus_cuts_membership_bound():
    rng = random.Random(23)
    done = 0
    while done < 12:
        g = random_multigraph(rng, rng.randint(4, 8), extra=6)
        lam = min_cut_value(g)
        if lam % 2 == 0 or lam == 0:
            continue
        done += 1
        res = decompose_plus_cuts(g, lam)
        vals = cut_value_array(g)
        plus = {i << 1 for i in range(1, len(vals)) if int(vals[i]) == lam + 1}
        cov = res.coverage()
        for mask in plus:
            assert 1 <= cov.get(mask, 0) <= 2


def test_decompose_f2_examples():
    # no unsafe edges: both sides empty
    d = decompose_F2_odd(c4(), range(4), 1)
    assert len(d.f_prime) == 0 and len(d.f_dprime) == 0

    # opposite unsafe edges on the 4-cycle: a pure symmetric crossing side
    g = g_from(4, [(0, 1, 0, 1, True), (1, 2), (2, 3, 0, 1, True), (3, 0)])
    d = decompose_F2_odd(g, range(4), 1)
    assert d.f_prime.members == ()
    assert set(d.f_dprime.members) == {m(1, 2), m(0, 3)}
    assert is_symmetric_proper_crossing(d.f_dprime)[0]

    # doubled unsafe pendant: both unsafe edges merge into one red edge
    g = g_from(4, [(0, 1), (1, 2), (2, 0), (0, 3, 0, 1, True), (0, 3, 0, 1, True)])
    d = decompose_F2_odd(g, range(5), 1)
    assert d.f_prime.members == (m(3),)
    assert d.f_dprime.members == ()
    assert is_uncrossable(d.f_prime)[0]


def test_decompose_f2_precondition():
    # an unsafe bridge makes a k-cut unsafe: precondition must fail
    g = g_from(3, [(0, 1, 0, 1, True), (1, 2)])
    with pytest.raises(PreconditionError):
        decompose_F2_odd(g, range(2), 1)
    with pytest.raises(InputError):
        decompose_F2_odd(c4(), range(4), 2)  # even k rejected
