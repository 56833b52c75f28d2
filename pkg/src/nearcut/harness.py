"""Instance generation, exact oracles, verification suites, benchmarking.

Every suite is seeded and deterministic; reports are plain JSON-able
dicts with exact rational ratios (serialized as [numerator,
denominator] pairs) so pass/fail never touches floating point.  Wall
times are the only nondeterministic fields and are kept separable.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError, LimitError
from .augment import (
    AugmentInstance,
    deficient_family,
    near_min_cuts_cover,
)
from .cut_structure import (
    SetFamily,
    build_square,
    classify_square,
    crosses_strongly,
    decompose_F2_odd,
    decompose_plus_cuts,
    is_uncrossable,
    SquareCase,
)
from .family_cover import (
    Candidate,
    CoverInstance,
    covers,
    exact_min_cover,
    minimal_cover,
    primal_dual_uncrossable_cover,
)
from .fgc import (
    ExactSubgraphResult,
    FlexInstance,
    enumerate_Fq,
    is_flex_connected,
    minimum_flex_subgraph,
    solve_fgc,
)
from .multigraph import (
    EdgeRecord,
    Multigraph,
    cut_value_array,
    is_connected,
    min_cut_value,
    nodes_from_mask,
)

DEFAULT_ORACLE_EDGE_LIMIT = 24


# ---------------------------------------------------------------------------
# Random instance generation


@dataclass(frozen=True)
class GenSpec:
    """Knobs for the seeded generator; identical specs give identical bytes."""

    n_min: int = 6
    n_max: int = 10
    density: float = 0.5
    unsafe_p: float = 0.0
    cost_min: int = 1
    cost_max: int = 1
    capacity: str = "unit"  # "unit" or "lo:hi"
    seed: int = 0
    connect_retries: int = 200


def _cap_range(spec: GenSpec) -> tuple[int, int]:
    if spec.capacity == "unit":
        return (1, 1)
    try:
        lo, hi = (int(x) for x in spec.capacity.split(":"))
    except ValueError as exc:
        raise InputError(f"bad capacity convention {spec.capacity!r}") from exc
    if not (1 <= lo <= hi):
        raise InputError(f"bad capacity range {spec.capacity!r}")
    return (lo, hi)


def generate(spec: GenSpec) -> Multigraph:
    """Seeded random multigraph, retried until connected."""
    if not (1 <= spec.n_min <= spec.n_max):
        raise InputError("bad node count range")
    cap_lo, cap_hi = _cap_range(spec)
    rng = random.Random(spec.seed)
    whole = int(spec.density)
    frac = spec.density - whole
    for _attempt in range(spec.connect_retries):
        n = rng.randint(spec.n_min, spec.n_max)
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                copies = whole + (1 if frac > 0 and rng.random() < frac else 0)
                for _ in range(copies):
                    cost = rng.randint(spec.cost_min, spec.cost_max)
                    cap = rng.randint(cap_lo, cap_hi)
                    unsafe = rng.random() < spec.unsafe_p
                    edges.append(EdgeRecord(u, v, cost, cap, unsafe, False))
        g = Multigraph(n, tuple(edges))
        if is_connected(g):
            return g
    raise InputError(
        f"generator failed to produce a connected graph in {spec.connect_retries} tries")


def _random_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    return [(rng.randrange(v), v) for v in range(1, n)]


def _random_cycle_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    perm = list(range(n))
    rng.shuffle(perm)
    return [(perm[i], perm[(i + 1) % n]) for i in range(n)]


def _corpus_graph(rng: random.Random, n_min: int, n_max: int,
                  m_factor: int = 3) -> Multigraph:
    """Connected random multigraph: tree or cycle skeleton plus extras."""
    n = rng.randint(n_min, n_max)
    skeleton = _random_tree_edges(rng, n) if rng.random() < 0.5 \
        else _random_cycle_edges(rng, n)
    m = rng.randint(len(skeleton), m_factor * n)
    edges = list(skeleton)
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.append((min(u, v), max(u, v)))
    return Multigraph.from_edges(n, [(u, v, 0, 1) for (u, v) in edges])


# ---------------------------------------------------------------------------
# Oracles


def exact_fgc(inst: FlexInstance,
              edge_limit: int = DEFAULT_ORACLE_EDGE_LIMIT,
              node_budget: int = 5_000_000) -> ExactSubgraphResult:
    """Minimum-cost flex-connected subgraph by branch and bound."""
    if inst.graph.m > edge_limit:
        raise LimitError(
            f"oracle limited to {edge_limit} edges, instance has {inst.graph.m}")
    return minimum_flex_subgraph(inst.graph, inst.k, inst.q, node_budget)


def exact_augment(inst: AugmentInstance,
                  node_budget: int = 2_000_000):
    """Optimal candidate set: covering the base graph's deficient cuts is
    exactly feasibility, since each candidate closes any single deficit."""
    inst.validate()
    base = Multigraph(inst.graph.n,
                      tuple(e for e in inst.graph.edges if e.base))
    fam = deficient_family(base, inst.k)
    cands = tuple(Candidate(i, inst.graph.edges[i].u, inst.graph.edges[i].v,
                            inst.graph.edges[i].cost)
                  for i in inst.candidate_ids)
    return exact_min_cover(CoverInstance(inst.graph.n, cands, fam),
                           node_budget=node_budget)


# ---------------------------------------------------------------------------
# Report plumbing


def _frac(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _mask_nodes(mask: int) -> list[int]:
    return list(nodes_from_mask(mask))


@dataclass(frozen=True)
class RatioReport:
    instance_id: str
    kind: str
    n: int
    m: int
    k: int
    q: int
    lam0: Optional[int]
    algorithm_cost: int
    oracle_cost: int
    ratio: Fraction
    bound: Fraction
    kecss_ratio: Optional[Fraction]
    feasible: bool
    stage_costs: tuple[int, ...]
    oracle_nodes: int
    wall_ms: int

    @property
    def violated(self) -> bool:
        return (not self.feasible) or self.ratio > self.bound

    def to_json_obj(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "kind": self.kind,
            "n": self.n, "m": self.m, "k": self.k, "q": self.q,
            "lam0": self.lam0,
            "algorithm_cost": self.algorithm_cost,
            "oracle_cost": self.oracle_cost,
            "ratio": _frac(self.ratio),
            "bound": _frac(self.bound),
            "kecss_ratio": None if self.kecss_ratio is None else _frac(self.kecss_ratio),
            "feasible": self.feasible,
            "stage_costs": list(self.stage_costs),
            "oracle_nodes": self.oracle_nodes,
            "wall_ms": self.wall_ms,
        }


def strip_wall_times(obj):
    """Copy of a report with every wall_ms zeroed (for byte comparisons)."""
    if isinstance(obj, dict):
        return {k: (0 if k == "wall_ms" else strip_wall_times(v))
                for k, v in obj.items()}
    if isinstance(obj, list):
        return [strip_wall_times(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# Corpus builders


def make_augment_corpus(count: int, seed: int, n_min: int = 5,
                        n_max: int = 8) -> list[tuple[str, AugmentInstance]]:
    """Instances spanning all four (lam0, k) parity combinations.

    Base graphs with exact connectivity: tree (1), cycle (2), doubled
    cycle minus one parallel edge (3), doubled cycle (4).  Candidates
    always include a random spanning cycle, so adding everything closes
    every deficit and the instance is feasible by construction.
    """
    rng = random.Random(seed)
    out = []
    # all four (lam0, k) parity combinations, gap <= 4
    combos = [(2, 4), (4, 6), (2, 6), (4, 8),      # even / even
              (2, 3), (4, 5), (2, 5),              # even / odd
              (1, 2), (3, 4), (1, 4),              # odd / even
              (1, 3), (3, 5), (1, 5), (3, 7)]      # odd / odd
    i = 0
    while len(out) < count:
        lam0, k = combos[i % len(combos)]
        i += 1
        n = rng.randint(n_min, n_max)
        if lam0 == 1:
            base = _random_tree_edges(rng, n)
        elif lam0 == 2:
            base = _random_cycle_edges(rng, n)
        elif lam0 == 3:
            cyc = _random_cycle_edges(rng, n)
            base = cyc + cyc[1:]
        else:
            cyc = _random_cycle_edges(rng, n)
            base = cyc + cyc
        gap = max(k - lam0, 1)
        edges = [EdgeRecord(u, v, 0, 1, False, True) for (u, v) in base]
        cand_pairs = _random_cycle_edges(rng, n)
        extra = rng.randint(0, min(8, 20 - len(cand_pairs)))
        for _ in range(extra):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                cand_pairs.append((min(u, v), max(u, v)))
        for (u, v) in cand_pairs:
            edges.append(EdgeRecord(u, v, rng.randint(1, 9), gap, False, False))
        inst = AugmentInstance(Multigraph(n, tuple(edges)), k)
        if inst.lam0 != lam0:
            continue
        out.append((f"aug-{len(out):04d}", inst))
    return out


def make_fgc_corpus(count: int, seed: int, n_min: int = 5, n_max: int = 7,
                    unit_cost: bool = False,
                    unsafe_p: float = 0.35) -> list[tuple[str, FlexInstance]]:
    """(k, q) instances feasible by construction: min cut >= k + q."""
    rng = random.Random(seed)
    combos = [(k, q) for k in (1, 2, 3, 4) for q in (0, 1, 2)]
    out = []
    i = 0
    while len(out) < count:
        k, q = combos[i % len(combos)]
        i += 1
        n = rng.randint(n_min, n_max)
        copies = (k + q + 1) // 2
        pairs: list[tuple[int, int]] = []
        for _ in range(copies):
            pairs.extend(_random_cycle_edges(rng, n))
        budget = 22 - len(pairs)
        for _ in range(rng.randint(0, max(0, min(3, budget)))):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                pairs.append((min(u, v), max(u, v)))
        edges = []
        for (u, v) in pairs:
            cost = 1 if unit_cost else rng.randint(1, 9)
            edges.append(EdgeRecord(u, v, cost, 1, rng.random() < unsafe_p, False))
        g = Multigraph(n, tuple(edges))
        if min_cut_value(g) < k + q:
            continue
        out.append((f"fgc-{len(out):04d}", FlexInstance(g, k, q)))
    return out


def make_uncrossable_cover_corpus(count: int, seed: int, n_min: int = 5,
                                  n_max: int = 8) -> list[tuple[str, CoverInstance]]:
    """Uncrossable families ({lam, lam+1}-cuts at even lam) with feasible
    candidate pools (a spanning cycle crosses every cut)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(n_min, n_max)
        pairs = _random_cycle_edges(rng, n)
        if rng.random() < 0.5:
            pairs = pairs + pairs[: rng.randint(0, n)]
        for _ in range(rng.randint(0, 3)):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                pairs.append((min(u, v), max(u, v)))
        g = Multigraph.from_edges(n, [(u, v, 0, 1) for (u, v) in pairs])
        lam = min_cut_value(g)
        if lam < 2 or lam % 2:
            continue
        vals = cut_value_array(g)
        fam = SetFamily(n, tuple(i << 1 for i in range(1, len(vals))
                                 if int(vals[i]) in (lam, lam + 1)))
        if len(fam) == 0:
            continue
        ok, _ = is_uncrossable(fam)
        if not ok:
            continue
        cand_pairs = _random_cycle_edges(rng, n)
        for _ in range(rng.randint(0, 6)):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                cand_pairs.append((min(u, v), max(u, v)))
        cands = tuple(Candidate(j, u, v, rng.randint(1, 9))
                      for j, (u, v) in enumerate(cand_pairs))
        out.append((f"unc-{len(out):04d}", CoverInstance(n, cands, fam)))
    return out


def make_flex_corpus(count: int, per_k_seed: int, k: int, n_min: int = 4,
                     n_max: int = 8,
                     unsafe_p: float = 0.45) -> list[tuple[str, Multigraph]]:
    """Corpus of (k,1)-flex-connected multigraphs with rich level-2 families.

    Skeletons keep min cut just above k so the (k+1)-cuts are plentiful
    arc cuts: a cycle for k = 1, a cycle-and-a-half for k = 2, a doubled
    cycle for k = 3.  Occasional extra edges perturb the structure; the
    flex check filters anything the unsafe flags break.
    """
    rng = random.Random(per_k_seed)
    out = []
    tries = 0
    while len(out) < count and tries < count * 400:
        tries += 1
        n = rng.randint(n_min, n_max)
        cyc = _random_cycle_edges(rng, n)
        if k == 1:
            pairs = list(cyc)
        elif k == 2:
            pairs = cyc + cyc[1:]
        else:
            pairs = cyc + list(_random_cycle_edges(rng, n))
        if rng.random() < 0.4:
            for _ in range(rng.randint(1, 2)):
                u, v = rng.randrange(n), rng.randrange(n)
                if u != v:
                    pairs.append((min(u, v), max(u, v)))
        p = rng.choice((unsafe_p, 0.65, 0.9))
        edges = [EdgeRecord(u, v, 0, 1, rng.random() < p, False)
                 for (u, v) in pairs]
        g = Multigraph(n, tuple(edges))
        ok, _ = is_flex_connected(g, range(g.m), k, 1)
        if not ok:
            continue
        out.append((f"flex-k{k}-{len(out):04d}", g))
    if len(out) < count:
        raise InputError(f"could not build {count} (k={k},1)-flex graphs")
    return out


# ---------------------------------------------------------------------------
# Suites


def _near_min_pairs(g: Multigraph):
    """Yield (lam, A, B) for strongly crossing near-minimum cut pairs."""
    lam = min_cut_value(g)
    vals = cut_value_array(g)
    near = [i << 1 for i in range(1, len(vals)) if int(vals[i]) in (lam, lam + 1)]
    for i in range(len(near)):
        for j in range(i + 1, len(near)):
            if crosses_strongly(near[i], near[j], g.n):
                yield lam, near[i], near[j]


def _suite_squares(cfg: dict) -> dict:
    rng = random.Random(cfg["seed"])
    graphs = cfg["graphs"]
    pairs_checked = 0
    violations: list[str] = []
    for gi in range(graphs):
        g = _corpus_graph(rng, cfg["n_min"], cfg["n_max"], cfg["m_factor"])
        vals = cut_value_array(g)
        for lam, a, b in _near_min_pairs(g):
            sq = build_square(g, a, b, lam=lam)
            pairs_checked += 1
            bad = []
            if sq.alpha % 2:
                bad.append(f"alpha={sq.alpha} odd")
            if any(sq.formula_residuals()):
                bad.append(f"solution residuals {sq.formula_residuals()}")
            if any(sq.counting_residuals()):
                bad.append(f"counting residuals {sq.counting_residuals()}")
            da_expect = {int(vals[(a >> 1)]), int(vals[(b >> 1)])}
            if {sq.da, sq.db} != da_expect:
                bad.append(f"cut values drifted: {{{sq.da},{sq.db}}} != {da_expect}")
            if bad:
                violations.append(
                    f"graph {gi}: cuts {_mask_nodes(a)}/{_mask_nodes(b)}: " + "; ".join(bad))
    return {
        "suite": "squares",
        "config": dict(cfg),
        "counts": {"graphs": graphs, "pairs_checked": pairs_checked},
        "violations": violations[:10],
        "first_counterexample": violations[0] if violations else None,
        "pass": not violations,
    }


def _suite_classify(cfg: dict) -> dict:
    rng = random.Random(cfg["seed"])
    graphs = cfg["graphs"]
    histogram: dict[str, int] = {}
    violations: list[str] = []
    pairs_checked = 0
    for gi in range(graphs):
        g = _corpus_graph(rng, cfg["n_min"], cfg["n_max"], cfg["m_factor"])
        for lam, a, b in _near_min_pairs(g):
            sq = build_square(g, a, b, lam=lam)
            case = classify_square(sq)
            histogram[case.value] = histogram.get(case.value, 0) + 1
            pairs_checked += 1
            if case is SquareCase.OTHER:
                violations.append(
                    f"graph {gi}: unclassifiable square for cuts "
                    f"{_mask_nodes(a)}/{_mask_nodes(b)} (lam={lam})")
                continue
            if sq.da == lam and sq.db == lam:
                half = lam // 2
                if lam % 2 or (sq.a, sq.b) != (0, 0) or sq.sides != (half,) * 4:
                    violations.append(
                        f"graph {gi}: min-min square violates the even-lam pattern")
    return {
        "suite": "classify",
        "config": dict(cfg),
        "counts": {"graphs": graphs, "pairs_checked": pairs_checked},
        "histogram": dict(sorted(histogram.items())),
        "violations": violations[:10],
        "first_counterexample": violations[0] if violations else None,
        "pass": not violations,
    }


def _suite_uncrossable(cfg: dict) -> dict:
    rng = random.Random(cfg["seed"])
    graphs = cfg["graphs"]
    checked = 0
    skipped_odd = 0
    violations: list[str] = []
    for gi in range(graphs):
        g = _corpus_graph(rng, cfg["n_min"], cfg["n_max"], cfg["m_factor"])
        lam = min_cut_value(g)
        if lam % 2:
            skipped_odd += 1
            continue
        vals = cut_value_array(g)
        fam = SetFamily(g.n, tuple(i << 1 for i in range(1, len(vals))
                                   if int(vals[i]) in (lam, lam + 1)))
        checked += 1
        ok, wit = is_uncrossable(fam)
        if not ok:
            violations.append(
                f"graph {gi} (lam={lam}): witness "
                f"{_mask_nodes(wit[0])}/{_mask_nodes(wit[1])}")
    return {
        "suite": "uncrossable",
        "config": dict(cfg),
        "counts": {"graphs": graphs, "even_lam_checked": checked,
                   "odd_lam_skipped": skipped_odd},
        "violations": violations[:10],
        "first_counterexample": violations[0] if violations else None,
        "pass": not violations,
    }


def _suite_c1(cfg: dict) -> dict:
    q = 2
    violations: list[str] = []
    pairs_checked = 0
    graphs_checked = 0
    decompositions = 0
    for k in cfg["k_values"]:
        corpus = make_flex_corpus(cfg["per_k"], cfg["seed"] + k, k,
                                  cfg["n_min"], cfg["n_max"])
        for gid, g in corpus:
            graphs_checked += 1
            fam2 = enumerate_Fq(g, range(g.m), k, 2)
            d_arr = cut_value_array(g)
            u_arr = cut_value_array(g, "unsafe")

            def d(mask):
                return int(d_arr[mask >> 1]) if not mask & 1 else \
                    int(d_arr[(mask ^ ((1 << g.n) - 1)) >> 1])

            def du(mask):
                return int(u_arr[mask >> 1]) if not mask & 1 else \
                    int(u_arr[(mask ^ ((1 << g.n) - 1)) >> 1])

            members = fam2.members
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    a, b = members[i], members[j]
                    if not crosses_strongly(a, b, g.n):
                        continue
                    pairs_checked += 1
                    sq = build_square(g, a, b, lam=k)
                    c1, c2, _c3, c4 = sq.corners
                    if du(c1) >= 1:
                        if d(c1) + d(c2) < 2 * k + q:
                            violations.append(
                                f"{gid}: crossing pair {_mask_nodes(a)}/{_mask_nodes(b)} "
                                f"has unsafe corner but d(C1)+d(C2) = {d(c1) + d(c2)} "
                                f"< {2 * k + q}")
                    else:
                        if not (fam2.contains_cut(c2) and fam2.contains_cut(c4)):
                            violations.append(
                                f"{gid}: safe-corner pair {_mask_nodes(a)}/{_mask_nodes(b)} "
                                f"is missing a side corner from the family")
            if k % 2 == 0:
                ok, wit = is_uncrossable(fam2)
                if not ok:
                    violations.append(
                        f"{gid}: level-2 family not uncrossable, witness "
                        f"{_mask_nodes(wit[0])}/{_mask_nodes(wit[1])}")
            else:
                try:
                    split = decompose_F2_odd(g, range(g.m), k)
                    decompositions += 1
                except Exception as exc:  # structure checks raise InvariantError
                    violations.append(f"{gid}: decomposition failed: {exc}")
    return {
        "suite": "c1",
        "config": dict(cfg),
        "counts": {"graphs": graphs_checked, "crossing_pairs": pairs_checked,
                   "odd_k_decompositions": decompositions},
        "violations": violations[:10],
        "first_counterexample": violations[0] if violations else None,
        "pass": not violations,
    }


def _suite_decompose(cfg: dict) -> dict:
    rng = random.Random(cfg["seed"])
    shape_hist: dict[str, int] = {}
    diagnostics: list[str] = []
    violations: list[str] = []
    graphs_checked = 0
    tries = 0
    while graphs_checked < cfg["graphs"] and tries < cfg["graphs"] * 60:
        tries += 1
        style = rng.randrange(3)
        n = rng.randint(cfg["n_min"], cfg["n_max"])
        if style == 0:
            pairs = _random_tree_edges(rng, n)  # lam = 1
        elif style == 1:
            cyc = _random_cycle_edges(rng, n)   # lam = 3
            pairs = cyc + cyc[1:]
        else:
            pairs = _random_tree_edges(rng, n)
            for _ in range(rng.randint(0, n)):
                u, v = rng.randrange(n), rng.randrange(n)
                if u != v:
                    pairs.append((min(u, v), max(u, v)))
        g = Multigraph.from_edges(n, [(u, v, 0, 1) for (u, v) in pairs])
        lam = min_cut_value(g)
        if lam % 2 == 0:
            continue
        graphs_checked += 1
        res = decompose_plus_cuts(g, lam)
        diagnostics.extend(res.diagnostics)
        for part in res.parts:
            shape_hist[part.shape.value] = shape_hist.get(part.shape.value, 0) + 1
        coverage = res.coverage()
        vals = cut_value_array(g)
        for i in range(1, len(vals)):
            if int(vals[i]) == lam + 1 and coverage.get(i << 1, 0) < 1:
                violations.append(
                    f"graph {graphs_checked}: cut {_mask_nodes(i << 1)} not in any part")
    return {
        "suite": "decompose",
        "config": dict(cfg),
        "counts": {"graphs": graphs_checked},
        "histogram": dict(sorted(shape_hist.items())),
        "diagnostics": diagnostics[:20],
        "violations": violations[:10],
        "first_counterexample": violations[0] if violations else None,
        # unrecognized shapes are diagnostics (open heuristic), not failures
        "pass": not violations,
    }


def _suite_forest(cfg: dict) -> dict:
    rng = random.Random(cfg["seed"])
    violations: list[str] = []
    checked = 0
    for _case in range(cfg["pairs"]):
        n = rng.randint(4, 7)
        size = rng.randint(2, min(10, (1 << (n - 1)) - 1))
        masks = set()
        while len(masks) < size:
            m = rng.randint(1, (1 << (n - 1)) - 1) << 1
            masks.add(m)
        fam = SetFamily(n, tuple(sorted(masks)))
        edge_count = rng.randint(n - 1, 2 * n)
        pairs = []
        for _ in range(edge_count):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                pairs.append((min(u, v), max(u, v)))
        for mask in fam.members:
            inside = nodes_from_mask(mask)[0]
            outside = nodes_from_mask(((1 << n) - 1) ^ mask)[0]
            pairs.append((min(inside, outside), max(inside, outside)))
        checked += 1
        pruned = minimal_cover(pairs, fam)  # raises if cyclic
        ok, wit = covers(pruned, fam)
        if not ok:
            violations.append(f"case {_case}: pruned cover lost member {_mask_nodes(wit)}")
    return {
        "suite": "forest",
        "config": dict(cfg),
        "counts": {"pairs": checked},
        "violations": violations[:10],
        "first_counterexample": violations[0] if violations else None,
        "pass": not violations,
    }


def _run_augment_records(count: int, seed: int) -> list[RatioReport]:
    records = []
    for iid, inst in make_augment_corpus(count, seed):
        t0 = time.perf_counter()
        res = near_min_cuts_cover(inst)
        oracle = exact_augment(inst)
        wall = int((time.perf_counter() - t0) * 1000)
        ratio = Fraction(res.cost, oracle.cost) if oracle.cost else Fraction(0)
        records.append(RatioReport(
            instance_id=iid, kind="augment", n=inst.graph.n, m=inst.graph.m,
            k=inst.k, q=0, lam0=res.lam0, algorithm_cost=res.cost,
            oracle_cost=oracle.cost, ratio=ratio, bound=res.bound,
            kecss_ratio=None, feasible=True,
            stage_costs=tuple(s.cost for s in res.stages),
            oracle_nodes=oracle.nodes_explored, wall_ms=wall))
    return records


def _run_fgc_records(count: int, seed: int, unit: bool) -> list[RatioReport]:
    records = []
    corpus = make_fgc_corpus(count, seed, unit_cost=unit)
    for iid, inst in corpus:
        t0 = time.perf_counter()
        sol = solve_fgc(inst, unit_cost=unit)
        oracle = exact_fgc(inst)
        wall = int((time.perf_counter() - t0) * 1000)
        feas, _ = is_flex_connected(inst.graph, sol.edge_ids, inst.k, inst.q)
        ratio = Fraction(sol.cost, oracle.cost) if oracle.cost else Fraction(0)
        records.append(RatioReport(
            instance_id=iid, kind="fgc-unit" if unit else "fgc",
            n=inst.graph.n, m=inst.graph.m, k=inst.k, q=inst.q, lam0=None,
            algorithm_cost=sol.cost, oracle_cost=oracle.cost, ratio=ratio,
            bound=sol.guarantee, kecss_ratio=sol.phases[0].guarantee,
            feasible=feas, stage_costs=tuple(p.cost for p in sol.phases),
            oracle_nodes=oracle.nodes_explored, wall_ms=wall))
    return records


def _suite_ratios(cfg: dict) -> dict:
    kind = cfg.get("kind", "all")
    records: list[RatioReport] = []
    violations: list[str] = []
    extra_checks = {"pd_checked": 0, "unit_checked": 0}

    if kind in ("all", "augment"):
        records.extend(_run_augment_records(cfg["augment_count"], cfg["seed"]))
    if kind in ("all", "fgc"):
        records.extend(_run_fgc_records(cfg["fgc_count"], cfg["seed"] + 1, unit=False))
    if kind in ("all", "unit"):
        unit_records = _run_fgc_records(cfg["unit_count"], cfg["seed"] + 2, unit=True)
        for rec in unit_records:
            if rec.oracle_cost * 2 < rec.k * rec.n:
                violations.append(
                    f"{rec.instance_id}: oracle size {rec.oracle_cost} below kn/2")
            extra_checks["unit_checked"] += 1
        records.extend(unit_records)
    if kind in ("all", "pd"):
        for iid, cover_inst in make_uncrossable_cover_corpus(cfg["pd_count"],
                                                             cfg["seed"] + 3):
            pd = primal_dual_uncrossable_cover(cover_inst)
            opt = exact_min_cover(cover_inst)
            extra_checks["pd_checked"] += 1
            if pd.cost > 2 * opt.cost:
                violations.append(
                    f"{iid}: primal-dual cost {pd.cost} exceeds 2 x opt = {2 * opt.cost}")
            ok, wit = covers([cover_inst.candidates[i] for i in pd.chosen],
                             cover_inst.family)
            if not ok:
                violations.append(f"{iid}: primal-dual output is not a cover")

    for rec in records:
        if rec.violated:
            violations.append(
                f"{rec.instance_id}: ratio {rec.ratio} exceeds bound {rec.bound}"
                if rec.feasible else f"{rec.instance_id}: infeasible output")
    return {
        "suite": "ratios",
        "config": dict(cfg),
        "counts": {"records": len(records), **extra_checks},
        "records": [r.to_json_obj() for r in records],
        "violations": violations[:10],
        "first_counterexample": violations[0] if violations else None,
        "pass": not violations,
    }


_SUITE_DEFAULTS: dict[str, dict] = {
    "squares": {"graphs": 1000, "n_min": 6, "n_max": 12, "m_factor": 3,
                "seed": 20260801},
    "classify": {"graphs": 1000, "n_min": 6, "n_max": 12, "m_factor": 3,
                 "seed": 20260801},
    "uncrossable": {"graphs": 400, "n_min": 6, "n_max": 12, "m_factor": 3,
                    "seed": 20260802},
    "c1": {"per_k": 40, "k_values": [1, 2, 3], "n_min": 4, "n_max": 8,
           "seed": 20260803},
    "decompose": {"graphs": 60, "n_min": 4, "n_max": 9, "seed": 20260804},
    "forest": {"pairs": 10000, "seed": 20260805},
    "ratios": {"kind": "all", "augment_count": 40, "fgc_count": 40,
               "unit_count": 24, "pd_count": 40, "seed": 20260806},
}

_SUITES = {
    "squares": _suite_squares,
    "classify": _suite_classify,
    "uncrossable": _suite_uncrossable,
    "c1": _suite_c1,
    "decompose": _suite_decompose,
    "forest": _suite_forest,
    "ratios": _suite_ratios,
}


def run_suite(name: str, config: Optional[dict] = None) -> dict:
    """Run a named verification suite; the report is JSON-able."""
    if name not in _SUITES:
        raise InputError(f"unknown suite {name!r}; known: {sorted(_SUITES)}")
    cfg = dict(_SUITE_DEFAULTS[name])
    if config:
        cfg.update(config)
    return _SUITES[name](cfg)
