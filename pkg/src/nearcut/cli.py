"""Command-line interface.

Subcommands: ``gen`` (seeded instance files), ``verify --suite NAME``
(verification suites), ``solve augment|fgc``, ``oracle augment|fgc``,
and ``bench --corpus DIR --out FILE``.  Exit codes: 0 pass, 1 invariant
or suite failure, 2 usage / IO / infeasibility.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .errors import InvariantError, NearcutError
from .augment import AugmentInstance, near_min_cuts_cover
from .fgc import FlexInstance, is_flex_connected, solve_fgc
from .harness import (
    GenSpec,
    RatioReport,
    exact_augment,
    exact_fgc,
    generate,
    run_suite,
)
from .io import Instance, load_instance, save_instance


def _frac(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _emit(obj: dict, out: str | None) -> None:
    payload = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(payload)
    else:
        sys.stdout.write(payload)


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _cmd_gen(args) -> int:
    n_min, n_max = _parse_range(args.nodes)
    c_min, c_max = _parse_range(args.cost)
    spec = GenSpec(n_min=n_min, n_max=n_max, density=args.density,
                   unsafe_p=args.unsafe_p, cost_min=c_min, cost_max=c_max,
                   capacity=args.cap, seed=args.seed)
    g = generate(spec)
    save_instance(Instance(g, args.k, args.q), args.out, fmt=args.format)
    return 0


def _load(args) -> Instance:
    inst = load_instance(args.input)
    k = args.k if args.k is not None else inst.k
    q = args.q if getattr(args, "q", None) is not None else inst.q
    return Instance(inst.graph, k, q)


def _cmd_solve_augment(args) -> int:
    inst = _load(args)
    aug = AugmentInstance(inst.graph, inst.k)
    t0 = time.perf_counter()
    res = near_min_cuts_cover(aug, single_solver=args.single_level_solver)
    report = {
        "kind": "augment",
        "input": str(args.input),
        "k": inst.k,
        "lam0": res.lam0,
        "chosen": list(res.chosen),
        "cost": res.cost,
        "bound": _frac(res.bound),
        "stages": [
            {"level": s.level, "kind": s.kind, "family_size": s.family_size,
             "solver": s.solver, "cost": s.cost, "guarantee": _frac(s.guarantee)}
            for s in res.stages
        ],
        "feasible": True,
        "wall_ms": int((time.perf_counter() - t0) * 1000),
    }
    _emit(report, args.out)
    return 0


def _cmd_solve_fgc(args) -> int:
    inst = _load(args)
    flex = FlexInstance(inst.graph, inst.k, inst.q)
    t0 = time.perf_counter()
    sol = solve_fgc(flex, kecss_mode=args.kecss, unit_cost=args.unit_cost)
    feasible, _ = is_flex_connected(inst.graph, sol.edge_ids, inst.k, inst.q)
    report = {
        "kind": "fgc",
        "input": str(args.input),
        "k": inst.k,
        "q": inst.q,
        "chosen": list(sol.edge_ids),
        "cost": sol.cost,
        "guarantee": _frac(sol.guarantee),
        "phases": [
            {"name": p.name, "family_size": p.family_size, "solver": p.solver,
             "cost": p.cost, "guarantee": _frac(p.guarantee)}
            for p in sol.phases
        ],
        "feasible": feasible,
        "wall_ms": int((time.perf_counter() - t0) * 1000),
    }
    _emit(report, args.out)
    return 0


def _cmd_oracle(args) -> int:
    inst = _load(args)
    if args.problem == "augment":
        res = exact_augment(AugmentInstance(inst.graph, inst.k))
        report = {"kind": "augment-oracle", "input": str(args.input),
                  "k": inst.k, "chosen": list(res.chosen), "cost": res.cost,
                  "nodes_explored": res.nodes_explored}
    else:
        res = exact_fgc(FlexInstance(inst.graph, inst.k, inst.q))
        report = {"kind": "fgc-oracle", "input": str(args.input), "k": inst.k,
                  "q": inst.q, "chosen": list(res.edge_ids), "cost": res.cost,
                  "nodes_explored": res.nodes_explored}
    _emit(report, args.out)
    return 0


def _cmd_verify(args) -> int:
    config = json.loads(args.config) if args.config else None
    report = run_suite(args.suite, config)
    _emit(report, args.out)
    return 0 if report["pass"] else 1


def _cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise NearcutError(f"corpus directory not found: {corpus}")
    records = []
    violations = []
    for path in sorted(corpus.iterdir()):
        if path.is_dir() or path.name.startswith("."):
            continue
        inst = load_instance(path)
        has_base = any(e.base for e in inst.graph.edges)
        kind = args.kind if args.kind != "auto" else ("augment" if has_base else "fgc")
        t0 = time.perf_counter()
        if kind == "augment":
            aug = AugmentInstance(inst.graph, inst.k)
            res = near_min_cuts_cover(aug)
            oracle = exact_augment(aug)
            ratio = Fraction(res.cost, oracle.cost) if oracle.cost else Fraction(0)
            rec = RatioReport(
                instance_id=path.name, kind="augment", n=inst.graph.n,
                m=inst.graph.m, k=inst.k, q=0, lam0=res.lam0,
                algorithm_cost=res.cost, oracle_cost=oracle.cost, ratio=ratio,
                bound=res.bound, kecss_ratio=None, feasible=True,
                stage_costs=tuple(s.cost for s in res.stages),
                oracle_nodes=oracle.nodes_explored,
                wall_ms=int((time.perf_counter() - t0) * 1000))
        else:
            flex = FlexInstance(inst.graph, inst.k, inst.q)
            sol = solve_fgc(flex, unit_cost=args.unit_cost)
            oracle = exact_fgc(flex)
            feas, _ = is_flex_connected(inst.graph, sol.edge_ids, inst.k, inst.q)
            ratio = Fraction(sol.cost, oracle.cost) if oracle.cost else Fraction(0)
            rec = RatioReport(
                instance_id=path.name, kind="fgc", n=inst.graph.n,
                m=inst.graph.m, k=inst.k, q=inst.q, lam0=None,
                algorithm_cost=sol.cost, oracle_cost=oracle.cost, ratio=ratio,
                bound=sol.guarantee, kecss_ratio=sol.phases[0].guarantee,
                feasible=feas, stage_costs=tuple(p.cost for p in sol.phases),
                oracle_nodes=oracle.nodes_explored,
                wall_ms=int((time.perf_counter() - t0) * 1000))
        records.append(rec)
        if rec.violated:
            violations.append(rec.instance_id)
    report = {
        "kind": "bench",
        "corpus": str(corpus),
        "records": [r.to_json_obj() for r in records],
        "summary": {"instances": len(records), "violations": violations},
        "pass": not violations,
    }
    _emit(report, args.out)
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nearcut",
        description="Near-minimum-cut covers and flexible connectivity, verified.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a seeded instance file")
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--nodes", default="6:10", help="n or lo:hi")
    p_gen.add_argument("--density", type=float, default=0.5)
    p_gen.add_argument("--unsafe-p", type=float, default=0.0, dest="unsafe_p")
    p_gen.add_argument("--cost", default="1:1", help="c or lo:hi")
    p_gen.add_argument("--cap", default="unit", help="'unit' or lo:hi")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--k", type=int, default=2)
    p_gen.add_argument("--q", type=int, default=0)
    p_gen.add_argument("--format", choices=("text", "json"), default="text")
    p_gen.set_defaults(func=_cmd_gen)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True,
                          choices=("squares", "classify", "uncrossable", "c1",
                                   "decompose", "forest", "ratios"))
    p_verify.add_argument("--config", help="JSON dict of suite overrides")
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=_cmd_verify)

    p_solve = sub.add_parser("solve", help="run an approximation algorithm")
    solve_sub = p_solve.add_subparsers(dest="problem", required=True)
    p_sa = solve_sub.add_parser("augment")
    p_sa.add_argument("--input", required=True)
    p_sa.add_argument("--k", type=int)
    p_sa.add_argument("--single-level-solver", choices=("exact", "pd2"),
                      default="pd2", dest="single_level_solver")
    p_sa.add_argument("--out")
    p_sa.set_defaults(func=_cmd_solve_augment)
    p_sf = solve_sub.add_parser("fgc")
    p_sf.add_argument("--input", required=True)
    p_sf.add_argument("--k", type=int)
    p_sf.add_argument("--q", type=int)
    p_sf.add_argument("--unit-cost", action="store_true", dest="unit_cost")
    p_sf.add_argument("--kecss", choices=("exact", "approx2"), default="approx2")
    p_sf.add_argument("--out")
    p_sf.set_defaults(func=_cmd_solve_fgc)

    p_oracle = sub.add_parser("oracle", help="exact optimum by branch and bound")
    oracle_sub = p_oracle.add_subparsers(dest="problem", required=True)
    for name in ("augment", "fgc"):
        p_o = oracle_sub.add_parser(name)
        p_o.add_argument("--input", required=True)
        p_o.add_argument("--k", type=int)
        if name == "fgc":
            p_o.add_argument("--q", type=int)
        p_o.add_argument("--out")
        p_o.set_defaults(func=_cmd_oracle)

    p_bench = sub.add_parser("bench", help="solve + oracle over a corpus dir")
    p_bench.add_argument("--corpus", required=True)
    p_bench.add_argument("--out")
    p_bench.add_argument("--kind", choices=("auto", "augment", "fgc"), default="auto")
    p_bench.add_argument("--unit-cost", action="store_true", dest="unit_cost")
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 1
    except NearcutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
