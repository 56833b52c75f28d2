"""Instance file format.

Text form, one instance per file: a header line ``n m k q`` followed by
``m`` edge lines ``u v cost capacity unsafe_flag base_flag`` (flags are
0/1; ``#`` starts a comment).  A JSON object with the same field names
is accepted interchangeably: ``{"n":..,"m":..,"k":..,"q":..,"edges":
[{"u":..,"v":..,"cost":..,"capacity":..,"unsafe_flag":0|1,
"base_flag":0|1},...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .multigraph import EdgeRecord, Multigraph


@dataclass(frozen=True)
class Instance:
    """A graph plus the connectivity targets carried by instance files."""

    graph: Multigraph
    k: int
    q: int


def parse_instance_text(text: str) -> Instance:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise InputError("empty instance file")
    header = rows[0][1].split()
    if len(header) != 4:
        raise InputError(f"line {rows[0][0]}: header must be 'n m k q'")
    try:
        n, m, k, q = (int(x) for x in header)
    except ValueError as exc:
        raise InputError(f"line {rows[0][0]}: non-integer header field") from exc
    if len(rows) - 1 != m:
        raise InputError(f"expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 6:
            raise InputError(
                f"line {lineno}: edge line must be 'u v cost capacity unsafe_flag base_flag'")
        try:
            u, v, cost, cap, unsafe, base = (int(x) for x in parts)
        except ValueError as exc:
            raise InputError(f"line {lineno}: non-integer edge field") from exc
        if unsafe not in (0, 1) or base not in (0, 1):
            raise InputError(f"line {lineno}: flags must be 0 or 1")
        edges.append(EdgeRecord(u, v, cost, cap, bool(unsafe), bool(base)))
    return Instance(Multigraph(n, tuple(edges)), k, q)


def parse_instance_json(obj: dict) -> Instance:
    try:
        n = int(obj["n"])
        m = int(obj["m"])
        k = int(obj["k"])
        q = int(obj["q"])
        raw_edges = obj["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad JSON instance: {exc}") from exc
    if len(raw_edges) != m:
        raise InputError(f"JSON instance: m={m} but {len(raw_edges)} edges present")
    edges = []
    for i, e in enumerate(raw_edges):
        try:
            edges.append(EdgeRecord(int(e["u"]), int(e["v"]), int(e["cost"]),
                                    int(e["capacity"]), bool(int(e["unsafe_flag"])),
                                    bool(int(e["base_flag"]))))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"JSON instance edge {i}: {exc}") from exc
    return Instance(Multigraph(n, tuple(edges)), k, q)


def parse_instance(text: str) -> Instance:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON instance: {exc}") from exc
        return parse_instance_json(obj)
    return parse_instance_text(text)


def load_instance(path) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_instance(text)


def instance_to_text(inst: Instance) -> str:
    g = inst.graph
    lines = [f"{g.n} {g.m} {inst.k} {inst.q}"]
    for e in g.edges:
        lines.append(f"{e.u} {e.v} {e.cost} {e.capacity} {int(e.unsafe)} {int(e.base)}")
    return "\n".join(lines) + "\n"


def instance_to_json_obj(inst: Instance) -> dict:
    g = inst.graph
    return {
        "n": g.n,
        "m": g.m,
        "k": inst.k,
        "q": inst.q,
        "edges": [
            {"u": e.u, "v": e.v, "cost": e.cost, "capacity": e.capacity,
             "unsafe_flag": int(e.unsafe), "base_flag": int(e.base)}
            for e in g.edges
        ],
    }


def save_instance(inst: Instance, path, fmt: str = "text") -> None:
    if fmt == "text":
        payload = instance_to_text(inst)
    elif fmt == "json":
        payload = json.dumps(instance_to_json_obj(inst), indent=2, sort_keys=True) + "\n"
    else:
        raise InputError(f"unknown instance format {fmt!r}")
    Path(path).write_text(payload)
