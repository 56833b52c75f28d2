"""Squares of crossing cuts, set-family structure, and decompositions.

Two proper node sets A, B with all four corner sets
``C1 = A&B, C2 = A-B, C3 = V-(A|B), C4 = B-A`` non-empty contract to a
four-node capacitated "square": side capacities ``z = C1C2, y = C2C3,
w = C3C4, x = C4C1`` and diagonals ``a = C2C4, b = C1C3``.  With
``alpha = dA + d1 - d2`` the capacities satisfy, in every labeling::

    x = alpha/2 - b          y = d2 - d1 - a + alpha/2
    z = d1 - alpha/2         w = dB - d1 - a - b + alpha/2
    d1 + d3 = dA + dB - 2a   d2 + d4 = dA + dB - 2b

Squares are normalized so that d1 is a minimum corner degree, d2 <= d4,
and a >= b when d1 == d2; all claims about near-minimum cuts are stated
against that labeling.  For cut values restricted to {lam, lam+1} the
capacity patterns fall into a short, exhaustive case list.

Families of cuts are stored as explicit member lists; the predicates
here (laminar / uncrossable / symmetric proper crossing) quantify over
strongly crossing pairs, since pairs with an empty corner satisfy them
for free.  Membership is tested up to complement except where symmetry
is itself the property under test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .errors import InputError, InvariantError, PreconditionError
from .multigraph import (
    EdgeFilter,
    Multigraph,
    canonical_mask,
    complement_mask,
    cut_value_array,
    full_mask,
    is_proper_subset,
    mask_from_nodes,
    min_cut_value,
    nodes_from_mask,
    resolve_filter,
    subgraph,
)

# ---------------------------------------------------------------------------
# Crossing predicates


def _check_ground(a: int, b: int, n: int) -> None:
    if not (0 < n):
        raise InputError("ground set must be non-empty")
    fm = full_mask(n)
    if a & ~fm or b & ~fm:
        raise InputError("set mask outside the ground set")
    if not is_proper_subset(a, n) or not is_proper_subset(b, n):
        raise InputError("crossing is defined for non-empty proper subsets")


def crosses(a: int, b: int, n: int) -> bool:
    """Weak crossing: A&B and V-(A|B) both non-empty."""
    _check_ground(a, b, n)
    return (a & b) != 0 and (a | b) != full_mask(n)


def crosses_strongly(a: int, b: int, n: int) -> bool:
    """All four corner sets non-empty."""
    _check_ground(a, b, n)
    return ((a & b) != 0 and (a & ~b) != 0 and (b & ~a) != 0
            and (a | b) != full_mask(n))


def corner_masks(a: int, b: int, n: int) -> tuple[int, int, int, int]:
    """(C1, C2, C3, C4) = (A&B, A-B, V-(A|B), B-A)."""
    fm = full_mask(n)
    return (a & b, a & ~b & fm, ~(a | b) & fm, b & ~a & fm)


# ---------------------------------------------------------------------------
# Set families


@dataclass(frozen=True)
class SetFamily:
    """Explicit list of node subsets over a ground set of size n.

    Members are stored as given (an orientation-sensitive family keeps
    both sides); `canonical()` collapses complement pairs onto the side
    avoiding node 0.
    """

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(m) for m in self.members))
        seen = set()
        for m in self.members:
            if not is_proper_subset(m, self.n):
                raise InputError(f"family member {m:#x} not a non-empty proper subset")
            if m in seen:
                raise InputError(f"duplicate family member {m:#x}")
            seen.add(m)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(n, tuple(mask_from_nodes(s) for s in sets))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SetFamily":
        return cls(n, tuple(masks))

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def contains_cut(self, mask: int) -> bool:
        """Membership up to complement (a cut equals its complement)."""
        return mask in self.member_set or complement_mask(mask, self.n) in self.member_set

    def canonical(self) -> "SetFamily":
        out = []
        seen = set()
        for m in self.members:
            c = canonical_mask(m, self.n)
            if c not in seen:
                seen.add(c)
                out.append(c)
        return SetFamily(self.n, tuple(sorted(out)))

    def symmetric_closure(self) -> "SetFamily":
        out = list(self.members)
        seen = set(out)
        for m in self.members:
            c = complement_mask(m, self.n)
            if c not in seen:
                seen.add(c)
                out.append(c)
        return SetFamily(self.n, tuple(out))

    def member_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(nodes_from_mask(m)) for m in self.members)


def is_laminar(fam: SetFamily) -> tuple[bool, Optional[tuple[int, int]]]:
    """No two members overlap without nesting; witness pair on failure."""
    ms = fam.members
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            a, b = ms[i], ms[j]
            if a & b and a & ~b and b & ~a:
                return False, (a, b)
    return True, None


def is_uncrossable(fam: SetFamily) -> tuple[bool, Optional[tuple[int, int]]]:
    """Every strongly crossing pair keeps (A&B, A|B) or (A-B, B-A) in the family.

    Membership is up to complement; pairs with an empty corner satisfy
    the condition automatically and are skipped.
    """
    ms = fam.members
    n = fam.n
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            a, b = ms[i], ms[j]
            if not crosses_strongly(a, b, n):
                continue
            c1, c2, c3, c4 = corner_masks(a, b, n)
            union = a | b
            if fam.contains_cut(c1) and fam.contains_cut(union):
                continue
            if fam.contains_cut(c2) and fam.contains_cut(c4):
                continue
            return False, (a, b)
    return True, None


def is_symmetric_proper_crossing(fam: SetFamily) -> tuple[bool, Optional[tuple]]:
    """Symmetric family, closed under crossing intersections/unions, and the
    symmetric difference of a strongly crossing pair is never a member."""
    ms = fam.members
    n = fam.n
    for m in ms:
        if complement_mask(m, n) not in fam.member_set:
            return False, (m,)
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            a, b = ms[i], ms[j]
            if not crosses_strongly(a, b, n):
                continue
            if (a & b) not in fam.member_set or (a | b) not in fam.member_set:
                return False, (a, b)
            if (a ^ b) in fam.member_set:
                return False, (a, b)
    return True, None


# ---------------------------------------------------------------------------
# Squares


class SquareCase(enum.Enum):
    MIN_MIN = "MinMin"
    MIN_PLUS_ODD = "MinPlusOdd"
    MIN_PLUS_EVEN = "MinPlusEven"
    PP_A = "PP_a"
    PP_B = "PP_b"
    PP_C = "PP_c"
    PP_D = "PP_d"
    PP_E = "PP_e"
    PP_F = "PP_f"
    OTHER = "Other"


@dataclass(frozen=True)
class Square:
    """Normalized square of two strongly crossing cuts.

    ``corners`` are the masks of C1..C4; ``degrees`` their cut values;
    side capacities follow the fixed naming x=C4C1, y=C2C3, z=C1C2,
    w=C3C4; diagonals a=C2C4, b=C1C3.  ``da``/``db`` are the values of
    the two generating cuts C1|C2 and C1|C4, and ``lam`` the base
    connectivity used when classifying.
    """

    corners: tuple[int, int, int, int]
    degrees: tuple[int, int, int, int]
    x: int
    y: int
    z: int
    w: int
    a: int
    b: int
    da: int
    db: int
    alpha: int
    lam: int

    @property
    def sides(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.z, self.w)

    def formula_residuals(self) -> tuple[int, int, int, int]:
        """Deviation of the four solved side capacities from their formulas.

        All four are zero for every square; evaluated in doubled form so
        no fractional intermediate appears.
        """
        d1, d2, _, _ = self.degrees
        return (
            2 * self.x - (self.alpha - 2 * self.b),
            2 * self.y - (2 * (d2 - d1 - self.a) + self.alpha),
            2 * self.z - (2 * d1 - self.alpha),
            2 * self.w - (2 * (self.db - d1 - self.a - self.b) + self.alpha),
        )

    def counting_residuals(self) -> tuple[int, int]:
        """Deviation from d1+d3 = dA+dB-2a and d2+d4 = dA+dB-2b."""
        d1, d2, d3, d4 = self.degrees
        return (
            d1 + d3 - (self.da + self.db - 2 * self.a),
            d2 + d4 - (self.da + self.db - 2 * self.b),
        )


# Corner orderings that preserve the side/diagonal structure: the square's
# cycle C1-C2-C3-C4 admits four rotations and four reflections.
_DIHEDRAL = (
    (0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2),
    (0, 3, 2, 1), (1, 0, 3, 2), (2, 1, 0, 3), (3, 2, 1, 0),
)


def build_square(g: Multigraph, a_mask: int, b_mask: int,
                 filt: EdgeFilter = "all", weighted: bool = False,
                 lam: Optional[int] = None) -> Square:
    """Build the normalized square of two strongly crossing cuts.

    Capacities are edge counts under the filter (or capacity sums when
    ``weighted``).  Normalization picks, among the eight structure-
    preserving corner labelings, those satisfying d1 <= d2,d3,d4,
    d2 <= d4 and (a >= b when d1 == d2), breaking ties by the smallest
    (degrees, diagonals, sides, corners) tuple.
    """
    if not crosses_strongly(a_mask, b_mask, g.n):
        raise InputError("build_square requires strongly crossing sets")
    corners = corner_masks(a_mask, b_mask, g.n)
    pred = resolve_filter(filt)
    where = [0] * g.n
    for ci, cm in enumerate(corners):
        for v in nodes_from_mask(cm):
            where[v] = ci
    mat = [[0] * 4 for _ in range(4)]
    for e in g.edges:
        if not pred(e):
            continue
        cu, cv = where[e.u], where[e.v]
        if cu == cv:
            continue
        wgt = e.capacity if weighted else 1
        mat[cu][cv] += wgt
        mat[cv][cu] += wgt
    deg = [sum(mat[i]) for i in range(4)]

    best = None
    for p in _DIHEDRAL:
        d = (deg[p[0]], deg[p[1]], deg[p[2]], deg[p[3]])
        if not (d[0] <= d[1] and d[0] <= d[2] and d[0] <= d[3] and d[1] <= d[3]):
            continue
        diag_a = mat[p[1]][p[3]]
        diag_b = mat[p[0]][p[2]]
        if d[0] == d[1] and diag_a < diag_b:
            continue
        sz = mat[p[0]][p[1]]
        sy = mat[p[1]][p[2]]
        sw = mat[p[2]][p[3]]
        sx = mat[p[3]][p[0]]
        key = (d, (diag_a, diag_b), (sx, sy, sz, sw),
               tuple(corners[p[i]] for i in range(4)))
        if best is None or key < best[0]:
            best = (key, p, d, diag_a, diag_b, sx, sy, sz, sw)
    if best is None:
        raise InvariantError("no corner labeling satisfies the normalization rules")
    _, p, d, diag_a, diag_b, sx, sy, sz, sw = best
    da = sx + sy + diag_a + diag_b
    db = sz + sw + diag_a + diag_b
    alpha = da + d[0] - d[1]
    if alpha % 2:
        raise InvariantError(f"alpha = {alpha} is odd; counting identity violated")
    if lam is None:
        lam = min_cut_value(g, filt, weighted)
    return Square(corners=tuple(corners[p[i]] for i in range(4)), degrees=d,
                  x=sx, y=sy, z=sz, w=sw, a=diag_a, b=diag_b,
                  da=da, db=db, alpha=alpha, lam=lam)


def _expected_cases(lam: int) -> tuple[tuple[SquareCase, tuple, int, int, tuple], ...]:
    """(case, sorted cut values, a, b, sides) patterns for connectivity lam."""
    out = []
    if lam % 2 == 0:
        h = lam // 2
        out.append((SquareCase.MIN_MIN, (lam, lam), 0, 0, (h, h, h, h)))
        out.append((SquareCase.MIN_PLUS_EVEN, (lam, lam + 1), 0, 0, (h, h, h, h + 1)))
        out.append((SquareCase.PP_A, (lam + 1, lam + 1), 0, 0, (h, h + 1, h, h + 1)))
        out.append((SquareCase.PP_B, (lam + 1, lam + 1), 1, 0, (h, h, h, h)))
    else:
        lo, hi = (lam - 1) // 2, (lam + 1) // 2
        top = (lam + 3) // 2
        out.append((SquareCase.MIN_PLUS_ODD, (lam, lam + 1), 0, 0, (hi, hi, lo, hi)))
        out.append((SquareCase.PP_C, (lam + 1, lam + 1), 0, 0, (hi, hi, lo, top)))
        out.append((SquareCase.PP_D, (lam + 1, lam + 1), 1, 0, (hi, lo, lo, hi)))
        out.append((SquareCase.PP_E, (lam + 1, lam + 1), 1, 1, (lo, lo, lo, lo)))
        out.append((SquareCase.PP_F, (lam + 1, lam + 1), 0, 0, (hi, hi, hi, hi)))
    return tuple(out)


def classify_square(sq: Square) -> SquareCase:
    """Match a square of {lam, lam+1}-valued cuts against the case list."""
    lam = sq.lam
    vals = tuple(sorted((sq.da, sq.db)))
    allowed = {(lam, lam), (lam, lam + 1), (lam + 1, lam + 1)}
    if vals not in allowed:
        raise InputError(
            f"classification needs cut values in {{{lam}, {lam + 1}}}, got {vals}")
    for case, want_vals, wa, wb, sides in _expected_cases(lam):
        if vals == want_vals and (sq.a, sq.b) == (wa, wb) and sq.sides == sides:
            return case
    return SquareCase.OTHER


# ---------------------------------------------------------------------------
# Family quotients


@dataclass(frozen=True)
class QuotientEdge:
    a: int
    b: int
    capacity: int
    unsafe_tally: int

    @property
    def color(self) -> str:
        if self.unsafe_tally >= 2:
            return "red"
        if self.unsafe_tally == 1:
            return "blue"
        return "black"


@dataclass(frozen=True)
class QuotientGraph:
    """Contraction by the 'separated by no family member' equivalence.

    Edge capacity counts merged parallel edges (or sums capacities when
    built weighted); ``unsafe_tally`` counts merged unsafe edges, which
    drives the red/blue/black coloring.
    """

    n_classes: int
    classes: tuple[int, ...]     # class index -> node mask
    class_of: tuple[int, ...]    # node -> class index
    edges: tuple[QuotientEdge, ...]

    def compatible(self, mask: int) -> bool:
        """True when the cut does not split any class."""
        for cm in self.classes:
            inter = mask & cm
            if inter and inter != cm:
                return False
        return True

    def class_mask(self, mask: int) -> int:
        """Class-index bitmask of a compatible node mask."""
        out = 0
        for ci, cm in enumerate(self.classes):
            if mask & cm:
                if (mask & cm) != cm:
                    raise InputError("mask splits a quotient class")
                out |= 1 << ci
        return out

    def crossing_edges(self, mask: int) -> tuple[QuotientEdge, ...]:
        cm = self.class_mask(mask)
        return tuple(e for e in self.edges
                     if ((cm >> e.a) & 1) != ((cm >> e.b) & 1))

    def cut_value(self, class_bits: int) -> int:
        return sum(e.capacity for e in self.edges
                   if ((class_bits >> e.a) & 1) != ((class_bits >> e.b) & 1))


def family_quotient(g: Multigraph, fam: SetFamily, filt: EdgeFilter = "all",
                    weighted: bool = False) -> QuotientGraph:
    """Quotient of g by the classes no member of the family separates."""
    if len(fam) == 0:
        raise InputError("family_quotient needs a non-empty family")
    if fam.n != g.n:
        raise InputError("family ground set does not match the graph")
    sig_to_class: dict[tuple, int] = {}
    class_of = []
    members = fam.members
    for v in range(g.n):
        sig = tuple((m >> v) & 1 for m in members)
        if sig not in sig_to_class:
            sig_to_class[sig] = len(sig_to_class)
        class_of.append(sig_to_class[sig])
    k = len(sig_to_class)
    class_masks = [0] * k
    for v, ci in enumerate(class_of):
        class_masks[ci] |= 1 << v
    pred = resolve_filter(filt)
    merged: dict[tuple[int, int], list[int]] = {}
    for e in g.edges:
        ca, cb = class_of[e.u], class_of[e.v]
        if ca == cb:
            continue
        key = (min(ca, cb), max(ca, cb))
        acc = merged.setdefault(key, [0, 0])
        if pred(e):
            acc[0] += e.capacity if weighted else 1
        acc[1] += 1 if e.unsafe else 0
    edges = tuple(QuotientEdge(a, b, merged[(a, b)][0], merged[(a, b)][1])
                  for (a, b) in sorted(merged))
    return QuotientGraph(n_classes=k, classes=tuple(class_masks),
                         class_of=tuple(class_of), edges=edges)


# ---------------------------------------------------------------------------
# Part shapes


class PartShape(enum.Enum):
    CYCLE_UNIFORM = "CycleUniform"
    CYCLE_ONE_LIGHT = "CycleOneLight"
    CUBE = "Cube"
    OTHER = "Other"


def _is_single_cycle(qg: QuotientGraph) -> bool:
    c = qg.n_classes
    if len(qg.edges) != c or c < 3:
        return False
    deg = [0] * c
    for e in qg.edges:
        deg[e.a] += 1
        deg[e.b] += 1
    if any(d != 2 for d in deg):
        return False
    # connected + all degrees 2 + |E| = |V|  =>  one cycle
    seen = {0}
    frontier = [0]
    adj = [[] for _ in range(c)]
    for e in qg.edges:
        adj[e.a].append(e.b)
        adj[e.b].append(e.a)
    while frontier:
        u = frontier.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return len(seen) == c


def _is_cube(qg: QuotientGraph) -> bool:
    if qg.n_classes != 8 or len(qg.edges) != 12:
        return False
    if any(e.capacity != 1 for e in qg.edges):
        return False
    adj = [set() for _ in range(8)]
    for e in qg.edges:
        adj[e.a].add(e.b)
        adj[e.b].add(e.a)
    if any(len(s) != 3 for s in adj):
        return False
    target = [set(j for j in range(8) if bin(i ^ j).count("1") == 1) for i in range(8)]

    mapping = [-1] * 8
    used = [False] * 8

    def extend(i: int) -> bool:
        if i == 8:
            return True
        for t in range(8):
            if used[t]:
                continue
            if any((t in target[mapping[j]]) != (j in adj[i]) for j in range(i)):
                continue
            mapping[i] = t
            used[t] = True
            if extend(i + 1):
                return True
            mapping[i] = -1
            used[t] = False
        return False

    return extend(0)


def verify_part_shape(qg: QuotientGraph, lam: int) -> PartShape:
    """Match a part quotient against the admissible shapes for odd lam.

    A two-class quotient is the degenerate length-2 cycle whose parallel
    side edges merged into one capacitated edge of total lam+1; it is
    reported as CycleUniform.
    """
    if lam < 1 or lam % 2 == 0:
        raise InputError(f"part shapes are defined for odd lam >= 1, got {lam}")
    if qg.n_classes == 2:
        if len(qg.edges) == 1 and qg.edges[0].capacity == lam + 1:
            return PartShape.CYCLE_UNIFORM
        return PartShape.OTHER
    if _is_single_cycle(qg):
        caps = sorted(e.capacity for e in qg.edges)
        uniform = (lam + 1) // 2
        if all(c == uniform for c in caps):
            return PartShape.CYCLE_UNIFORM
        light, heavy = (lam - 1) // 2, (lam + 3) // 2
        if (light >= 1 and caps[0] == light
                and all(c == heavy for c in caps[1:])):
            return PartShape.CYCLE_ONE_LIGHT
        return PartShape.OTHER
    if lam == 3 and _is_cube(qg):
        return PartShape.CUBE
    return PartShape.OTHER


# ---------------------------------------------------------------------------
# Decomposition of (lam+1)-cuts, lam odd


@dataclass(frozen=True)
class CutPart:
    """One part: its (lam+1)-cut members, the lam-cuts compatible with its
    quotient, the quotient itself and the verified shape."""

    members: SetFamily
    lambda_members: SetFamily
    quotient: QuotientGraph
    shape: PartShape


@dataclass(frozen=True)
class DecompositionResult:
    lam: int
    parts: tuple[CutPart, ...]
    diagnostics: tuple[str, ...]

    def coverage(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for part in self.parts:
            for m in part.members.members:
                counts[m] = counts.get(m, 0) + 1
        return counts


def _component_split(masks: tuple[int, ...], n: int) -> list[list[int]]:
    """Connected components of the strong-crossing graph on the masks."""
    idx = {m: i for i, m in enumerate(masks)}
    parent = list(range(len(masks)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if crosses_strongly(masks[i], masks[j], n):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i, m in enumerate(masks):
        groups.setdefault(find(i), []).append(m)
    return [sorted(g) for g in sorted(groups.values(), key=lambda g: min(g))]


def decompose_plus_cuts(g: Multigraph, lam: int,
                        filt: EdgeFilter = "all") -> DecompositionResult:
    """Group the (lam+1)-cuts into shape-verified parts.

    Grouping is the transitive closure of strong crossing; each group's
    part is then widened to every (lam+1)-cut compatible with the group
    quotient, and parts subsumed by a larger part are dropped.  lam-cuts
    compatible with a part's quotient are attached as lambda_members.
    Shape verification failures are reported as diagnostics, never
    raised.
    """
    if lam < 1 or lam % 2 == 0:
        raise InputError(f"decomposition is defined for odd lam >= 1, got {lam}")
    if min_cut_value(g, filt) < lam:
        raise PreconditionError(f"graph is not {lam}-edge-connected")
    vals = cut_value_array(g, filt)
    plus = tuple(int(i) << 1 for i in range(1, len(vals)) if int(vals[i]) == lam + 1)
    lam_cuts = tuple(int(i) << 1 for i in range(1, len(vals)) if int(vals[i]) == lam)
    if not plus:
        return DecompositionResult(lam=lam, parts=(), diagnostics=())

    groups = _component_split(plus, g.n)
    raw: list[tuple[tuple[int, ...], QuotientGraph]] = []
    for group in groups:
        qg = family_quotient(g, SetFamily(g.n, tuple(group)), filt)
        widened = tuple(m for m in plus if qg.compatible(m))
        raw.append((widened, qg))

    # Absorb parts whose member set is contained in a larger part.
    raw.sort(key=lambda item: (-len(item[0]), item[0]))
    kept: list[tuple[tuple[int, ...], QuotientGraph]] = []
    kept_sets: list[frozenset] = []
    for members, qg in raw:
        mset = frozenset(members)
        if any(mset <= other for other in kept_sets):
            continue
        kept.append((members, qg))
        kept_sets.append(mset)

    diagnostics: list[str] = []
    parts = []
    for members, qg in kept:
        shape = verify_part_shape(qg, lam)
        if shape is PartShape.OTHER:
            diagnostics.append(
                f"part with {len(members)} members has unrecognized quotient shape "
                f"({qg.n_classes} classes, {len(qg.edges)} edges)")
        attached = tuple(m for m in lam_cuts if qg.compatible(m))
        parts.append(CutPart(
            members=SetFamily(g.n, members),
            lambda_members=SetFamily(g.n, attached),
            quotient=qg,
            shape=shape))

    result = DecompositionResult(lam=lam, parts=tuple(parts),
                                 diagnostics=tuple(diagnostics))
    for mask, count in result.coverage().items():
        if count > 2:
            diagnostics.append(
                f"cut {nodes_from_mask(mask)} appears in {count} parts (> 2)")
    return DecompositionResult(lam=lam, parts=tuple(parts),
                               diagnostics=tuple(diagnostics))


# ---------------------------------------------------------------------------
# F2 split for odd k


@dataclass(frozen=True)
class F2Decomposition:
    f_prime: SetFamily        # uncrossable side
    f_dprime: SetFamily       # symmetric proper crossing side (closed)
    decomposition: DecompositionResult
    diagnostics: tuple[str, ...]


def decompose_F2_odd(g: Multigraph, h_edges: Iterable[int], k: int) -> F2Decomposition:
    """Split the (k+1)-cuts carrying >= 2 unsafe edges, k odd.

    A member goes to the uncrossable side when some containing part
    (with a non-degenerate quotient) shows a red merged edge across it,
    or when it strongly crosses no (k+1)-cut at all; the rest, closed
    under complement, form the symmetric proper crossing side.  Both
    structure predicates are verified before returning.
    """
    if k < 1 or k % 2 == 0:
        raise InputError(f"this decomposition needs odd k >= 1, got {k}")
    h = subgraph(g, h_edges)
    if min_cut_value(h) < k:
        raise PreconditionError(f"subgraph is not {k}-edge-connected")
    d_arr = cut_value_array(h, "all")
    u_arr = cut_value_array(h, "unsafe")
    for i in range(1, len(d_arr)):
        if int(d_arr[i]) == k and int(u_arr[i]) >= 1:
            raise PreconditionError(
                "subgraph has a k-cut with an unsafe edge (not (k,1)-flex-connected)",
                witness=i << 1)
    f2 = tuple(i << 1 for i in range(1, len(d_arr))
               if int(d_arr[i]) == k + 1 and int(u_arr[i]) >= 2)

    decomp = decompose_plus_cuts(h, k)
    diagnostics = list(decomp.diagnostics)

    part_members = [frozenset(p.members.members) for p in decomp.parts]
    prime = []
    rest = []
    for mask in f2:
        containing = [p for p, ms in zip(decomp.parts, part_members) if mask in ms]
        informative = [p for p in containing if p.quotient.n_classes >= 3]
        if not informative:
            # strongly crosses nothing: safe on the uncrossable side
            prime.append(mask)
            continue
        red = False
        blue_profile_ok = False
        for p in informative:
            crossing = p.quotient.crossing_edges(mask)
            if any(e.unsafe_tally >= 2 for e in crossing):
                red = True
                break
            blues = [e for e in crossing if e.unsafe_tally == 1]
            if len(blues) == 2:
                blue_profile_ok = True
        if red:
            prime.append(mask)
        else:
            if not blue_profile_ok:
                diagnostics.append(
                    f"cut {nodes_from_mask(mask)} has neither a red merged edge nor "
                    f"an exactly-two-blue crossing profile")
            rest.append(mask)

    f_prime = SetFamily(g.n, tuple(sorted(prime)))
    f_dprime = SetFamily(g.n, tuple(sorted(rest))).symmetric_closure()

    ok, wit = is_uncrossable(f_prime)
    if not ok:
        raise InvariantError("uncrossable side failed its structure check", witness=wit)
    ok, wit = is_symmetric_proper_crossing(f_dprime)
    if not ok:
        raise InvariantError("symmetric proper crossing side failed its structure check",
                             witness=wit)
    covered = set(f_prime.members)
    for m in f_dprime.members:
        covered.add(m)
        covered.add(complement_mask(m, g.n))
    for mask in f2:
        if mask not in covered:
            raise InvariantError("decomposition lost a family member",
                                 witness=mask)
    return F2Decomposition(f_prime=f_prime, f_dprime=f_dprime,
                           decomposition=decomp, diagnostics=tuple(diagnostics))
