"""Two-dimensional identification complexes (Delta-complexes).

A triangle is an ordered triple of sides; each side is an edge together with
an orientation flag telling whether the side runs along the edge (``"+"``,
tail to head) or against it (``"-"``).  Nothing here assumes the complex is
simplicial: edges may be loops and a triangle may use the same edge on
several sides, which is exactly what the dunce hat needs.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from duncehat.linalg import rank

Side = tuple[str, str]
DimPair = tuple[int, int]
FREE_EDGE: DimPair = (1, 2)
FREE_VERTEX: DimPair = (0, 1)
DEFAULT_BUDGET = 10**6


class InvalidComplexError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid complex: " + "; ".join(self.violations))


class CollapseError(ValueError):
    pass


@dataclass(frozen=True)
class DeltaComplex2:
    vertices: tuple[str, ...] = ()
    edges: Mapping[str, tuple[str, str]] = field(default_factory=dict)
    triangles: Mapping[str, tuple[Side, Side, Side]] = field(default_factory=dict)

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Mapping, triangles: Mapping) -> DeltaComplex2:
        return cls(
            tuple(vertices),
            {e: (str(t), str(h)) for e, (t, h) in edges.items()},
            {t: tuple((str(e), str(o)) for e, o in sides) for t, sides in triangles.items()},
        )

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.triangles)

    def side_start(self, side: Side) -> str:
        tail, head = self.edges[side[0]]
        return tail if side[1] == "+" else head

    def side_end(self, side: Side) -> str:
        tail, head = self.edges[side[0]]
        return head if side[1] == "+" else tail

    def restrict(self, vertices: Iterable[str], edges: Iterable[str], triangles: Iterable[str]) -> DeltaComplex2:
        vs, es, ts = set(vertices), set(edges), set(triangles)
        return DeltaComplex2(
            tuple(v for v in self.vertices if v in vs),
            {e: ends for e, ends in self.edges.items() if e in es},
            {t: s for t, s in self.triangles.items() if t in ts},
        )


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(cx: DeltaComplex2) -> ValidationReport:
    out: list[str] = []
    for v, n in Counter(cx.vertices).items():
        if n > 1:
            out.append(f"duplicate vertex {v!r}")
    vset = set(cx.vertices)
    for e, ends in cx.edges.items():
        if len(ends) != 2:
            out.append(f"edge {e!r} must have exactly two endpoints")
            continue
        for v in ends:
            if v not in vset:
                out.append(f"edge {e!r} references missing vertex {v!r}")
    for t, sides in cx.triangles.items():
        if len(sides) != 3:
            out.append(f"triangle {t!r} must have exactly three sides")
            continue
        ok = True
        for e, o in sides:
            if e not in cx.edges:
                out.append(f"triangle {t!r} references missing edge {e!r}")
                ok = False
            if o not in ("+", "-"):
                out.append(f"triangle {t!r} has bad orientation flag {o!r} on edge {e!r}")
                ok = False
        if ok and any(len(cx.edges[e]) != 2 for e, _ in sides):
            ok = False
        if ok:
            for k in range(3):
                if cx.side_end(sides[k]) != cx.side_start(sides[(k + 1) % 3]):
                    out.append(f"triangle {t!r} does not close up at corner {k + 1}")
    return ValidationReport(tuple(out))


def _require_valid(cx: DeltaComplex2) -> None:
    report = validate(cx)
    if not report.ok:
        raise InvalidComplexError(report.violations)


def euler_characteristic(cx: DeltaComplex2) -> int:
    _require_valid(cx)
    nv, ne, nt = cx.counts
    return nv - ne + nt


def boundary_matrices(cx: DeltaComplex2) -> tuple[list[list[int]], list[list[int]]]:
    """Cellular boundary maps as (d1: V x E, d2: E x T) integer matrices.

    Rows and columns follow the declaration order of the cells.
    """
    vidx = {v: i for i, v in enumerate(cx.vertices)}
    eidx = {e: i for i, e in enumerate(cx.edges)}
    d1 = [[0] * len(cx.edges) for _ in cx.vertices]
    for j, (tail, head) in enumerate(cx.edges.values()):
        d1[vidx[head]][j] += 1
        d1[vidx[tail]][j] -= 1
    d2 = [[0] * len(cx.triangles) for _ in cx.edges]
    for j, sides in enumerate(cx.triangles.values()):
        for e, o in sides:
            d2[eidx[e]][j] += 1 if o == "+" else -1
    return d1, d2


def betti_numbers(cx: DeltaComplex2) -> tuple[int, int, int]:
    """Ranks of rational (co)homology; cohomology and homology agree over a field."""
    _require_valid(cx)
    nv, ne, nt = cx.counts
    d1, d2 = boundary_matrices(cx)
    r1, r2 = rank(d1), rank(d2)
    return nv - r1, ne - r1 - r2, nt - r2


def is_connected(cx: DeltaComplex2) -> bool:
    if not cx.vertices:
        return False
    adj: dict[str, set[str]] = {v: set() for v in cx.vertices}
    for tail, head in cx.edges.values():
        adj[tail].add(head)
        adj[head].add(tail)
    seen = {cx.vertices[0]}
    stack = [cx.vertices[0]]
    while stack:
        for w in adj[stack.pop()] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == len(cx.vertices)


@dataclass(frozen=True, order=True)
class FreePair:
    dims: DimPair
    face: str
    cofacet: str


def free_faces(cx: DeltaComplex2) -> list[FreePair]:
    """Free (face, cofacet) pairs, sorted by (dimension pair, face, cofacet).

    An edge is free when it occurs exactly once among all triangle sides.  A
    vertex is free when it occurs exactly once among all edge endpoints (a
    loop counts twice) and that edge is not a side of any triangle, since only
    a maximal cell may be removed.
    """
    side_use = Counter(e for sides in cx.triangles.values() for e, _ in sides)
    owner = {e: t for t, sides in cx.triangles.items() for e, _ in sides}
    out = [FreePair(FREE_EDGE, e, owner[e]) for e, n in side_use.items() if n == 1]
    end_use: Counter[str] = Counter()
    end_owner: dict[str, str] = {}
    for e, (tail, head) in cx.edges.items():
        for v in (tail, head):
            end_use[v] += 1
            end_owner[v] = e
    out += [
        FreePair(FREE_VERTEX, v, end_owner[v])
        for v, n in end_use.items()
        if n == 1 and side_use[end_owner[v]] == 0
    ]
    return sorted(out)


def elementary_collapse(cx: DeltaComplex2, pair: FreePair) -> DeltaComplex2:
    if pair not in free_faces(cx):
        raise CollapseError(f"face not free: {pair.face!r} in {pair.cofacet!r}")
    if pair.dims == FREE_EDGE:
        return cx.restrict(cx.vertices, set(cx.edges) - {pair.face}, set(cx.triangles) - {pair.cofacet})
    return cx.restrict(set(cx.vertices) - {pair.face}, set(cx.edges) - {pair.cofacet}, cx.triangles)


@dataclass(frozen=True)
class Collapsible:
    certificate: tuple[FreePair, ...]
    explored: int


@dataclass(frozen=True)
class NotCollapsible:
    reason: str
    explored: int = 0


@dataclass(frozen=True)
class Unknown:
    explored: int


CollapseVerdict = Collapsible | NotCollapsible | Unknown


class _BudgetExhausted(Exception):
    pass


def collapse_search(cx: DeltaComplex2, budget: int = DEFAULT_BUDGET) -> CollapseVerdict:
    """Decide collapsibility to a point by exhaustive backtracking.

    Candidate pairs are tried in sorted order, so the certificate returned is
    the first one in that order.  States already shown to be dead ends are
    memoized; a ``NotCollapsible`` answer therefore means the whole tree was
    exhausted.
    """
    _require_valid(cx)
    if budget < 1:
        raise ValueError("budget must be positive")
    if not is_connected(cx):
        raise ValueError("complex is not connected; collapsibility is decided per component")
    if cx.counts == (1, 0, 0):
        return Collapsible((), 1)
    if not free_faces(cx):
        return NotCollapsible("no free faces exist", 1)

    dead: set[tuple[frozenset, frozenset, frozenset]] = set()
    explored = 0
    path: list[FreePair] = []

    def visit(state: DeltaComplex2) -> bool:
        nonlocal explored
        explored += 1
        if explored > budget:
            raise _BudgetExhausted
        if state.counts == (1, 0, 0):
            return True
        key = (frozenset(state.vertices), frozenset(state.edges), frozenset(state.triangles))
        if key in dead:
            return False
        for pair in free_faces(state):
            path.append(pair)
            if visit(elementary_collapse(state, pair)):
                return True
            path.pop()
        dead.add(key)
        return False

    try:
        found = visit(cx)
    except _BudgetExhausted:
        return Unknown(budget)
    if found:
        return Collapsible(tuple(path), explored)
    return NotCollapsible("collapse tree exhausted without reaching a vertex", explored)


def replay(cx: DeltaComplex2, certificate: Iterable[FreePair]) -> DeltaComplex2:
    """Apply a certificate step by step; raises CollapseError on an illegal step."""
    for pair in certificate:
        cx = elementary_collapse(cx, pair)
    return cx


def dunce_hat() -> DeltaComplex2:
    # Triangle (123) with sides 1->2, 2->3, 3->1; (12), (23) and (13) all go
    # to the loop e1, so the side 3->1 runs against it.
    return DeltaComplex2(
        ("v1",),
        {"e1": ("v1", "v1")},
        {"t1": (("e1", "+"), ("e1", "+"), ("e1", "-"))},
    )


def disc() -> DeltaComplex2:
    return DeltaComplex2(
        ("v1", "v2", "v3"),
        {"e1": ("v1", "v2"), "e2": ("v2", "v3"), "e3": ("v1", "v3")},
        {"t1": (("e1", "+"), ("e2", "+"), ("e3", "-"))},
    )


def torus() -> DeltaComplex2:
    # Square a b a^-1 b^-1 cut along the diagonal c.
    return DeltaComplex2(
        ("v1",),
        {"a": ("v1", "v1"), "b": ("v1", "v1"), "c": ("v1", "v1")},
        {
            "t1": (("a", "+"), ("b", "+"), ("c", "-")),
            "t2": (("b", "+"), ("a", "+"), ("c", "-")),
        },
    )


def polygon_surface(word: Sequence[tuple[str, str]]) -> DeltaComplex2:
    """Closed surface from a polygon word, fan-triangulated from corner 0.

    ``word`` lists the polygon sides as (edge, orientation) pairs, side k
    running from corner k to corner k+1; every edge should appear twice.
    Corners are identified as the side pairings force, and the diagonals from
    corner 0 become the extra edges ``d2, d3, ...``.
    """
    n = len(word)
    if n < 3:
        raise ValueError("polygon needs at least three sides")
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ends: dict[str, tuple[int, int]] = {}
    for k, (e, o) in enumerate(word):
        tail, head = (k, (k + 1) % n) if o == "+" else ((k + 1) % n, k)
        if e in ends:
            t0, h0 = ends[e]
            parent[find(tail)] = find(t0)
            parent[find(head)] = find(h0)
        else:
            ends[e] = (tail, head)
    roots = sorted({find(i) for i in range(n)})
    name = {r: f"v{i + 1}" for i, r in enumerate(roots)}

    def corner(i: int) -> str:
        return name[find(i)]

    edges = {e: (corner(t), corner(h)) for e, (t, h) in ends.items()}
    for k in range(2, n - 1):
        edges[f"d{k}"] = (corner(0), corner(k))
    triangles = {}
    for k in range(1, n - 1):
        first = word[0] if k == 1 else (f"d{k}", "+")
        last = word[n - 1] if k == n - 2 else (f"d{k + 1}", "-")
        triangles[f"t{k}"] = (first, word[k], last)
    return DeltaComplex2(tuple(name[r] for r in roots), edges, triangles)


def _edge_maps(a: DeltaComplex2, b: DeltaComplex2):
    """Yield (vertex map, edge map, edge flips) pairs matching edge endpoints."""
    bv = list(b.vertices)
    be = list(b.edges)
    for vperm in itertools.permutations(bv):
        vmap = dict(zip(a.vertices, vperm))
        for eperm in itertools.permutations(be):
            emap = dict(zip(a.edges, eperm))
            flips = {}
            ok = True
            for e, (t, h) in a.edges.items():
                bt, bh = b.edges[emap[e]]
                if (vmap[t], vmap[h]) == (bt, bh):
                    flips[e] = False
                elif (vmap[h], vmap[t]) == (bt, bh):
                    flips[e] = True
                else:
                    ok = False
                    break
                if bt == bh and vmap[t] == vmap[h]:
                    # A loop may go either way; both are tried below.
                    flips[e] = None
            if ok:
                yield vmap, emap, flips


def _triangle_forms(sides: Sequence[Side]) -> list[tuple[Side, ...]]:
    """All rotations of the side word and of its inverse (reversed, flipped)."""
    inv = tuple((e, "-" if o == "+" else "+") for e, o in reversed(sides))
    out = []
    for word in (tuple(sides), inv):
        for k in range(3):
            out.append(word[k:] + word[:k])
    return out


def is_isomorphic(a: DeltaComplex2, b: DeltaComplex2, max_cells: int = 8) -> bool:
    """Brute-force isomorphism test up to renaming, edge reversal and triangle reorientation.

    Meant for the handful-of-cells complexes that appear as dual complexes of
    small constructs; refuses inputs with more than ``max_cells`` cells of any
    one dimension.
    """
    if a.counts != b.counts:
        return False
    if max(a.counts) > max_cells:
        raise ValueError("complex too large for brute-force isomorphism")
    _require_valid(a)
    _require_valid(b)
    b_words = {t: set(_triangle_forms(s)) for t, s in b.triangles.items()}
    for vmap, emap, flips in _edge_maps(a, b):
        free = [e for e, f in flips.items() if f is None]
        for choice in itertools.product((False, True), repeat=len(free)):
            fl = dict(flips)
            fl.update(zip(free, choice))

            def image(side: Side) -> Side:
                e, o = side
                if fl[e]:
                    o = "-" if o == "+" else "+"
                return emap[e], o

            remaining = dict(b_words)
            matched = True
            for sides in a.triangles.values():
                word = tuple(image(s) for s in sides)
                hit = next((t for t, forms in remaining.items() if word in forms), None)
                if hit is None:
                    matched = False
                    break
                del remaining[hit]
            if matched:
                return True
    return False


def half_edges(cx: DeltaComplex2) -> list[tuple[str, str]]:
    """Half-edges as (edge, end) with end in {"tail", "head"}, in declaration order."""
    return [(e, end) for e in cx.edges for end in ("tail", "head")]


def link_matrix(cx: DeltaComplex2, vertex: str, labels: Mapping[tuple[str, str], int]) -> list[list[int]]:
    """Incidence matrix of the link of ``vertex`` with ``labels`` on the diagonal.

    The link's nodes are the half-edges at ``vertex``; every triangle corner at
    ``vertex`` joins the incoming half-edge of one side to the outgoing
    half-edge of the next.  A corner joining a half-edge to itself adds 2 on
    the diagonal, the way a node adds 2 to the self-intersection of a curve.
    """
    nodes = [h for h in half_edges(cx) if cx.edges[h[0]][0 if h[1] == "tail" else 1] == vertex]
    idx = {h: i for i, h in enumerate(nodes)}
    m = [[0] * len(nodes) for _ in nodes]
    for h, i in idx.items():
        m[i][i] += labels[h]
    for sides in cx.triangles.values():
        for k in range(3):
            s, nxt = sides[k], sides[(k + 1) % 3]
            if cx.side_end(s) != vertex:
                continue
            end_half = (s[0], "head" if s[1] == "+" else "tail")
            start_half = (nxt[0], "tail" if nxt[1] == "+" else "head")
            i, j = idx[end_half], idx[start_half]
            m[i][j] += 1
            m[j][i] += 1
    return m
