"""Combinatorial model of a normal crossing surface and its numeric checks.

A :class:`Construct` is a list of components (surfaces with an intersection
lattice) carrying curve branches, a list of gluings pairing branches, and a
list of identifications saying which marked points of a component coincide
as points of that surface (nodes of a branch, crossings of two branches).

Marked points are addressed as ``(component, branch, label)``.  Joining marks
through gluings and identifications partitions them into point classes.  In
a class, a *germ* is one pair of marks matched by a gluing (one local branch
of the singular locus through the point) and a *sheet* is one group of
identified marks (one local branch of the surface).  A class with three germs
over three sheets, two marks per sheet, is a triple point.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Mapping, Sequence

from duncehat import delta
from duncehat.lattice import (
    DivisorClass,
    IntersectionLattice,
    blown_up_plane,
    chi_tangent,
    euler_surface,
    intersect,
    normal_degree_immersed,
    positive_inertia,
)
from duncehat.linalg import rank

MarkRef = tuple[int, int, str]
BranchRef = tuple[int, int]
Diagonal = Literal["embedded", "normalized"]


class InvalidConstructError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid construct: " + "; ".join(self.violations))


class NotPointLikeError(ValueError):
    def __init__(self, betti: tuple[int, int, int]):
        self.betti = betti
        super().__init__(f"dual complex is not rationally point-like: Betti numbers {betti}")


@dataclass(frozen=True)
class Branch:
    divisor: DivisorClass
    nodes: int = 0
    marks: tuple[str, ...] = ()


@dataclass(frozen=True)
class Component:
    lattice: IntersectionLattice
    branches: tuple[Branch, ...] = ()


@dataclass(frozen=True)
class Gluing:
    first: BranchRef
    second: BranchRef
    mapping: tuple[tuple[str, str], ...] = ()  # (mark on first, mark on second)


@dataclass(frozen=True)
class Slot:
    gluing: int
    mark: str  # label on the gluing's first branch
    forward: bool  # the triangle side runs from the first branch's sheet to the second's


@dataclass(frozen=True)
class TriplePoint:
    sheets: tuple[int, int, int]  # owning component of each local sheet, in cyclic order
    slots: tuple[Slot, Slot, Slot]  # slot k joins sheet k to sheet k+1
    marks: frozenset[MarkRef] = field(compare=False)


@dataclass(frozen=True)
class Construct:
    components: tuple[Component, ...] = ()
    gluings: tuple[Gluing, ...] = ()
    identifications: tuple[tuple[MarkRef, ...], ...] = ()

    def branch(self, ref: BranchRef) -> Branch:
        return self.components[ref[0]].branches[ref[1]]

    def all_marks(self) -> list[MarkRef]:
        return [
            (ci, bi, m)
            for ci, comp in enumerate(self.components)
            for bi, br in enumerate(comp.branches)
            for m in br.marks
        ]

    def glued_branches(self) -> dict[BranchRef, int]:
        out = {}
        for g, gl in enumerate(self.gluings):
            out.setdefault(gl.first, g)
            out.setdefault(gl.second, g)
        return out

    @cached_property
    def _incidence(self) -> _Incidence:
        return _analyze(self)

    @property
    def violations(self) -> tuple[str, ...]:
        return self._incidence.violations

    @property
    def triple_points(self) -> tuple[TriplePoint, ...]:
        return self._incidence.triple_points

    @property
    def point_classes(self) -> tuple[frozenset[MarkRef], ...]:
        return self._incidence.classes


@dataclass(frozen=True)
class _Incidence:
    violations: tuple[str, ...]
    classes: tuple[frozenset[MarkRef], ...]
    germs: Mapping[frozenset[MarkRef], tuple[tuple[int, MarkRef, MarkRef], ...]]
    triple_points: tuple[TriplePoint, ...]


def _fmt(mark: MarkRef) -> str:
    return f"{mark[2]}@({mark[0]},{mark[1]})"


def _structural_violations(X: Construct) -> list[str]:
    out: list[str] = []
    for ci, comp in enumerate(X.components):
        for bi, br in enumerate(comp.branches):
            if len(br.divisor) != comp.lattice.rank:
                out.append(f"branch ({ci},{bi}) class has length {len(br.divisor)}, lattice rank {comp.lattice.rank}")
            if br.nodes < 0:
                out.append(f"branch ({ci},{bi}) has negative node count")
            if len(set(br.marks)) != len(br.marks):
                out.append(f"branch ({ci},{bi}) repeats a mark label")
    used: dict[BranchRef, int] = {}
    for g, gl in enumerate(X.gluings):
        refs_ok = True
        for ref in (gl.first, gl.second):
            ci, bi = ref
            if not (0 <= ci < len(X.components) and 0 <= bi < len(X.components[ci].branches)):
                out.append(f"gluing {g} references missing branch {ref}")
                refs_ok = False
            elif ref in used:
                out.append(f"branch {ref} is glued twice (gluings {used[ref]} and {g})")
            else:
                used[ref] = g
        if gl.first == gl.second:
            out.append(f"gluing {g} glues branch {gl.first} to itself")
        if not refs_ok:
            continue
        src = [a for a, _ in gl.mapping]
        dst = [b for _, b in gl.mapping]
        if sorted(src) != sorted(X.branch(gl.first).marks) or len(set(src)) != len(src):
            out.append(f"gluing {g} map is not a bijection on the marks of branch {gl.first}")
        if sorted(dst) != sorted(X.branch(gl.second).marks) or len(set(dst)) != len(dst):
            out.append(f"gluing {g} map is not a bijection onto the marks of branch {gl.second}")
    marks = set(X.all_marks())
    seen: dict[MarkRef, int] = {}
    for k, group in enumerate(X.identifications):
        if len(group) < 2:
            out.append(f"identification {k} has fewer than two marks")
        for m in group:
            if m not in marks:
                out.append(f"identification {k} references missing mark {_fmt(m)}")
            elif m in seen:
                out.append(f"mark {_fmt(m)} is in identifications {seen[m]} and {k}")
            else:
                seen[m] = k
        if len({m[0] for m in group}) > 1:
            out.append(f"identification {k} mixes components")
    return out


def _marked_nodes(X: Construct) -> dict[BranchRef, int]:
    """Self-coincidences per branch recorded by the identifications."""
    out: dict[BranchRef, int] = defaultdict(int)
    for group in X.identifications:
        per_branch: dict[BranchRef, int] = defaultdict(int)
        for ci, bi, _ in group:
            per_branch[(ci, bi)] += 1
        for ref, n in per_branch.items():
            out[ref] += n - 1
    return out


def _analyze(X: Construct) -> _Incidence:
    violations = _structural_violations(X)
    if violations:
        return _Incidence(tuple(violations), (), {}, ())

    marked = _marked_nodes(X)
    glued = X.glued_branches()
    for ci, comp in enumerate(X.components):
        for bi, br in enumerate(comp.branches):
            n = marked.get((ci, bi), 0)
            if n > br.nodes:
                violations.append(f"branch ({ci},{bi}) has {n} marked self-crossings but {br.nodes} nodes")
            elif (ci, bi) in glued and n < br.nodes:
                violations.append(
                    f"branch ({ci},{bi}) is a gluing curve with an unmarked node; nodes of gluing curves are triple points"
                )

    parent: dict[MarkRef, MarkRef] = {m: m for m in X.all_marks()}

    def find(m: MarkRef) -> MarkRef:
        while parent[m] != m:
            parent[m] = parent[parent[m]]
            m = parent[m]
        return m

    def union(a: MarkRef, b: MarkRef) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    germs_all: list[tuple[int, MarkRef, MarkRef]] = []
    for g, gl in enumerate(X.gluings):
        for a, b in gl.mapping:
            m1, m2 = (*gl.first, a), (*gl.second, b)
            germs_all.append((g, m1, m2))
            union(m1, m2)
    for group in X.identifications:
        for m in group[1:]:
            union(group[0], m)

    sheet_of: dict[MarkRef, frozenset[MarkRef]] = {m: frozenset([m]) for m in parent}
    for group in X.identifications:
        s = frozenset(group)
        for m in group:
            sheet_of[m] = s

    members: dict[MarkRef, set[MarkRef]] = defaultdict(set)
    for m in parent:
        members[find(m)].add(m)
    classes = tuple(sorted((frozenset(v) for v in members.values()), key=min))

    germs_by_class: dict[frozenset[MarkRef], list[tuple[int, MarkRef, MarkRef]]] = {c: [] for c in classes}
    class_of = {m: c for c in classes for m in c}
    for germ in germs_all:
        germs_by_class[class_of[germ[1]]].append(germ)

    triple_points: list[TriplePoint] = []
    for cls in classes:
        germs = germs_by_class[cls]
        label = "{" + ", ".join(_fmt(m) for m in sorted(cls)) + "}"
        for g, m1, m2 in germs:
            if sheet_of[m1] == sheet_of[m2]:
                violations.append(f"point class {label}: gluing {g} joins a sheet to itself")
        if len(germs) <= 1:
            continue
        if len(germs) != 3:
            violations.append(f"point class {label}: {len(germs)} singular-locus branches meet, not a normal crossing point")
            continue
        glued_marks = [m for _, m1, m2 in germs for m in (m1, m2)]
        sheets: dict[frozenset[MarkRef], list[MarkRef]] = defaultdict(list)
        for m in glued_marks:
            sheets[sheet_of[m]].append(m)
        if len(sheets) != 3 or any(len(v) != 2 for v in sheets.values()):
            violations.append(f"point class {label}: three branches but not three sheets of two, inconsistent corner data")
            continue
        triple_points.append(_cycle(cls, germs, sheets, sheet_of))
    return _Incidence(tuple(violations), classes, {c: tuple(v) for c, v in germs_by_class.items()}, tuple(triple_points))


def _cycle(cls, germs, sheets, sheet_of) -> TriplePoint:
    order = sorted(sheets, key=min)
    s0 = order[0]
    remaining = sorted(germs, key=lambda gm: (gm[0], gm[1][2]))
    current = s0
    sheet_seq, slots = [], []
    for _ in range(3):
        germ = next(gm for gm in remaining if current in (sheet_of[gm[1]], sheet_of[gm[2]]))
        remaining.remove(germ)
        g, m1, m2 = germ
        forward = sheet_of[m1] == current
        sheet_seq.append(current)
        slots.append(Slot(g, m1[2], forward))
        current = sheet_of[m2] if forward else sheet_of[m1]
    assert current == s0
    return TriplePoint(tuple(min(s)[0] for s in sheet_seq), tuple(slots), cls)


def validate(X: Construct) -> delta.ValidationReport:
    return delta.ValidationReport(X.violations)


def _require_valid(X: Construct) -> None:
    if X.violations:
        raise InvalidConstructError(X.violations)


def dual_complex(X: Construct) -> delta.DeltaComplex2:
    """Vertices are components, edges are gluings, triangles are triple points."""
    _require_valid(X)
    vertices = tuple(f"X{i}" for i in range(len(X.components)))
    edges = {f"C{g}": (f"X{gl.first[0]}", f"X{gl.second[0]}") for g, gl in enumerate(X.gluings)}
    triangles = {
        f"T{k}": tuple((f"C{s.gluing}", "+" if s.forward else "-") for s in tp.slots)
        for k, tp in enumerate(X.triple_points)
    }
    cx = delta.DeltaComplex2(vertices, edges, triangles)
    report = delta.validate(cx)
    if not report.ok:
        raise InvalidConstructError([f"triple point corner data: {v}" for v in report.violations])
    return cx


def structure_sheaf_cohomology(X: Construct) -> tuple[int, int, int]:
    """Cohomology of O_X through the resolution by components, curves and triple points.

    Every term is a rational variety, so only H^0 survives termwise and the
    cohomology of X is that of the complex of constants
    Q^components -> Q^curves -> Q^triple points, assembled here straight from
    the gluing and triple-point data.
    """
    _require_valid(X)
    nc, ng, nt = len(X.components), len(X.gluings), len(X.triple_points)
    d0 = [[0] * nc for _ in range(ng)]
    for g, gl in enumerate(X.gluings):
        d0[g][gl.second[0]] += 1
        d0[g][gl.first[0]] -= 1
    d1 = [[0] * ng for _ in range(nt)]
    for k, tp in enumerate(X.triple_points):
        for s in tp.slots:
            d1[k][s.gluing] += 1 if s.forward else -1
    r0, r1 = rank(d0), rank(d1)
    return nc - r0, ng - r0 - r1, nt - r1


@dataclass(frozen=True)
class EdgeCheck:
    gluing: int
    degrees: tuple[int, int]
    triple_points: int

    @property
    def total(self) -> int:
        return sum(self.degrees) + self.triple_points

    @property
    def ok(self) -> bool:
        return self.total == 0


def _branch_normal_degree(X: Construct, ref: BranchRef) -> int:
    br = X.branch(ref)
    return normal_degree_immersed(X.components[ref[0]].lattice, br.divisor, br.nodes)


def slot_counts(X: Construct) -> list[int]:
    """Triple-point corners on each gluing curve, counted with multiplicity."""
    counts = [0] * len(X.gluings)
    for tp in X.triple_points:
        for s in tp.slots:
            counts[s.gluing] += 1
    return counts


def triple_point_check(X: Construct) -> list[EdgeCheck]:
    _require_valid(X)
    t = slot_counts(X)
    return [
        EdgeCheck(g, (_branch_normal_degree(X, gl.first), _branch_normal_degree(X, gl.second)), t[g])
        for g, gl in enumerate(X.gluings)
    ]


@dataclass(frozen=True)
class VertexCheck:
    component: int
    matrix: tuple[tuple[int, ...], ...]
    inertia: int

    @property
    def ok(self) -> bool:
        return self.inertia <= 1


def link_matrix(X: Construct, component: int, diagonal: Diagonal = "embedded") -> list[list[int]]:
    comp = X.components[component]
    L = comp.lattice
    n = len(comp.branches)
    m = [[0] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        if i != j:
            m[i][j] = intersect(L, comp.branches[i].divisor, comp.branches[j].divisor)
        elif diagonal == "embedded":
            m[i][i] = intersect(L, comp.branches[i].divisor, comp.branches[i].divisor)
        elif diagonal == "normalized":
            m[i][i] = _branch_normal_degree(X, (component, i))
        else:
            raise ValueError(f"unknown diagonal choice {diagonal!r}")
    return m


def combinatorial_check(X: Construct, diagonal: Diagonal = "embedded") -> list[VertexCheck]:
    _require_valid(X)
    out = []
    for ci in range(len(X.components)):
        m = link_matrix(X, ci, diagonal)
        out.append(VertexCheck(ci, tuple(map(tuple, m)), positive_inertia(m)))
    return out


@dataclass(frozen=True)
class GluingCheck:
    gluing: int
    triple_points: int

    @property
    def degree(self) -> int:
        """Degree of T_C(-sum of triple points) on the rational gluing curve."""
        return 2 - self.triple_points

    @property
    def ok(self) -> bool:
        return self.degree >= -1


def gluing_unobstructed_check(X: Construct) -> list[GluingCheck]:
    _require_valid(X)
    return [GluingCheck(g, t) for g, t in enumerate(slot_counts(X))]


def divisor_euler(X: Construct, component: int) -> int:
    """Euler characteristic of the curve configuration drawn on one component.

    Branches are rational, so each normalization contributes 2; every point
    of the surface where k marks coincide glues k preimages into one, and
    every unmarked node glues two.
    """
    comp = X.components[component]
    chi = 2 * len(comp.branches)
    for group in X.identifications:
        if group and group[0][0] == component:
            chi -= len(group) - 1
    marked = _marked_nodes(X)
    for bi, br in enumerate(comp.branches):
        chi -= br.nodes - marked.get((component, bi), 0)
    return chi


def smoothing_euler(X: Construct) -> int:
    """Euler characteristic with compact support of X minus its singular locus."""
    _require_valid(X)
    return sum(euler_surface(c.lattice) - divisor_euler(X, i) for i, c in enumerate(X.components))


def h11(X: Construct) -> int:
    """h^{1,1} of a smoothing, assuming b_1 = 0.

    The dual complex must have the rational cohomology of a point, which
    gives h^{1,0} = h^{2,0} = 0; b_1 = 0 is an assumption (the fundamental
    group is not controlled), so h^{1,1} = b_2 = chi - 2.
    """
    betti = delta.betti_numbers(dual_complex(X))
    if betti != (1, 0, 0):
        raise NotPointLikeError(betti)
    return smoothing_euler(X) - 2


def expected_moduli_dim(X: Construct) -> int:
    """-chi(T(-log D)) via 0 -> T(-D) -> T -> sum of normal bundles -> 0."""
    _require_valid(X)
    total = sum(-chi_tangent(c.lattice) for c in X.components)
    for ci, comp in enumerate(X.components):
        for bi in range(len(comp.branches)):
            total += _branch_normal_degree(X, (ci, bi)) + 1
    return total


def singular_locus_genus(X: Construct) -> int:
    """h^1 of the structure sheaf of the singular locus (dimension of Pic^0).

    The singular locus is a union of rational curves (one per gluing) meeting
    at point classes; h^1 = (connected pieces) - (curves) + sum(branches - 1).
    """
    _require_valid(X)
    inc = X._incidence
    ng = len(X.gluings)
    parent = list(range(ng))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    extra = 0
    for germs in inc.germs.values():
        if not germs:
            continue
        extra += len(germs) - 1
        for g, _, _ in germs[1:]:
            parent[find(g)] = find(germs[0][0])
    pieces = len({find(i) for i in range(ng)})
    return pieces - ng + extra


def dsemistable_expected_dim(X: Construct) -> int:
    return expected_moduli_dim(X) - singular_locus_genus(X)


def disjoint_union(X: Construct, Y: Construct) -> Construct:
    shift = len(X.components)

    def mv(ref):
        return (ref[0] + shift, *ref[1:])

    return Construct(
        X.components + Y.components,
        X.gluings + tuple(Gluing(mv(g.first), mv(g.second), g.mapping) for g in Y.gluings),
        X.identifications + tuple(tuple(mv(m) for m in grp) for grp in Y.identifications),
    )


def duncehat_construct(extra_blowup: bool = True) -> Construct:
    """Two nodal cubics on the plane blown up at eight of their common points.

    The first cubic C1 carries p1, p2 (its node) and p3; the second C2 carries
    q1, q2 (its node) and q3, where p3 and q3 sit over the ninth common point.
    With ``extra_blowup`` one more point of C2 is blown up.  The gluing sends
    p1 -> q2, p2 -> q3, p3 -> q1.
    """
    n = 9 if extra_blowup else 8
    L = blown_up_plane(n)
    c1 = L.divisor(3, *([-1] * 8))
    c2 = L.divisor(3, *([-1] * n))
    comp = Component(L, (Branch(c1, 1, ("p1", "p2", "p3")), Branch(c2, 1, ("q1", "q2", "q3"))))
    return Construct(
        (comp,),
        (Gluing((0, 0), (0, 1), (("p1", "q2"), ("p2", "q3"), ("p3", "q1"))),),
        (
            ((0, 0, "p1"), (0, 0, "p2")),
            ((0, 1, "q1"), (0, 1, "q2")),
            ((0, 0, "p3"), (0, 1, "q3")),
        ),
    )


# Combinatorial constructs on closed surfaces.


@dataclass(frozen=True)
class LabelSearch:
    labels: dict[tuple[str, str], int] | None
    explored: int

    @property
    def found(self) -> bool:
        return self.labels is not None


def edge_side_counts(cx: delta.DeltaComplex2) -> dict[str, int]:
    counts = {e: 0 for e in cx.edges}
    for sides in cx.triangles.values():
        for e, _ in sides:
            counts[e] += 1
    return counts


def search_combinatorial_labels(cx: delta.DeltaComplex2, lo: int = -4, hi: int = 4) -> LabelSearch:
    """Exhaustively look for half-edge labels making ``cx`` a combinatorial construct.

    Labels n_tail, n_head of every edge lie in [lo, hi] and obey the triple
    point formula n_tail + n_head = -(number of triangle sides on the edge);
    every vertex link matrix must have positive inertia at most 1.  Branches
    are cut as soon as a principal submatrix of assigned half-edges already
    has two positive eigenvalues (interlacing makes that final).
    """
    edges = list(cx.edges)
    sides = edge_side_counts(cx)
    zero = {h: 0 for h in delta.half_edges(cx)}
    base = {}
    for v in cx.vertices:
        nodes = [h for h in delta.half_edges(cx) if cx.edges[h[0]][0 if h[1] == "tail" else 1] == v]
        base[v] = (nodes, delta.link_matrix(cx, v, zero))
    labels: dict[tuple[str, str], int] = {}
    explored = 0

    def admissible() -> bool:
        for nodes, m in base.values():
            idx = [i for i, h in enumerate(nodes) if h in labels]
            sub = [[m[i][j] + (labels[nodes[i]] if i == j else 0) for j in idx] for i in idx]
            if sub and positive_inertia(sub) > 1:
                return False
        return True

    def visit(k: int) -> bool:
        nonlocal explored
        explored += 1
        if k == len(edges):
            return True
        e = edges[k]
        for a in range(lo, hi + 1):
            b = -sides[e] - a
            if not lo <= b <= hi:
                continue
            labels[(e, "tail")], labels[(e, "head")] = a, b
            if admissible() and visit(k + 1):
                return True
            del labels[(e, "tail")], labels[(e, "head")]
        return False

    found = visit(0)
    return LabelSearch(dict(labels) if found else None, explored)


def genus_two_surface() -> delta.DeltaComplex2:
    """One-vertex genus-2 surface from the octagon a b a^-1 b^-1 c d c^-1 d^-1."""
    word = [("a", "+"), ("b", "+"), ("a", "-"), ("b", "-"), ("c", "+"), ("d", "+"), ("c", "-"), ("d", "-")]
    return delta.polygon_surface(word)

