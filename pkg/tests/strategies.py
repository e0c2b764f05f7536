"""Hypothesis strategies for random complexes and constructs."""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from duncehat.construct import Branch, Component, Construct, Gluing
from duncehat.delta import DeltaComplex2
from duncehat.lattice import blown_up_plane


@st.composite
def collapsible_complexes(draw, max_steps: int = 8) -> DeltaComplex2:
    """Grown from a point by anti-collapses, so collapsible by construction."""
    vertices = ["v0"]
    edges: dict[str, tuple[str, str]] = {}
    triangles: dict[str, tuple] = {}
    for step in range(draw(st.integers(0, max_steps))):
        paths = [(a, b) for a, b in itertools.product(edges, repeat=2) if edges[a][1] == edges[b][0]]
        if paths and draw(st.booleans()):
            a, b = draw(st.sampled_from(paths))
            f = f"f{step}"
            edges[f] = (edges[a][0], edges[b][1])
            triangles[f"t{step}"] = ((a, "+"), (b, "+"), (f, "-"))
        else:
            old = draw(st.sampled_from(vertices))
            new = f"v{len(vertices)}"
            vertices.append(new)
            edges[f"e{step}"] = (old, new) if draw(st.booleans()) else (new, old)
    return DeltaComplex2(tuple(vertices), edges, triangles)


def closed_triangles(ends: list[tuple[int, int]]) -> list[tuple[tuple[int, bool], ...]]:
    """Every cyclic word of three oriented gluings whose corners close up."""
    out = []
    sides = [(g, fwd) for g in range(len(ends)) for fwd in (True, False)]

    def start(s):
        return ends[s[0]][0] if s[1] else ends[s[0]][1]

    def end(s):
        return ends[s[0]][1] if s[1] else ends[s[0]][0]

    for word in itertools.product(sides, repeat=3):
        if all(end(word[k]) == start(word[(k + 1) % 3]) for k in range(3)):
            out.append(word)
    return out


@st.composite
def small_constructs(draw, max_components: int = 4, max_gluings: int = 6, max_triple: int = 3):
    """Random constructs together with the complex they are built to realize."""
    nc = draw(st.integers(1, max_components))
    ng = draw(st.integers(0, max_gluings))
    ends = [(draw(st.integers(0, nc - 1)), draw(st.integers(0, nc - 1))) for _ in range(ng)]
    options = closed_triangles(ends)
    words = draw(st.lists(st.sampled_from(options), max_size=max_triple)) if options else []

    marks: list[list[tuple[str, str]]] = [[] for _ in range(ng)]  # (first label, second label)
    idents = []
    for t, word in enumerate(words):
        for k, (g, _) in enumerate(word):
            marks[g].append((f"a{t}_{k}", f"b{t}_{k}"))
        for k in range(3):
            g0, fwd0 = word[k]
            g1, fwd1 = word[(k + 1) % 3]
            # Sheet between side k and side k+1: end of side k, start of side k+1.
            m0 = (g0, 1, f"b{t}_{k}") if fwd0 else (g0, 0, f"a{t}_{k}")
            m1 = (g1, 0, f"a{t}_{(k + 1) % 3}") if fwd1 else (g1, 1, f"b{t}_{(k + 1) % 3}")
            idents.append((m0, m1))

    self_nodes = {}
    for (g0, s0, _), (g1, s1, _) in idents:
        if (g0, s0) == (g1, s1):
            self_nodes[(g0, s0)] = self_nodes.get((g0, s0), 0) + 1

    L = blown_up_plane(1)
    branches: list[list[Branch]] = [[] for _ in range(nc)]
    where = {}
    for g, (i, j) in enumerate(ends):
        for side, comp in ((0, i), (1, j)):
            labels = tuple(m[side] for m in marks[g])
            where[(g, side)] = (comp, len(branches[comp]))
            branches[comp].append(Branch(L.divisor(1), self_nodes.get((g, side), 0), labels))
    comps = tuple(Component(L, tuple(b)) for b in branches)
    gluings = tuple(Gluing(where[(g, 0)], where[(g, 1)], tuple(marks[g])) for g in range(ng))
    identifications = tuple(
        tuple((*where[(g, side)], label) for g, side, label in grp) for grp in idents
    )
    X = Construct(comps, gluings, identifications)
    cx = DeltaComplex2(
        tuple(f"X{i}" for i in range(nc)),
        {f"C{g}": (f"X{i}", f"X{j}") for g, (i, j) in enumerate(ends)},
        {f"T{t}": tuple((f"C{g}", "+" if fwd else "-") for g, fwd in word) for t, word in enumerate(words)},
    )
    return X, cx


@st.composite
def unimodular(draw, n: int = 4, steps: int = 8):
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, steps))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            p[i] = [-x for x in p[i]]
        else:
            c = draw(st.integers(-3, 3))
            p[i] = [a + c * b for a, b in zip(p[i], p[j])]
    return p


symmetric_4x4 = st.lists(st.integers(-5, 5), min_size=10, max_size=10).map(
    lambda xs: [[xs[_tri(i, j)] for j in range(4)] for i in range(4)]
)


def _tri(i: int, j: int) -> int:
    i, j = min(i, j), max(i, j)
    return i * 4 - i * (i - 1) // 2 + (j - i)
