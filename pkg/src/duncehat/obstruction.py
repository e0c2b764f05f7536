"""Compactified moduli of obstruction bundles and the z-order calculus of degenerations.

The singular locus of the dunce-hat construct is P^1 with 0, 1 and infinity
glued to one point.  A degree -1 line bundle on it is recorded by the three
gluing constants over 0, 1, infinity, i.e. a point (a : b : c) of P^2.  The
quadric Z holds the bundles L with L(x) trivial for some point x; a family
of constructs is followed through its degenerations by the z-orders of the
three trivialization values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from duncehat.linalg import rank

Q = Fraction


class BoundaryPointError(ValueError):
    """The point is a coordinate point; no interior trivializing point exists."""


class NoDegenerationError(ValueError):
    pass


class ContainedInZError(ValueError):
    pass


@dataclass(frozen=True)
class ModuliPoint:
    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, a, b, c):
        coords = (Q(a), Q(b), Q(c))
        if not any(coords):
            raise ValueError("(0 : 0 : 0) is not a projective point")
        object.__setattr__(self, "coords", coords)

    def normalized(self) -> tuple[Fraction, Fraction, Fraction]:
        lead = next(x for x in reversed(self.coords) if x)
        return tuple(x / lead for x in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ModuliPoint):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def is_coordinate_point(self) -> bool:
        return sum(1 for x in self.coords if x) == 1

    def __str__(self):
        return "(" + " : ".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True)
class QuadricZ:
    """lam*ab + mu*bc + nu*ca."""

    lam: Fraction
    mu: Fraction
    nu: Fraction

    def __post_init__(self):
        if not (self.lam or self.mu or self.nu):
            raise ValueError("quadric is identically zero")

    def normalized(self) -> tuple[Fraction, Fraction, Fraction]:
        lead = next(x for x in (self.lam, self.mu, self.nu) if x)
        return (self.lam / lead, self.mu / lead, self.nu / lead)

    def evaluate(self, a, b, c):
        return self.lam * a * b + self.mu * b * c + self.nu * c * a


# Frame of the tautological line over 0, 1 and infinity.
FRAME = {"0": (1, 0), "1": (1, 1), "inf": (0, 1)}


def tautological_image(x) -> ModuliPoint:
    """Point of P^2 for O(-x), read from the section sigma(t) = (1, t) / (t - x).

    sigma has its only pole at x, so it trivializes O(-1)(x) away from x; its
    values at t = 0, 1 (and at infinity in the chart u = 1/t, where it reads
    (u, 1) / (1 - x u)) are expressed in the fixed frame.
    """
    x = Q(x)
    if x in (0, 1):
        raise BoundaryPointError(f"x = {x} is a triple point")
    at0 = (Q(1) / (0 - x), Q(0))
    at1 = (Q(1) / (1 - x), Q(1) / (1 - x))
    atinf = (Q(0), Q(1))
    return ModuliPoint(
        _frame_coefficient(at0, FRAME["0"]),
        _frame_coefficient(at1, FRAME["1"]),
        _frame_coefficient(atinf, FRAME["inf"]),
    )


def _frame_coefficient(vec, basis) -> Fraction:
    k = next(i for i in (0, 1) if basis[i])
    coef = Q(vec[k]) / basis[k]
    if any(Q(vec[i]) != coef * basis[i] for i in (0, 1)):
        raise ValueError("vector not on the tautological line")
    return coef


def fit_quadric(points: Iterable[ModuliPoint]) -> QuadricZ:
    """The unique form lam*ab + mu*bc + nu*ca vanishing at the given points."""
    rows = [[a * b, b * c, c * a] for a, b, c in (p.coords for p in points)]
    if rank(rows) != 2:
        raise ValueError("samples do not determine a unique quadric of this shape")
    # Null vector of a rank-2 3-column system: cross product of two independent rows.
    r1 = rows[0]
    r2 = next(r for r in rows[1:] if rank([r1, r]) == 2)
    cross = (
        r1[1] * r2[2] - r1[2] * r2[1],
        r1[2] * r2[0] - r1[0] * r2[2],
        r1[0] * r2[1] - r1[1] * r2[0],
    )
    Z = QuadricZ(*cross)
    lam, mu, nu = Z.normalized()
    return QuadricZ(lam, mu, nu)


def z_quadric(samples: Sequence = (2, 3, 4)) -> QuadricZ:
    return fit_quadric(tautological_image(x) for x in samples)


def z_contains(Z: QuadricZ, p: ModuliPoint) -> bool:
    return Z.evaluate(*p.coords) == 0


def trivializing_point(Z: QuadricZ, p: ModuliPoint) -> Fraction | None:
    """The x with L(x) trivial, or None when p is off Z."""
    if p.is_coordinate_point():
        raise BoundaryPointError("boundary: no interior solution")
    if not z_contains(Z, p):
        return None
    a, b, c = p.coords
    if a == 0 or c == 0:
        raise BoundaryPointError("boundary: no interior solution")
    x = -c / a
    if tautological_image(x) != p:
        return None
    return x


def bubble_order(q_self: int) -> int:
    """z-order of the regularized conormal form at the triple point on a bubble."""
    return q_self + 1


# Degenerations.

MARKS = ("p1", "p2", "p3", "q1", "q2", "q3")
# Germs of the singular locus through the triple point (gluing p1->q2, p2->q3, p3->q1).
GERMS = (("p1", "q2"), ("p2", "q3"), ("p3", "q1"))
# Other mark on the same sheet: the nodes {p1, p2}, {q1, q2} and the crossing {p3, q3}.
SHEET_PARTNER = {"p1": "p2", "p2": "p1", "q1": "q2", "q2": "q1", "p3": "q3", "q3": "p3"}


@dataclass(frozen=True)
class ZOrderArc:
    orders: tuple[int, int, int]
    coefficients: tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[Fraction, ...]] | None = None

    @property
    def normalized(self) -> tuple[int, int, int]:
        m = min(self.orders)
        return tuple(v - m for v in self.orders)

    def shifted(self, k: int) -> ZOrderArc:
        return ZOrderArc(tuple(v + k for v in self.orders), self.coefficients)


@dataclass(frozen=True)
class DegenerationCase:
    """z-orders of the regularized conormal forms gamma and of ds at each mark."""

    case_id: str
    gamma: Mapping[str, int]
    ds: Mapping[str, int]
    arc: tuple[int, int, int] | None
    note: str = ""
    germs: tuple[tuple[str, str], ...] = GERMS
    partner: Mapping[str, str] = field(default_factory=lambda: dict(SHEET_PARTNER))


def _orders(p=(0, 0, 0), q=(0, 0, 0)) -> dict[str, int]:
    return dict(zip(MARKS, (*p, *q)))


CASES: dict[str, DegenerationCase] = {
    "0": DegenerationCase("0", _orders(), _orders(), None, "tangency at a smooth point; not a degeneration"),
    "1.1": DegenerationCase("1.1", _orders(p=(-1, 0, 0)), _orders(p=(1, 0, 0)), (-1, -1, 0),
                            "first cubic splits; p2, p3 on one component"),
    "1.2": DegenerationCase("1.2", _orders(p=(0, -1, 0)), _orders(p=(0, 1, 0)), (-1, -1, 0),
                            "first cubic splits; p1, p3 on one component"),
    "2": DegenerationCase("2", _orders(p=(2, 2, -2)), _orders(p=(-1, -1, 1)), (3, 2, -2),
                          "first cubic acquires a cusp"),
    "3.0": DegenerationCase("3.0", _orders(p=(-1, -1, 0)), _orders(), (-1, -1, 0),
                            "node passes through the other cubic away from point 3"),
    "3.1": DegenerationCase("3.1", _orders(p=(0, -2, 0), q=(0, 0, -1)), _orders(p=(-1, 1, -1)), (-1, -1, 0),
                            "p1 tends to p3"),
    "3.2": DegenerationCase("3.2", _orders(p=(-2, 0, 0), q=(0, 0, -1)), _orders(p=(1, -1, -1)), (-1, -1, 0),
                            "p2 tends to p3"),
}
CASE_ORDER = ("0", "1.1", "1.2", "2", "3.0", "3.1", "3.2")
# Whether the split-off component is a line or a conic does not change the orders.
CASE_ALIASES = {"1.1L": "1.1", "1.1Q": "1.1", "1.2L": "1.2", "1.2Q": "1.2"}


def compose_valuation(case: DegenerationCase) -> ZOrderArc:
    """Order of each trivialization value gamma(m)/ds(m') * gamma(n)/ds(n').

    For the germ (m, n) of the singular locus, m' and n' are the other marks
    on the sheets of m and n.
    """
    if case.arc is None:
        raise NoDegenerationError(f"case {case.case_id}: no degeneration")
    missing = [m for m in MARKS if m not in case.gamma or m not in case.ds]
    if missing:
        raise ValueError(f"case {case.case_id}: incomplete tables for {missing}")
    out = tuple(
        case.gamma[m] - case.ds[case.partner[m]] + case.gamma[n] - case.ds[case.partner[n]]
        for m, n in case.germs
    )
    return ZOrderArc(out)


def case_valuations(case_id: str) -> ZOrderArc:
    case = CASES[CASE_ALIASES.get(case_id, case_id)]
    if case.arc is None:
        raise NoDegenerationError(f"case {case_id}: no degeneration")
    return ZOrderArc(case.arc)


@dataclass(frozen=True)
class LimitStratum:
    point: ModuliPoint
    kind: str  # "interior", "coordinate line" or "coordinate point"
    lines: tuple[str, ...]  # coordinate lines containing the limit, e.g. ("c=0",)

    def __str__(self):
        where = ", ".join(self.lines)
        if self.kind == "interior":
            return f"{self.point} interior"
        if self.kind == "coordinate line":
            return f"{self.point} on coordinate line {where}, not a coordinate point"
        return f"{self.point} coordinate point ({where})"


def limit_stratum(arc: ZOrderArc) -> LimitStratum:
    w = arc.normalized
    point = ModuliPoint(*(1 if x == 0 else 0 for x in w))
    lines = tuple(f"{n}=0" for n, x in zip("abc", w) if x)
    zeros = w.count(0)
    kind = {3: "interior", 2: "coordinate line", 1: "coordinate point"}[zeros]
    return LimitStratum(point, kind, lines)


def t_order(arc: ZOrderArc) -> int:
    """Intersection order with the union of the three coordinate lines abc = 0."""
    return sum(arc.normalized)


def _series_product(xs: Sequence[dict[int, Fraction]]) -> dict[int, Fraction]:
    out = {0: Q(1)}
    for s in xs:
        nxt: dict[int, Fraction] = {}
        for i, a in out.items():
            for j, b in s.items():
                nxt[i + j] = nxt.get(i + j, Q(0)) + a * b
        out = nxt
    return out


def z_order(arc: ZOrderArc, Z: QuadricZ) -> int:
    """Order in z of the quadric's form along the arc.

    Without coefficients the leading terms are taken generic, so no cancellation
    occurs.  With coefficients (series of each coordinate starting at its own
    order) the form is expanded exactly up to degree 2*max|v| + 4.
    """
    w = arc.normalized
    terms = ((Z.lam, 0, 1), (Z.mu, 1, 2), (Z.nu, 2, 0))
    if arc.coefficients is None:
        orders = [w[i] + w[j] for coef, i, j in terms if coef]
        return min(orders)
    bound = 2 * max(abs(v) for v in arc.orders) + 4
    series = [
        {w[k] + d: Q(c) for d, c in enumerate(arc.coefficients[k]) if c}
        for k in range(3)
    ]
    total: dict[int, Fraction] = {}
    for coef, i, j in terms:
        for e, c in _series_product([series[i], series[j]]).items():
            total[e] = total.get(e, Q(0)) + coef * c
    hits = [e for e, c in total.items() if c and e <= bound]
    if not hits:
        raise ContainedInZError(f"arc {arc.orders} lies in Z up to order {bound}")
    return min(hits)


@dataclass(frozen=True)
class BezoutVerdict:
    contradiction: bool
    forced: Fraction
    available: int
    trace: tuple[str, ...]


def bezout_argument(z_per_cusp: int, t_per_cusp: int, z_total_per_deg: int, t_total_per_deg: int) -> BezoutVerdict:
    """Count intersections with T forced if every meeting with Z were a cusp.

    Each cusp uses z_per_cusp of the z_total_per_deg*deg(C) intersections with Z
    and t_per_cusp of the t_total_per_deg*deg(C) intersections with T.
    """
    if min(z_per_cusp, t_per_cusp, z_total_per_deg, t_total_per_deg) <= 0:
        raise ValueError("all inputs must be positive")
    ratio = Q(t_per_cusp, z_per_cusp)
    forced = ratio * z_total_per_deg
    bad = forced > t_total_per_deg
    rel = ">" if bad else ("=" if forced == t_total_per_deg else "<")
    trace = (
        f"{ratio}·{z_total_per_deg} = {forced} {rel} {t_total_per_deg}",
        f"{forced}·deg(C) {rel} {t_total_per_deg}·deg(C): " + ("contradiction" if bad else "no contradiction"),
    )
    return BezoutVerdict(bad, forced, t_total_per_deg, trace)
