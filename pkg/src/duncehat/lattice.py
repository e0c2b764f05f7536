"""Intersection lattices of rational surfaces presented as blow-ups of the plane."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from duncehat.linalg import Matrix, inertia, is_symmetric

DivisorClass = tuple[int, ...]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionLattice:
    labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    canonical: DivisorClass
    blowups: int | None = None  # None unless the lattice is a plane blow-up

    def __post_init__(self):
        n = len(self.labels)
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise LatticeError("Gram matrix does not match the basis size")
        if not is_symmetric(self.gram):
            raise LatticeError("Gram matrix is not symmetric")
        if len(self.canonical) != n:
            raise LatticeError("canonical class has the wrong length")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def divisor(self, *coeffs: int) -> DivisorClass:
        """Pad a short coefficient list with zeros (H, E1, E2, ... order)."""
        if len(coeffs) > self.rank:
            raise LatticeError(f"{len(coeffs)} coefficients for a rank {self.rank} lattice")
        return tuple(coeffs) + (0,) * (self.rank - len(coeffs))

    def basis(self, label: str) -> DivisorClass:
        return tuple(int(x == label) for x in self.labels)


def blown_up_plane(n: int) -> IntersectionLattice:
    if n < 0:
        raise LatticeError("blow-up count must be nonnegative")
    size = n + 1
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(size)) for i in range(size)
    )
    return IntersectionLattice(
        ("H",) + tuple(f"E{i}" for i in range(1, n + 1)),
        gram,
        (-3,) + (1,) * n,
        n,
    )


def custom_lattice(gram: Sequence[Sequence[int]], canonical: Sequence[int] | None = None,
                   labels: Sequence[str] | None = None) -> IntersectionLattice:
    n = len(gram)
    return IntersectionLattice(
        tuple(labels) if labels is not None else tuple(f"B{i}" for i in range(n)),
        tuple(tuple(int(x) for x in row) for row in gram),
        tuple(canonical) if canonical is not None else (0,) * n,
    )


def intersect(L: IntersectionLattice, a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != L.rank or len(b) != L.rank:
        raise LatticeError(f"class size {len(a)}/{len(b)} does not match lattice rank {L.rank}")
    return sum(a[i] * L.gram[i][j] * b[j] for i in range(L.rank) for j in range(L.rank) if L.gram[i][j])


def self_intersection(L: IntersectionLattice, c: Sequence[int]) -> int:
    return intersect(L, c, c)


def normal_degree_immersed(L: IntersectionLattice, c: Sequence[int], nodes: int) -> int:
    """Degree of the normal bundle of the normalization of a curve with simple nodes.

    Each node contributes 2 to the embedded self-intersection that the
    normalization does not see.
    """
    if nodes < 0:
        raise LatticeError("node count must be nonnegative")
    return intersect(L, c, c) - 2 * nodes


def _require_plane(L: IntersectionLattice) -> int:
    if L.blowups is None:
        raise LatticeError("operation needs a blow-up of the plane")
    return L.blowups


def chi_tangent(L: IntersectionLattice) -> int:
    """Holomorphic Euler characteristic of the tangent bundle, 2 K^2 - 10."""
    n = _require_plane(L)
    value = 2 * self_intersection(L, L.canonical) - 10
    assert value == 8 - 2 * n
    return value


def euler_surface(L: IntersectionLattice) -> int:
    """Topological Euler characteristic of the plane blown up ``blowups`` times."""
    return 3 + _require_plane(L)


def chi_line_bundle_p1(degree: int) -> int:
    return degree + 1


def positive_inertia(m: Matrix) -> int:
    """Number of positive eigenvalues of a symmetric matrix, by exact congruence."""
    if not is_symmetric(m):
        raise LatticeError("matrix is not symmetric")
    return inertia(m)[0]
