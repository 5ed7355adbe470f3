"""Finite metric spaces, relations between them, and exact distortion.

Distortion computations run on integer matrices obtained by clearing the
common denominator of both distance matrices, which keeps the inner
O(|R|^2) loop on machine-friendly Python ints while staying exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .geometry import PointSet, Scalar, ScalarLike, as_scalar

Pair = tuple[int, int]


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Symmetric exact distance matrix, optionally backed by line coordinates.

    Construction validates the full metric contract: zero diagonal, symmetry,
    strictly positive off-diagonal entries and the exact triangle inequality
    (O(n^3), fine at desk scale).
    """

    dist: tuple[tuple[Fraction, ...], ...]
    line_coords: PointSet | None = None

    def __post_init__(self) -> None:
        n = len(self.dist)
        if n == 0:
            raise ValueError("a metric space needs at least one point")
        for row in self.dist:
            if len(row) != n:
                raise ValueError("distance matrix must be square")
        if self.line_coords is not None:
            # matching strictly increasing coordinates already force every
            # metric axiom, so the O(n^3) triangle sweep is skipped
            pts = self.line_coords.points
            if len(pts) != n:
                raise ValueError("line coordinates must match matrix size")
            for i in range(n):
                row = self.dist[i]
                pi = pts[i]
                for j in range(n):
                    if row[j] != abs(pi - pts[j]):
                        raise ValueError("line coordinates disagree with matrix")
            return
        for i in range(n):
            if self.dist[i][i] != 0:
                raise ValueError("diagonal must be zero")
            for j in range(i + 1, n):
                if self.dist[i][j] != self.dist[j][i]:
                    raise ValueError("distance matrix must be symmetric")
                if self.dist[i][j] <= 0:
                    raise ValueError("off-diagonal distances must be positive")
        for i in range(n):
            for j in range(n):
                dij = self.dist[i][j]
                for k in range(n):
                    if dij > self.dist[i][k] + self.dist[k][j]:
                        raise ValueError(
                            f"triangle inequality fails at ({i},{j},{k})"
                        )

    @classmethod
    def from_line(cls, points: PointSet) -> "FiniteMetricSpace":
        pts = points.points
        rows = tuple(tuple(abs(p - q) for q in pts) for p in pts)
        return cls(rows, line_coords=points)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[ScalarLike]]) -> "FiniteMetricSpace":
        return cls(tuple(tuple(as_scalar(v) for v in row) for row in rows))

    @classmethod
    def singleton(cls) -> "FiniteMetricSpace":
        return cls(((Fraction(0),),), line_coords=PointSet((Fraction(0),)))

    @property
    def n(self) -> int:
        return len(self.dist)


def diam(x: FiniteMetricSpace) -> Fraction:
    """Largest distance; zero for the one-point space."""
    return max(v for row in x.dist for v in row) if x.n > 1 else Fraction(0)


def gh_to_point(x: FiniteMetricSpace) -> Fraction:
    """Distance to the one-point space: half the diameter."""
    return diam(x) / 2


def scale_space(x: FiniteMetricSpace, lam: ScalarLike) -> FiniteMetricSpace:
    """Multiply every distance by lam; lam = 0 collapses to the singleton."""
    f = as_scalar(lam)
    if f < 0:
        raise ValueError("scale factor must be nonnegative")
    if f == 0:
        return FiniteMetricSpace.singleton()
    rows = tuple(tuple(v * f for v in row) for row in x.dist)
    coords = x.line_coords.scale(f) if x.line_coords is not None else None
    return FiniteMetricSpace(rows, line_coords=coords)


def _canonical_pairs(pairs: Iterable[Pair]) -> tuple[Pair, ...]:
    canon = sorted({(int(i), int(j)) for i, j in pairs})
    if not canon:
        raise ValueError("a relation needs at least one pair")
    if any(i < 0 or j < 0 for i, j in canon):
        raise ValueError("indices must be nonnegative")
    return tuple(canon)


@dataclass(frozen=True)
class Relation:
    """Nonempty set of index pairs, stored sorted and deduplicated."""

    pairs: tuple[Pair, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", _canonical_pairs(self.pairs))

    @classmethod
    def of(cls, pairs: Iterable[Pair]) -> "Relation":
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class Correspondence:
    """Relation whose projections cover both index ranges entirely."""

    pairs: tuple[Pair, ...]
    n_left: int
    n_right: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", _canonical_pairs(self.pairs))
        left = {i for i, _ in self.pairs}
        right = {j for _, j in self.pairs}
        if max(left) >= self.n_left or max(right) >= self.n_right:
            raise ValueError("pair index out of range")
        if left != set(range(self.n_left)):
            raise ValueError("left projection is not surjective")
        if right != set(range(self.n_right)):
            raise ValueError("right projection is not surjective")

    @classmethod
    def of(cls, pairs: Iterable[Pair], n_left: int, n_right: int) -> "Correspondence":
        return cls(tuple(pairs), n_left, n_right)

    @classmethod
    def full(cls, n_left: int, n_right: int) -> "Correspondence":
        return cls(
            tuple((i, j) for i in range(n_left) for j in range(n_right)),
            n_left,
            n_right,
        )

    def __len__(self) -> int:
        return len(self.pairs)

    def image_of(self, i: int) -> tuple[int, ...]:
        return tuple(j for a, j in self.pairs if a == i)

    def preimage_of(self, j: int) -> tuple[int, ...]:
        return tuple(i for i, b in self.pairs if b == j)

    def as_relation(self) -> Relation:
        return Relation(self.pairs)


@dataclass(frozen=True)
class DistortionCertificate:
    """Exact distortion value plus the pair of pairs attaining it."""

    value: Fraction
    witness: tuple[Pair, Pair]


RelationLike = Union[Relation, Correspondence]


def scaled_int_matrices(
    x: FiniteMetricSpace, y: FiniteMetricSpace
) -> tuple[int, list[list[int]], list[list[int]]]:
    """Both matrices over a common denominator, as plain int matrices."""
    if x.line_coords is not None and y.line_coords is not None:
        den = 1
        for pts in (x.line_coords.points, y.line_coords.points):
            for v in pts:
                den = lcm(den, v.denominator)
        xs = [v.numerator * (den // v.denominator) for v in x.line_coords.points]
        ys = [v.numerator * (den // v.denominator) for v in y.line_coords.points]
        dx = [[abs(a - b) for b in xs] for a in xs]
        dy = [[abs(a - b) for b in ys] for a in ys]
        return den, dx, dy
    den = 1
    for space in (x, y):
        for row in space.dist:
            for v in row:
                den = lcm(den, v.denominator)
    dx = [[v.numerator * (den // v.denominator) for v in row] for row in x.dist]
    dy = [[v.numerator * (den // v.denominator) for v in row] for row in y.dist]
    return den, dx, dy


def distortion(
    sigma: RelationLike, x: FiniteMetricSpace, y: FiniteMetricSpace
) -> DistortionCertificate:
    """Exact sup over pairs of pairs of | |xx'| - |yy'| |, with witness.

    O(|R|^2).  The witness is deterministic: pairs are scanned in sorted
    order and only a strictly larger value replaces the incumbent.
    """
    pairs = sigma.pairs
    for i, j in pairs:
        if i >= x.n or j >= y.n:
            raise ValueError(f"pair ({i}, {j}) out of range for the spaces")
    den, dx, dy = scaled_int_matrices(x, y)
    best = -1
    witness: tuple[Pair, Pair] | None = None
    for k, (i, j) in enumerate(pairs):
        row_x = dx[i]
        row_y = dy[j]
        for i2, j2 in pairs[k:]:
            v = row_x[i2] - row_y[j2]
            if v < 0:
                v = -v
            if v > best:
                best = v
                witness = ((i, j), (i2, j2))
    assert witness is not None
    return DistortionCertificate(Fraction(best, den), witness)
