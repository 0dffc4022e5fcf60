"""Exact rational predicates and hyperplane constructions.

All coordinates are `fractions.Fraction`; every predicate returns an exact
sign.  Floating point never enters this module, so sidedness, orientation
and general-position checks are decided correctly regardless of how close
to degenerate the input is.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

Point = tuple[Fraction, ...]


def as_point(coords: Iterable) -> Point:
    """Coerce a sequence of ints / strings / Fractions to an exact point."""
    pt = tuple(Fraction(c) for c in coords)
    if len(pt) < 2:
        raise ValueError("points must have dimension >= 2")
    return pt


def _int_det(m: list[list[int]]) -> int:
    """Exact determinant of a small integer matrix (Bareiss elimination)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a, b, c = m[0]
        d, e, f = m[1]
        g, h, i = m[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def scale_to_ints(points: Sequence[Point]) -> tuple[int, list[tuple[int, ...]]]:
    """Common positive scale factor L and the points as integer tuples L*p.

    Scaling every coordinate by the same positive rational preserves all
    sign predicates, which lets hot loops run on machine integers.
    """
    denom = 1
    for p in points:
        for c in p:
            denom = lcm(denom, c.denominator)
    scaled = [tuple(int(c * denom) for c in p) for p in points]
    return denom, scaled


def _diff_rows(pts: Sequence[tuple[int, ...]]) -> list[list[int]]:
    base = pts[0]
    return [[c - b for c, b in zip(p, base)] for p in pts[1:]]


def affinely_independent(pts: Sequence[Point]) -> bool:
    """True iff the points span a (len(pts)-1)-dimensional flat."""
    if len(pts) <= 1:
        return True
    _, ipts = scale_to_ints(list(pts))
    rows = [tuple(r) for r in _diff_rows(ipts)]
    return _row_rank(rows) == len(rows)


def orientation(pts: Sequence[Point]) -> int:
    """Orientation sign of d+1 points in R^d.

    Returns the sign of det[p1-p0; ...; pd-p0]: 0 iff the points are
    affinely dependent (lie on a common hyperplane).
    """
    d = len(pts[0])
    if len(pts) != d + 1:
        raise ValueError(f"orientation in R^{d} needs {d + 1} points, got {len(pts)}")
    if any(len(p) != d for p in pts):
        raise ValueError("points of mixed dimension")
    _, ipts = scale_to_ints(pts)
    det = _int_det(_diff_rows(ipts))
    return (det > 0) - (det < 0)


@dataclass(frozen=True)
class Hyperplane:
    """Rational hyperplane {x : normal . x = offset}.

    The open halfspaces are H- = {normal . x < offset} and
    H+ = {normal . x > offset}; negating (normal, offset) swaps them.
    """

    normal: tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    @property
    def d(self) -> int:
        return len(self.normal)

    def value(self, p: Point) -> Fraction:
        if len(p) != self.d:
            raise ValueError("point/hyperplane dimension mismatch")
        return sum((n * c for n, c in zip(self.normal, p)), -self.offset)

    def side_of(self, p: Point) -> int:
        """-1 if p in H-, +1 if p in H+, 0 if p lies on the hyperplane."""
        v = self.value(p)
        return (v > 0) - (v < 0)

    def negated(self) -> "Hyperplane":
        return Hyperplane(tuple(-c for c in self.normal), -self.offset)

    def primitive(self) -> "Hyperplane":
        """Primitive-integer form; keeps the orientation (H-/H+ unchanged)."""
        coeffs = list(self.normal) + [self.offset]
        denom = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * denom) for c in coeffs]
        g = gcd(*ints)
        if g:
            ints = [c // g for c in ints]
        return Hyperplane(tuple(Fraction(c) for c in ints[:-1]), Fraction(ints[-1]))

    def canonical(self) -> "Hyperplane":
        """Primitive-integer form with positive leading coefficient.

        May swap H- and H+; use primitive() where orientation matters.
        """
        prim = self.primitive()
        lead = next(c for c in prim.normal if c != 0)
        return prim.negated().primitive() if lead < 0 else prim


def _row_rank(rows: list[tuple[int, ...]]) -> int:
    """Rank of small integer row vectors via fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    rank = 0
    col = 0
    width = len(a[0]) if a else 0
    while rank < len(a) and col < width:
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, len(a)):
            if a[r][col] != 0:
                f1, f2 = a[rank][col], a[r][col]
                a[r] = [f1 * x - f2 * y for x, y in zip(a[r], a[rank])]
        rank += 1
        col += 1
    return rank


def _orthogonal_complement(rows: list[tuple[int, ...]], d: int) -> tuple[int, ...]:
    """Integer vector orthogonal to d-1 independent rows (generalized cross)."""
    normal = []
    for j in range(d):
        minor = [[row[k] for k in range(d) if k != j] for row in rows]
        normal.append((-1) ** j * _int_det(minor))
    return tuple(normal)


def complete_spanning_rows(rows: list[tuple[int, ...]], d: int) -> list[tuple[int, ...]]:
    """Extend independent rows to d-1 rows with canonical axis directions.

    Candidate directions are the standard basis vectors in index order, so
    the completion depends only on the linear span of the input rows.
    """
    out = list(rows)
    for j in range(d):
        if len(out) == d - 1:
            break
        e = tuple(1 if k == j else 0 for k in range(d))
        if _row_rank(out + [e]) > _row_rank(out):
            out.append(e)
    return out


def hyperplane_through(pts: Sequence[Point]) -> Hyperplane:
    """Hyperplane containing all of `pts` (1 <= len(pts) <= d).

    For fewer than d points the remaining degrees of freedom are fixed by
    extending the affine span with the lexicographically first standard
    basis directions, so the result is deterministic.
    """
    if not pts:
        raise ValueError("need at least one point")
    d = len(pts[0])
    if len(pts) > d:
        raise ValueError(f"at most {d} points span a hyperplane in R^{d}")
    if any(len(p) != d for p in pts):
        raise ValueError("points of mixed dimension")
    scale, ipts = scale_to_ints(pts)
    rows = _diff_rows(ipts)
    if _row_rank(rows) < len(rows):
        raise ValueError("points are affinely dependent")
    rows = complete_spanning_rows(rows, d)
    normal = _orthogonal_complement(rows, d)
    offset = sum(n * c for n, c in zip(normal, ipts[0]))
    return Hyperplane(
        tuple(Fraction(n) for n in normal), Fraction(offset, scale)
    ).canonical()


@dataclass(frozen=True)
class ColoredInstance:
    """d+1 disjoint color classes of exact points in R^d.

    The partitioning hypotheses (point count divisible by d, no class
    larger than n = N/d) are checked by the operations that rely on them,
    not here: tallies and position checks are meaningful for any classes.
    """

    d: int
    classes: tuple[tuple[Point, ...], ...]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("dimension must be >= 2")
        if len(self.classes) != self.d + 1:
            raise ValueError(f"expected {self.d + 1} color classes, got {len(self.classes)}")
        seen = set()
        for cls in self.classes:
            for p in cls:
                if len(p) != self.d:
                    raise ValueError("point dimension != instance dimension")
                if p in seen:
                    raise ValueError(f"classes are not disjoint: duplicate point {p}")
                seen.add(p)

    def sizes_admissible(self) -> bool:
        """Total divisible by d and every class at most N/d points."""
        if self.total % self.d != 0:
            return False
        return not self.total or max(self.sizes) <= self.n

    @classmethod
    def from_lists(cls, d: int, classes: Iterable[Iterable[Iterable]]) -> "ColoredInstance":
        return cls(d, tuple(tuple(as_point(p) for p in c) for c in classes))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def total(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def n(self) -> int:
        return self.total // self.d

    def points(self) -> list[Point]:
        """All points in canonical order (class 0 first, then class 1, ...)."""
        return [p for cls in self.classes for p in cls]

    def colors(self) -> list[int]:
        return [i for i, cls in enumerate(self.classes) for _ in cls]


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    violation: tuple[Point, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_general_position(inst: ColoredInstance) -> GeneralPositionReport:
    """Check that no d+1 points of the union lie on a common hyperplane.

    Returns a report carrying one violating subset when the check fails.
    """
    pts = inst.points()
    if len(pts) <= inst.d:
        return GeneralPositionReport(True)
    _, ipts = scale_to_ints(pts)
    for idx in combinations(range(len(pts)), inst.d + 1):
        if _int_det(_diff_rows([ipts[i] for i in idx])) == 0:
            return GeneralPositionReport(False, tuple(pts[i] for i in idx))
    return GeneralPositionReport(True)
