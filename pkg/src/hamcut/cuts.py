"""Discrete hamburger cuts.

A hamburger cut of a (d+1)-colored instance is a hyperplane avoiding all
points whose two open sides are each balanced and contain a positive
multiple of d points.  The search enumerates hyperplanes spanned by
1..d input points together with every side assignment of the spanning
points, which covers every bipartition achievable by any hyperplane.

Internally the scan runs on integer-scaled coordinates (positive rational
scaling preserves all sign predicates); results are mapped back to exact
rational hyperplanes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Mapping, NamedTuple, Sequence

from . import _ratlp
from .balance import is_balanced
from .geometry import (
    ColoredInstance,
    Hyperplane,
    Point,
    _orthogonal_complement,
    _row_rank,
    complete_spanning_rows,
    scale_to_ints,
    validate_general_position,
)


class CutNotFound(Exception):
    """No hyperplane satisfies the cut conditions (violated hypotheses)."""


class UnrealizableAssignment(Exception):
    """The requested bipartition is not achievable by any hyperplane."""


class Candidate(NamedTuple):
    indices: tuple[int, ...]
    points: tuple[Point, ...]
    hyperplane: Hyperplane
    assignment: tuple[int, ...]


@dataclass(frozen=True)
class CutResult:
    """A verified hamburger cut with its spanning certificate."""

    separator: Hyperplane
    minus_classes: tuple[tuple[Point, ...], ...]
    plus_classes: tuple[tuple[Point, ...], ...]
    minus_tally: tuple[int, ...]
    plus_tally: tuple[int, ...]
    spanning_points: tuple[Point, ...]
    assignment: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.separator.d

    def minus_instance(self) -> ColoredInstance:
        return ColoredInstance(self.d, self.minus_classes)

    def plus_instance(self) -> ColoredInstance:
        return ColoredInstance(self.d, self.plus_classes)

    def bipartition(self) -> frozenset[frozenset[Point]]:
        minus = frozenset(p for cls in self.minus_classes for p in cls)
        plus = frozenset(p for cls in self.plus_classes for p in cls)
        return frozenset({minus, plus})


def _span_plane_int(ipts: Sequence[tuple[int, ...]], subset: tuple[int, ...], d: int):
    """Integer (normal, offset) of the canonical hyperplane through a subset.

    Returns None when the subset is affinely dependent.
    """
    base = ipts[subset[0]]
    rows = [tuple(c - b for c, b in zip(ipts[i], base)) for i in subset[1:]]
    if len(rows) == d - 1:
        normal = _orthogonal_complement(rows, d)
        if not any(normal):
            return None
    else:
        if _row_rank(rows) < len(rows):
            return None
        normal = _orthogonal_complement(complete_spanning_rows(rows, d), d)
        if not any(normal):
            return None
    offset = sum(n * c for n, c in zip(normal, base))
    return normal, offset


def _side_values(ipts, normal, offset):
    d = len(normal)
    if d == 2:
        a, b = normal
        return [a * x + b * y - offset for x, y in ipts]
    if d == 3:
        a, b, c = normal
        return [a * x + b * y + c * z - offset for x, y, z in ipts]
    return [sum(n * x for n, x in zip(normal, p)) - offset for p in ipts]


def _plane_to_rational(normal, offset, scale) -> Hyperplane:
    # primitive(), not canonical(): the engine's side values and assignments
    # are relative to this orientation, so the sign must not be normalized.
    return Hyperplane(
        tuple(Fraction(n) for n in normal), Fraction(offset, scale)
    ).primitive()


def enumerate_candidates(inst: ColoredInstance) -> Iterator[Candidate]:
    """All (spanning subset, hyperplane, side assignment) candidates.

    Emits every affinely independent subset of 1..d points, its spanned
    (canonically completed) hyperplane and all 2^k side assignments, in a
    deterministic order: subset size ascending, subsets lexicographic,
    assignments in (-1, +1) product order.
    """
    pts = inst.points()
    if not pts:
        return
    scale, ipts = scale_to_ints(pts)
    for k in range(1, inst.d + 1):
        for subset in combinations(range(len(pts)), k):
            plane = _span_plane_int(ipts, subset, inst.d)
            if plane is None:
                continue
            h = _plane_to_rational(*plane, scale)
            spanning = tuple(pts[i] for i in subset)
            for assignment in product((-1, 1), repeat=k):
                yield Candidate(subset, spanning, h, assignment)


def _iter_valid_cuts(inst: ColoredInstance):
    """Yield every candidate passing the cut conditions.

    Items are (subset, assignment, side values, minus tally, plus tally,
    side sizes, (integer plane, scale)), with all arithmetic done on
    integer-scaled coordinates.
    """
    pts = inst.points()
    if not pts:
        return
    d = inst.d
    r = d + 1
    colors = inst.colors()
    n_pts = len(pts)
    scale, ipts = scale_to_ints(pts)
    for k in range(1, d + 1):
        for subset in combinations(range(n_pts), k):
            plane = _span_plane_int(ipts, subset, d)
            if plane is None:
                continue
            vals = _side_values(ipts, *plane)
            minus_base = [0] * r
            plus_base = [0] * r
            on_extra = False
            for i, v in enumerate(vals):
                if v < 0:
                    minus_base[colors[i]] += 1
                elif v > 0:
                    plus_base[colors[i]] += 1
                elif i not in subset:
                    on_extra = True
                    break
            if on_extra:
                continue
            m_base = sum(minus_base)
            sub_colors = [colors[i] for i in subset]
            for assignment in product((-1, 1), repeat=k):
                m_size = m_base + assignment.count(-1)
                p_size = n_pts - m_size
                if m_size == 0 or p_size == 0 or m_size % d:
                    continue
                minus = minus_base[:]
                plus = plus_base[:]
                for c, s in zip(sub_colors, assignment):
                    if s < 0:
                        minus[c] += 1
                    else:
                        plus[c] += 1
                if not all(d * c <= m_size for c in minus):
                    continue
                if not all(d * c <= p_size for c in plus):
                    continue
                yield subset, assignment, vals, tuple(minus), tuple(plus), (
                    m_size,
                    p_size,
                ), (plane, scale)


def valid_bipartitions(inst: ColoredInstance) -> set[frozenset[frozenset[Point]]]:
    """The set of point bipartitions admitting a valid hamburger cut.

    Assumes the instance is in general position (every achievable
    bipartition is then realized by a hyperplane through d points).
    """
    pts = inst.points()
    out = set()
    for subset, assignment, vals, *_ in _iter_valid_cuts(inst):
        assigned = dict(zip(subset, assignment))
        minus = frozenset(
            p
            for i, p in enumerate(pts)
            if (vals[i] < 0 if i not in assigned else assigned[i] < 0)
        )
        plus = frozenset(p for p in pts if p not in minus)
        out.add(frozenset({minus, plus}))
    return out


def _solve_affine_signs(points: Sequence[Point], sigma: Sequence[int], d: int):
    """Exact (m, e) with m.p - e = sigma_p for all p, or None if inconsistent.

    Free variables are pinned to zero in column order, so the solution is
    deterministic.
    """
    rows = [list(p) + [Fraction(-1), Fraction(s)] for p, s in zip(points, sigma)]
    n_cols = d + 1
    pivots = []
    rank = 0
    for col in range(n_cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][n_cols] != 0:
            return None
    sol = [Fraction(0)] * n_cols
    for r, col in enumerate(pivots):
        sol[col] = rows[r][n_cols]
    return tuple(sol[:d]), sol[d]


def _separating_functional_lp(points: Sequence[Point], sigma: Sequence[int], d: int):
    """Strictly separating (m, e) via exact LP, or None when none exists."""
    n_free = d + 1
    a_rows = []
    b = []
    for i, (p, s) in enumerate(zip(points, sigma)):
        coeffs = [Fraction(s) * c for c in p] + [Fraction(-s)]
        row = []
        for c in coeffs:
            row.extend([c, -c])
        slack = [Fraction(0)] * len(points)
        slack[i] = Fraction(-1)
        a_rows.append(row + slack)
        b.append(Fraction(1))
    x = _ratlp.solve_feasible(a_rows, b)
    if x is None:
        return None
    free = [x[2 * j] - x[2 * j + 1] for j in range(n_free)]
    return tuple(free[:d]), free[d]


def realize_strict_separator(
    h: Hyperplane, assignment: Mapping[Point, int], inst: ColoredInstance
) -> Hyperplane:
    """Perturb h into a hyperplane strictly avoiding every instance point.

    The output induces exactly the bipartition given by h's strict sides
    plus the requested side for each on-hyperplane point.  The perturbation
    is exact: a rational tilt direction (m, e) separating the assigned
    points is scaled below the smallest blocking threshold.

    Raises UnrealizableAssignment when no hyperplane achieves the request
    (possible only for affinely dependent assigned sets).
    """
    pts = inst.points()
    if h.d != inst.d:
        raise ValueError("hyperplane/instance dimension mismatch")
    for p, s in assignment.items():
        if s not in (-1, 1):
            raise ValueError(f"assignment side must be -1 or +1, got {s}")
        if h.side_of(p) != 0:
            raise ValueError(f"assigned point {p} does not lie on the hyperplane")
    values = {p: h.value(p) for p in pts}
    unassigned_on = [p for p, v in values.items() if v == 0 and p not in assignment]
    if unassigned_on:
        raise ValueError(f"points on the hyperplane lack a side assignment: {unassigned_on}")

    spanning = [p for p in pts if p in assignment]
    sigma = [assignment[p] for p in spanning]
    me = _solve_affine_signs(spanning, sigma, inst.d)
    if me is None:
        me = _separating_functional_lp(spanning, sigma, inst.d)
        if me is None:
            raise UnrealizableAssignment(
                "no hyperplane realizes the requested side assignment"
            )
    m, e = me

    t = Fraction(1)
    for p in pts:
        v = values[p]
        if v == 0:
            continue
        w = sum(mi * ci for mi, ci in zip(m, p)) - e
        if (v > 0 > w) or (v < 0 < w):
            t = min(t, Fraction(abs(v), 2 * abs(w)))
    while True:
        normal = tuple(ni + t * mi for ni, mi in zip(h.normal, m))
        if any(normal):
            break
        t /= 2
    result = Hyperplane(normal, h.offset + t * e).primitive()

    for p in pts:
        expected = assignment.get(p)
        if expected is None:
            v = values[p]
            expected = 1 if v > 0 else -1
        if result.side_of(p) != expected:
            raise UnrealizableAssignment(
                "perturbation failed to realize the requested bipartition"
            )
    return result


def hamburger_cut(inst: ColoredInstance, validate: bool = False) -> CutResult:
    """Find a hamburger cut: both open sides balanced, sizes in d*Z_{>0}.

    Scans all candidates and returns the winner under a deterministic
    preference: smallest side-size difference, then lexicographic spanning
    subset, then assignment.  Raises CutNotFound when no candidate passes,
    which signals violated hypotheses (the cut always exists for balanced
    general-position instances with n >= 2).
    """
    if validate:
        report = validate_general_position(inst)
        if not report.ok:
            raise ValueError(f"instance not in general position: {report.violation}")
    best = None
    best_key = None
    for subset, assignment, vals, minus, plus, sizes, plane in _iter_valid_cuts(inst):
        key = (abs(sizes[0] - sizes[1]), subset, assignment)
        if best_key is None or key < best_key:
            best_key = key
            best = (subset, assignment, minus, plus, plane)
    if best is None:
        raise CutNotFound(
            f"no hamburger cut exists for this instance (N={inst.total}, d={inst.d})"
        )
    subset, assignment, minus_tally, plus_tally, (plane, scale) = best

    pts = inst.points()
    spanning = tuple(pts[i] for i in subset)
    h_span = _plane_to_rational(*plane, scale)
    separator = realize_strict_separator(
        h_span, dict(zip(spanning, assignment)), inst
    )

    minus_classes = []
    plus_classes = []
    for cls in inst.classes:
        minus_classes.append(tuple(p for p in cls if separator.side_of(p) < 0))
        plus_classes.append(tuple(p for p in cls if separator.side_of(p) > 0))
    result = CutResult(
        separator=separator,
        minus_classes=tuple(minus_classes),
        plus_classes=tuple(plus_classes),
        minus_tally=minus_tally,
        plus_tally=plus_tally,
        spanning_points=spanning,
        assignment=assignment,
    )
    _check_cut(inst, result)
    return result


def _check_cut(inst: ColoredInstance, cut: CutResult) -> None:
    """Re-verify a cut before returning it; raises on any inconsistency."""
    d = inst.d
    sizes = (sum(cut.minus_tally), sum(cut.plus_tally))
    ok = (
        all(s > 0 and s % d == 0 for s in sizes)
        and is_balanced(cut.minus_tally, d)
        and is_balanced(cut.plus_tally, d)
        and tuple(len(c) for c in cut.minus_classes) == cut.minus_tally
        and tuple(len(c) for c in cut.plus_classes) == cut.plus_tally
        and all(
            len(mc) + len(pc) == len(cls)
            for mc, pc, cls in zip(cut.minus_classes, cut.plus_classes, inst.classes)
        )
        and all(cut.separator.side_of(p) != 0 for p in inst.points())
    )
    if not ok:
        raise RuntimeError("internal error: produced cut failed re-verification")
