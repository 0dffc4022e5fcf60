"""Independent brute-force ground truth.

Everything here is deliberately naive: exhaustive Fraction-arithmetic cut
enumeration, convex-hull disjointness by exact LP feasibility, and seeded
Monte Carlo halfspace masses.  These routines exist to check the fast
paths, so they share as little code with them as possible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from . import _ratlp
from .balance import is_balanced
from .geometry import ColoredInstance, Hyperplane, Point, hyperplane_through


def brute_force_cuts(
    inst: ColoredInstance, max_points: int = 12
) -> set[frozenset[frozenset[Point]]]:
    """All point bipartitions admitting a valid hamburger cut.

    Enumerates every hyperplane through 1..d points with every side
    assignment, keeps those whose open sides are both balanced with sizes
    that are positive multiples of d, and canonicalizes by the induced
    bipartition.
    """
    pts = inst.points()
    if len(pts) > max_points:
        raise ValueError(f"instance has {len(pts)} > {max_points} points")
    d = inst.d
    colors = inst.colors()
    found = set()
    for k in range(1, d + 1):
        for subset in combinations(range(len(pts)), k):
            try:
                h = hyperplane_through([pts[i] for i in subset])
            except ValueError:
                continue
            sides = [h.side_of(p) for p in pts]
            if any(s == 0 for i, s in enumerate(sides) if i not in subset):
                continue
            for assignment in product((-1, 1), repeat=k):
                assigned = dict(zip(subset, assignment))
                side = [assigned.get(i, s) for i, s in enumerate(sides)]
                m_size = side.count(-1)
                p_size = side.count(1)
                if m_size == 0 or p_size == 0 or m_size % d:
                    continue
                minus_counts = [0] * (d + 1)
                plus_counts = [0] * (d + 1)
                for i, s in enumerate(side):
                    if s < 0:
                        minus_counts[colors[i]] += 1
                    else:
                        plus_counts[colors[i]] += 1
                if not (is_balanced(minus_counts, d) and is_balanced(plus_counts, d)):
                    continue
                minus = frozenset(p for p, s in zip(pts, side) if s < 0)
                plus = frozenset(p for p, s in zip(pts, side) if s > 0)
                found.add(frozenset({minus, plus}))
    return found


def _simplex_points(s) -> list[Point]:
    return list(getattr(s, "points", s))


def simplices_disjoint_exact(s1, s2) -> bool:
    """True iff the convex hulls of the two vertex sets do not intersect.

    Decided exactly: the hulls meet iff sum(l_i p_i) = sum(u_j q_j) with
    l, u >= 0 and both summing to 1 is feasible over the rationals.
    """
    p = _simplex_points(s1)
    q = _simplex_points(s2)
    d = len(p[0])
    if any(len(v) != d for v in p + q):
        raise ValueError("simplices of mixed dimension")
    # Cheap exact bounding-box reject keeps the quadratic verification fast.
    for axis in range(d):
        if max(v[axis] for v in p) < min(v[axis] for v in q):
            return True
        if max(v[axis] for v in q) < min(v[axis] for v in p):
            return True
    rows: list[list[Fraction]] = []
    b: list[Fraction] = []
    for axis in range(d):
        rows.append([v[axis] for v in p] + [-v[axis] for v in q])
        b.append(Fraction(0))
    rows.append([Fraction(1)] * len(p) + [Fraction(0)] * len(q))
    b.append(Fraction(1))
    rows.append([Fraction(0)] * len(p) + [Fraction(1)] * len(q))
    b.append(Fraction(1))
    return _ratlp.solve_feasible(rows, b) is None


@dataclass(frozen=True)
class MonteCarloMasses:
    """Seeded halfspace-mass estimates; `algorithm` names the PRNG."""

    estimates: np.ndarray
    stderr: np.ndarray
    samples: int
    seed: int
    algorithm: str = "pcg64"


def monte_carlo_halfspace_mass(
    measure, h: Hyperplane, samples: int, seed: int
) -> MonteCarloMasses:
    """Unbiased estimates of each color's mass in H- = {normal.x < offset}."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    normal = np.array([float(c) for c in h.normal])
    offset = float(h.offset)
    estimates = []
    errors = []
    for color in measure.colors:
        mass = color.total_mass()
        if mass == 0.0:
            estimates.append(0.0)
            errors.append(0.0)
            continue
        x = color.sample(samples, rng)
        inside = (x @ normal < offset).mean()
        estimates.append(mass * inside)
        errors.append(mass * np.sqrt(inside * (1.0 - inside) / samples))
    return MonteCarloMasses(np.array(estimates), np.array(errors), samples, seed)
