"""Seeded random instance generation.

Coordinates are drawn on an integer lattice scaled by a fixed denominator,
then the whole draw is rejected and redrawn until the instance passes the
general-position check.  Everything is deterministic per seed.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .geometry import ColoredInstance, affinely_independent, validate_general_position

# Lattice sizes keep the cut engine's integers small per dimension.
_COORD_RANGE = {2: 10**6, 3: 10**4}
_DEFAULT_RANGE = 2000
_DENOM = 100


def default_sizes(d: int, n: int) -> tuple[int, ...]:
    """The most even admissible size vector: sum dn, every entry <= n."""
    base, rem = divmod(d * n, d + 1)
    return tuple(base + 1 if i < rem else base for i in range(d + 1))


def random_sizes(d: int, n: int, rng: random.Random) -> tuple[int, ...]:
    """A random admissible size vector (sum dn, each <= n)."""
    while True:
        sizes = [0] * (d + 1)
        for _ in range(d * n):
            sizes[rng.randrange(d + 1)] += 1
        if max(sizes) <= n:
            return tuple(sizes)


def check_sizes(d: int, n: int, sizes: tuple[int, ...]) -> None:
    if len(sizes) != d + 1:
        raise ValueError(f"need {d + 1} class sizes, got {len(sizes)}")
    if any(s < 0 for s in sizes):
        raise ValueError("class sizes must be nonnegative")
    if sum(sizes) != d * n:
        raise ValueError(f"sizes sum to {sum(sizes)}, expected d*n = {d * n}")
    if sizes and max(sizes) > n:
        raise ValueError(f"class size {max(sizes)} exceeds n = {n}")


def random_instance(
    d: int, n: int, sizes: tuple[int, ...] | None = None, seed: int = 0
) -> ColoredInstance:
    """A seeded random instance in general position with the given sizes."""
    if sizes is None:
        sizes = default_sizes(d, n)
    check_sizes(d, n, tuple(sizes))
    rng = random.Random(seed)
    span = _COORD_RANGE.get(d, _DEFAULT_RANGE)
    total = d * n
    for _ in range(500):
        coords = set()
        while len(coords) < total:
            coords.add(tuple(Fraction(rng.randrange(span), _DENOM) for _ in range(d)))
        pts = sorted(coords)
        rng.shuffle(pts)
        classes = []
        at = 0
        for s in sizes:
            classes.append(tuple(pts[at : at + s]))
            at += s
        inst = ColoredInstance(d, tuple(classes))
        if total <= d:
            if affinely_independent(inst.points()):
                return inst
        elif validate_general_position(inst).ok:
            return inst
    raise RuntimeError("could not generate a general-position instance")
