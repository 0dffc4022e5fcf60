"""Balancedness checks for per-color counts and halfspace tallies.

A count vector (c_1, ..., c_r) is balanced for dimension d when every
color holds at most a 1/d share of the total: d * c_i <= sum(c).  The
check is done in integers, so there is no rational division anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import ColoredInstance, Hyperplane, Point


def is_balanced(counts: Sequence[int], d: int) -> bool:
    """True iff d * counts[i] <= sum(counts) for every color i."""
    if len(counts) < d:
        raise ValueError(f"need at least d={d} colors, got {len(counts)}")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be nonnegative")
    total = sum(counts)
    return all(d * c <= total for c in counts)


@dataclass(frozen=True)
class Tally:
    """Per-color counts strictly on each side of a hyperplane."""

    minus: tuple[int, ...]
    plus: tuple[int, ...]
    on_hyperplane: tuple[tuple[int, Point], ...]


def halfspace_tally(inst: ColoredInstance, h: Hyperplane) -> Tally:
    """Exact per-color counts in H- and H+, plus the points lying on h."""
    r = inst.d + 1
    minus = [0] * r
    plus = [0] * r
    on = []
    for color, cls in enumerate(inst.classes):
        for p in cls:
            s = h.side_of(p)
            if s < 0:
                minus[color] += 1
            elif s > 0:
                plus[color] += 1
            else:
                on.append((color, p))
    return Tally(tuple(minus), tuple(plus), tuple(on))
