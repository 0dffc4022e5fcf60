"""Recursive rainbow-simplex partitions and the planar color-merging step.

A balanced (d+1)-colored instance of dn points splits into n pairwise
disjoint (d-1)-simplices whose d vertices carry d distinct colors: cut
with a hamburger cut, recurse on both sides, and read simplices off the
n=1 leaves.  The cut tree is kept in the result so disjointness across
every split stays independently checkable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import oracle
from .cuts import CutResult, hamburger_cut
from .geometry import (
    ColoredInstance,
    Point,
    affinely_independent,
    validate_general_position,
)


@dataclass(frozen=True)
class RainbowSimplex:
    """A (d-1)-simplex on d vertices of d distinct colors."""

    vertices: tuple[tuple[int, Point], ...]

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(p for _, p in self.vertices)

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.vertices)

    def is_rainbow(self) -> bool:
        return len(set(self.colors)) == len(self.vertices)


@dataclass(frozen=True)
class CutLeaf:
    simplex: int


@dataclass(frozen=True)
class CutNode:
    cut: CutResult
    minus: "CutNode | CutLeaf"
    plus: "CutNode | CutLeaf"


@dataclass(frozen=True)
class PartitionResult:
    d: int
    simplices: tuple[RainbowSimplex, ...]
    cut_tree: CutNode | CutLeaf | None


def rainbow_partition(inst: ColoredInstance, validate: bool = True) -> PartitionResult:
    """Partition the instance into n disjoint rainbow (d-1)-simplices.

    Requires general position, dn points total, and no color used more
    than n times.  CutNotFound propagating out of the recursion signals
    that these hypotheses do not hold.
    """
    if not inst.sizes_admissible():
        raise ValueError(
            f"sizes {inst.sizes} are inadmissible: need sum dn with every class <= n"
        )
    if validate:
        report = validate_general_position(inst)
        if not report.ok:
            raise ValueError(f"instance not in general position: {report.violation}")
    simplices: list[RainbowSimplex] = []

    def recurse(sub: ColoredInstance):
        if sub.n == 1:
            verts = tuple(
                (color, cls[0]) for color, cls in enumerate(sub.classes) if cls
            )
            simplices.append(RainbowSimplex(verts))
            return CutLeaf(len(simplices) - 1)
        cut = hamburger_cut(sub)
        minus_inst = cut.minus_instance()
        plus_inst = cut.plus_instance()
        if minus_inst.total <= plus_inst.total:
            minus_node = recurse(minus_inst)
            plus_node = recurse(plus_inst)
        else:
            plus_node = recurse(plus_inst)
            minus_node = recurse(minus_inst)
        return CutNode(cut, minus_node, plus_node)

    tree = recurse(inst) if inst.total else None
    return PartitionResult(inst.d, tuple(simplices), tree)


@dataclass(frozen=True, eq=False)
class MergedClasses:
    """Result of merging r > 3 planar color classes down to 3."""

    instance: ColoredInstance
    groups: tuple[tuple[int, ...], ...]
    original_color: dict[Point, int]

    def original_colors_of(self, simplex: RainbowSimplex) -> tuple[int, ...]:
        return tuple(self.original_color[p] for p in simplex.points)


def merge_color_classes_2d(
    classes: Sequence[Sequence[Point]], n: int
) -> MergedClasses:
    """Merge the smallest planar color classes together until 3 remain.

    With sum of sizes 2n and every size <= n, the two smallest classes of
    r >= 4 classes together hold at most 4n/r <= n points, so no merged
    class ever exceeds n.  The returned mapping recovers original colors.
    """
    classes = [tuple(c) for c in classes]
    sizes = [len(c) for c in classes]
    if sum(sizes) != 2 * n:
        raise ValueError(f"sizes sum to {sum(sizes)}, expected 2n = {2 * n}")
    if sizes and max(sizes) > n:
        raise ValueError(f"a class of size {max(sizes)} exceeds n = {n}")
    original_color = {}
    for color, cls in enumerate(classes):
        for p in cls:
            if len(p) != 2:
                raise ValueError("merging is a planar (d=2) operation")
            original_color[p] = color

    groups = [((i,), cls) for i, cls in enumerate(classes)]
    while len(groups) > 3:
        groups.sort(key=lambda g: (len(g[1]), g[0][0]))
        (ids1, pts1), (ids2, pts2) = groups[0], groups[1]
        merged = (tuple(sorted(ids1 + ids2)), pts1 + pts2)
        groups = [merged] + groups[2:]
    groups.sort(key=lambda g: g[0][0])
    while len(groups) < 3:
        groups.append(((), ()))
    merged_sizes = [len(pts) for _, pts in groups]
    if merged_sizes and max(merged_sizes) > n:
        raise RuntimeError(f"merge produced an oversized class: {merged_sizes}")
    inst = ColoredInstance(2, tuple(pts for _, pts in groups))
    return MergedClasses(inst, tuple(ids for ids, _ in groups), original_color)


def flag_same_original_color_edges(
    result: PartitionResult, merged: MergedClasses
) -> list[int]:
    """Indices of simplices whose vertices share an original color.

    Merging can in principle pair two points that were distinct classes
    before the merge; such edges are reported rather than repaired.
    """
    flagged = []
    for i, s in enumerate(result.simplices):
        orig = merged.original_colors_of(s)
        if len(set(orig)) < len(orig):
            flagged.append(i)
    return flagged


@dataclass(frozen=True)
class PartitionReport:
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def verify_partition(inst: ColoredInstance, result: PartitionResult) -> PartitionReport:
    """Independent check of a partition: count, vertices, rainbow, disjoint."""
    failures = []
    expected = inst.total // inst.d if inst.d else 0
    if len(result.simplices) != expected:
        failures.append(
            f"simplex count {len(result.simplices)} != n = {expected}"
        )

    instance_vertices = sorted(
        (color, p) for color, cls in enumerate(inst.classes) for p in cls
    )
    partition_vertices = sorted(
        (color, p) for s in result.simplices for color, p in s.vertices
    )
    if instance_vertices != partition_vertices:
        failures.append("vertex multiset differs from the instance")

    for i, s in enumerate(result.simplices):
        if len(s.vertices) != inst.d:
            failures.append(f"simplex {i} has {len(s.vertices)} vertices, expected {inst.d}")
            continue
        if not s.is_rainbow():
            failures.append(f"simplex {i} repeats a color: {s.colors}")
        if not affinely_independent(s.points):
            failures.append(f"simplex {i} is degenerate (affinely dependent vertices)")

    for i, j in ((i, j) for i in range(len(result.simplices)) for j in range(i)):
        if not oracle.simplices_disjoint_exact(
            result.simplices[i].points, result.simplices[j].points
        ):
            failures.append(f"simplices {j} and {i} intersect")
    return PartitionReport(tuple(failures))
