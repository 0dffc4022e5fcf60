"""Lossless JSON schemas for instances, cuts, partitions and measures.

Instance coordinates are serialized as exact "p/q" (or integer / decimal)
strings and parsed back through `Fraction`, so files round-trip without
any floating-point contamination.  Every object is validated strictly:
all fields mandatory, unknown fields rejected.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from .cuts import CutResult
from .geometry import ColoredInstance, Hyperplane, Point, as_point
from .measures import BallMixture, GridDensity, MeasureModel
from .partition import CutLeaf, CutNode, PartitionResult, RainbowSimplex


class FormatError(ValueError):
    """Malformed or schema-violating input document."""


def _check_keys(obj: Any, keys: tuple[str, ...], what: str) -> None:
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    unknown = [k for k in obj if k not in keys]
    if missing:
        raise FormatError(f"{what} is missing fields: {missing}")
    if unknown:
        raise FormatError(f"{what} has unknown fields: {unknown}")


def _coord(value: Any, what: str) -> Fraction:
    if isinstance(value, (str, int, Fraction)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"{what}: bad coordinate {value!r}") from exc
    raise FormatError(f"{what}: coordinate must be a string or integer, got {type(value).__name__}")


def _frac_str(x: Fraction) -> str:
    return str(x)


def _point_json(p: Point) -> list[str]:
    return [_frac_str(c) for c in p]


def _point(value: Any, d: int, what: str) -> Point:
    if not isinstance(value, list) or len(value) != d:
        raise FormatError(f"{what}: point must be a list of {d} coordinates")
    return tuple(_coord(c, what) for c in value)


# -- instances ---------------------------------------------------------------

def instance_to_json(inst: ColoredInstance) -> dict:
    return {
        "d": inst.d,
        "classes": [[_point_json(p) for p in cls] for cls in inst.classes],
    }


def instance_from_json(obj: Any) -> ColoredInstance:
    _check_keys(obj, ("d", "classes"), "instance")
    d = obj["d"]
    if not isinstance(d, int) or d < 2:
        raise FormatError(f"instance: d must be an integer >= 2, got {d!r}")
    classes = obj["classes"]
    if not isinstance(classes, list) or len(classes) != d + 1:
        raise FormatError(f"instance: expected {d + 1} classes")
    parsed = []
    for i, cls in enumerate(classes):
        if not isinstance(cls, list):
            raise FormatError(f"instance: class {i} must be a list of points")
        parsed.append(tuple(_point(p, d, f"class {i}") for p in cls))
    try:
        return ColoredInstance(d, tuple(parsed))
    except ValueError as exc:
        raise FormatError(f"instance: {exc}") from exc


# -- hyperplanes and cuts ----------------------------------------------------

def hyperplane_to_json(h: Hyperplane) -> dict:
    return {"normal": [_frac_str(c) for c in h.normal], "offset": _frac_str(h.offset)}


def hyperplane_from_json(obj: Any, d: int) -> Hyperplane:
    _check_keys(obj, ("normal", "offset"), "hyperplane")
    normal = obj["normal"]
    if not isinstance(normal, list) or len(normal) != d:
        raise FormatError(f"hyperplane: normal must have {d} entries")
    try:
        return Hyperplane(
            tuple(_coord(c, "hyperplane normal") for c in normal),
            _coord(obj["offset"], "hyperplane offset"),
        )
    except ValueError as exc:
        raise FormatError(f"hyperplane: {exc}") from exc


def cut_to_json(cut: CutResult) -> dict:
    return {
        "d": cut.d,
        "separator": hyperplane_to_json(cut.separator),
        "minus": {
            "classes": [[_point_json(p) for p in cls] for cls in cut.minus_classes],
            "tally": list(cut.minus_tally),
        },
        "plus": {
            "classes": [[_point_json(p) for p in cls] for cls in cut.plus_classes],
            "tally": list(cut.plus_tally),
        },
        "certificate": {
            "points": [_point_json(p) for p in cut.spanning_points],
            "assignment": list(cut.assignment),
        },
    }


def _side_from_json(obj: Any, d: int, what: str):
    _check_keys(obj, ("classes", "tally"), what)
    classes = obj["classes"]
    if not isinstance(classes, list) or len(classes) != d + 1:
        raise FormatError(f"{what}: expected {d + 1} classes")
    parsed = tuple(
        tuple(_point(p, d, what) for p in cls) for cls in classes
    )
    tally = obj["tally"]
    if not isinstance(tally, list) or not all(isinstance(t, int) for t in tally):
        raise FormatError(f"{what}: tally must be a list of integers")
    return parsed, tuple(tally)


def cut_from_json(obj: Any) -> CutResult:
    _check_keys(obj, ("d", "separator", "minus", "plus", "certificate"), "cut")
    d = obj["d"]
    if not isinstance(d, int) or d < 2:
        raise FormatError("cut: d must be an integer >= 2")
    minus_classes, minus_tally = _side_from_json(obj["minus"], d, "cut minus side")
    plus_classes, plus_tally = _side_from_json(obj["plus"], d, "cut plus side")
    cert = obj["certificate"]
    _check_keys(cert, ("points", "assignment"), "cut certificate")
    spanning = tuple(_point(p, d, "certificate") for p in cert["points"])
    assignment = cert["assignment"]
    if not isinstance(assignment, list) or not all(s in (-1, 1) for s in assignment):
        raise FormatError("cut certificate: assignment entries must be -1 or 1")
    if len(assignment) != len(spanning):
        raise FormatError("cut certificate: one assignment per spanning point")
    return CutResult(
        separator=hyperplane_from_json(obj["separator"], d),
        minus_classes=minus_classes,
        plus_classes=plus_classes,
        minus_tally=minus_tally,
        plus_tally=plus_tally,
        spanning_points=spanning,
        assignment=tuple(assignment),
    )


# -- partitions ---------------------------------------------------------------

def _tree_to_json(node) -> dict:
    if isinstance(node, CutLeaf):
        return {"type": "leaf", "simplex": node.simplex}
    return {
        "type": "cut",
        "cut": cut_to_json(node.cut),
        "minus": _tree_to_json(node.minus),
        "plus": _tree_to_json(node.plus),
    }


def _tree_from_json(obj: Any):
    if not isinstance(obj, dict) or "type" not in obj:
        raise FormatError("cut tree node must be an object with a 'type'")
    if obj["type"] == "leaf":
        _check_keys(obj, ("type", "simplex"), "cut tree leaf")
        if not isinstance(obj["simplex"], int):
            raise FormatError("cut tree leaf: simplex must be an index")
        return CutLeaf(obj["simplex"])
    if obj["type"] == "cut":
        _check_keys(obj, ("type", "cut", "minus", "plus"), "cut tree node")
        return CutNode(
            cut_from_json(obj["cut"]),
            _tree_from_json(obj["minus"]),
            _tree_from_json(obj["plus"]),
        )
    raise FormatError(f"cut tree node has unknown type {obj['type']!r}")


def partition_to_json(result: PartitionResult) -> dict:
    return {
        "d": result.d,
        "simplices": [
            {
                "colors": list(s.colors),
                "points": [_point_json(p) for p in s.points],
            }
            for s in result.simplices
        ],
        "cut_tree": None if result.cut_tree is None else _tree_to_json(result.cut_tree),
    }


def partition_from_json(obj: Any) -> PartitionResult:
    _check_keys(obj, ("d", "simplices", "cut_tree"), "partition")
    d = obj["d"]
    if not isinstance(d, int) or d < 2:
        raise FormatError("partition: d must be an integer >= 2")
    if not isinstance(obj["simplices"], list):
        raise FormatError("partition: simplices must be a list")
    simplices = []
    for i, s in enumerate(obj["simplices"]):
        _check_keys(s, ("colors", "points"), f"simplex {i}")
        colors = s["colors"]
        points = s["points"]
        if (
            not isinstance(colors, list)
            or not all(isinstance(c, int) and 0 <= c <= d for c in colors)
            or not isinstance(points, list)
            or len(points) != len(colors)
        ):
            raise FormatError(f"simplex {i}: needs matching colors and points lists")
        simplices.append(
            RainbowSimplex(
                tuple(
                    (c, _point(p, d, f"simplex {i}")) for c, p in zip(colors, points)
                )
            )
        )
    tree = None if obj["cut_tree"] is None else _tree_from_json(obj["cut_tree"])
    return PartitionResult(d, tuple(simplices), tree)


# -- measure models ----------------------------------------------------------

def _floats(value: Any, what: str) -> list[float]:
    if not isinstance(value, list) or not all(isinstance(x, (int, float)) for x in value):
        raise FormatError(f"{what} must be a list of numbers")
    return [float(x) for x in value]


def measure_model_to_json(model: MeasureModel) -> dict:
    measures = []
    for c in model.colors:
        if isinstance(c, BallMixture):
            measures.append(
                {
                    "type": "balls",
                    "radius": c.radius,
                    "centers": c.centers.tolist(),
                    "weights": c.weights.tolist(),
                }
            )
        else:
            measures.append(
                {
                    "type": "grid",
                    "origin": c.origin.tolist(),
                    "cell_size": c.cell_size,
                    "weights": c.weights.tolist(),
                }
            )
    return {"d": model.d, "measures": measures}


def _ball_mixture_from_json(obj: Any, d: int, what: str) -> BallMixture:
    _check_keys(obj, ("type", "radius", "centers", "weights"), what)
    if not isinstance(obj["radius"], (int, float)) or obj["radius"] <= 0:
        raise FormatError(f"{what}: radius must be a positive number")
    centers = obj["centers"]
    if not isinstance(centers, list):
        raise FormatError(f"{what}: centers must be a list of points")
    parsed = [ _floats(c, f"{what} center") for c in centers ]
    if any(len(c) != d for c in parsed):
        raise FormatError(f"{what}: centers must have {d} coordinates")
    weights = _floats(obj["weights"], f"{what} weights")
    try:
        return BallMixture(
            np.array(parsed, float).reshape(len(parsed), d),
            np.array(weights),
            float(obj["radius"]),
        )
    except ValueError as exc:
        raise FormatError(f"{what}: {exc}") from exc


def _grid_from_json(obj: Any, d: int, what: str) -> GridDensity:
    _check_keys(obj, ("type", "origin", "cell_size", "weights"), what)
    origin = _floats(obj["origin"], f"{what} origin")
    if len(origin) != d:
        raise FormatError(f"{what}: origin must have {d} coordinates")
    if not isinstance(obj["cell_size"], (int, float)) or obj["cell_size"] <= 0:
        raise FormatError(f"{what}: cell_size must be a positive number")
    try:
        weights = np.array(obj["weights"], dtype=float)
    except ValueError as exc:
        raise FormatError(f"{what}: ragged weights array") from exc
    try:
        return GridDensity(np.array(origin), float(obj["cell_size"]), weights)
    except ValueError as exc:
        raise FormatError(f"{what}: {exc}") from exc


def measure_model_from_json(obj: Any) -> MeasureModel:
    _check_keys(obj, ("d", "measures"), "measure model")
    d = obj["d"]
    if not isinstance(d, int) or d < 2:
        raise FormatError("measure model: d must be an integer >= 2")
    measures = obj["measures"]
    if not isinstance(measures, list) or len(measures) != d + 1:
        raise FormatError(f"measure model: expected {d + 1} measures")
    colors = []
    for i, m in enumerate(measures):
        what = f"measure {i}"
        if not isinstance(m, dict) or "type" not in m:
            raise FormatError(f"{what} must be an object with a 'type'")
        if m["type"] == "balls":
            colors.append(_ball_mixture_from_json(m, d, what))
        elif m["type"] == "grid":
            colors.append(_grid_from_json(m, d, what))
        else:
            raise FormatError(f"{what} has unknown type {m['type']!r}")
    try:
        return MeasureModel(d, tuple(colors))
    except ValueError as exc:
        raise FormatError(f"measure model: {exc}") from exc


# -- file helpers --------------------------------------------------------------

def load_json_exact(path: str) -> Any:
    """Load JSON with decimal literals parsed to exact Fractions."""
    with open(path) as fh:
        try:
            return json.load(fh, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_json_float(path: str) -> Any:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(obj: Any, path: str | None) -> str:
    text = json.dumps(obj, indent=2)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
