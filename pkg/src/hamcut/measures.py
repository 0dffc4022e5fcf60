"""Halfspace mass equipartition for d+1 absolutely continuous measures.

Halfspaces are parametrized by unit vectors u = (u0, u1, ..., ud): the
open sides of {x : u1 x1 + ... + ud xd = u0} are H-(u) (the `<` side) and
H+(u), with antipodal u swapping them and the poles (+-1, 0, ..., 0)
mapping to the full space / empty set.  The mass map

    f_i(u) = mu_i(H-(u))

is continuous, and for balanced masses (every total <= 1/d of the grand
total) it must meet the segment between the two extreme balanced mass
vectors a and c.  The solver looks for that intersection by multi-start
damped Newton iteration on the projection of f - b orthogonal to the
segment direction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from math import factorial

import numpy as np
from scipy.special import betainc, ndtri
from scipy.stats import qmc

from .geometry import Hyperplane


class ConvergenceFailure(Exception):
    """No solver start reached the requested residual."""


def ball_cap_fraction(a, d: int):
    """Fraction of a unit d-ball lying in {x1 < a}, for a in [-1, 1]."""
    a = np.clip(np.asarray(a, dtype=float), -1.0, 1.0)
    half = 0.5 * betainc((d + 1) / 2.0, 0.5, 1.0 - a * a)
    return np.where(a >= 0.0, 1.0 - half, half)


def box_halfspace_fraction(lo, widths, normal, offset) -> float:
    """Volume fraction of an axis-aligned box inside {normal.x < offset}.

    Closed-form truncated-power formula; axes with zero normal component
    factor out, axes with negative component are reflected.
    """
    lo = np.asarray(lo, dtype=float)
    widths = np.asarray(widths, dtype=float)
    normal = np.asarray(normal, dtype=float)
    c = float(offset) - float(normal @ lo)
    nz = normal != 0.0
    n = normal[nz]
    w = widths[nz]
    k = n.size
    if k == 0:
        return 1.0 if c > 0 else 0.0
    neg = n < 0.0
    c -= float(n[neg] @ w[neg])
    n = np.abs(n)
    steps = n * w
    total = 0.0
    for corner in iter_product((0, 1), repeat=k):
        t = c - sum(s for s, bit in zip(steps, corner) if bit)
        if t > 0.0:
            total += (-1) ** sum(corner) * t**k
    volume = total / (factorial(k) * float(np.prod(n)))
    return min(max(volume / float(np.prod(w)), 0.0), 1.0)


@dataclass(frozen=True, eq=False)
class BallMixture:
    """Equal-radius balls with positive weights; one mixture per color."""

    centers: np.ndarray
    weights: np.ndarray
    radius: float

    def __post_init__(self):
        centers = np.asarray(self.centers, float)
        if centers.ndim == 1:
            if centers.size == 0:
                raise ValueError("an empty mixture needs centers of explicit shape (0, d)")
            centers = centers[None, :]
        if centers.ndim != 2:
            raise ValueError("centers must be an (m, d) array")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "weights", np.asarray(self.weights, float).ravel())
        if len(self.weights) != len(self.centers):
            raise ValueError("one weight per ball center required")
        if np.any(self.weights <= 0):
            raise ValueError("ball weights must be positive")
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    @property
    def d(self) -> int:
        return self.centers.shape[1]

    def total_mass(self) -> float:
        return float(self.weights.sum()) if len(self.weights) else 0.0

    def scaled(self, factor: float) -> "BallMixture":
        return BallMixture(self.centers, self.weights * factor, self.radius)

    def recentered(self, shift, scale: float) -> "BallMixture":
        return BallMixture(
            (self.centers - np.asarray(shift, float)) / scale,
            self.weights,
            self.radius / scale,
        )

    def inflated(self, factor: float) -> "BallMixture":
        """Same masses on supports grown by `factor` (for continuation)."""
        return BallMixture(self.centers, self.weights, self.radius * factor)

    def halfspace_mass(self, normal: np.ndarray, offset: float) -> float:
        return float(self.halfspace_mass_batch(normal, np.array([offset]))[0])

    def halfspace_mass_batch(self, normal: np.ndarray, offsets: np.ndarray) -> np.ndarray:
        """Masses in {normal.x < offset} for many offsets of one normal."""
        offsets = np.asarray(offsets, float)
        if not len(self.weights):
            return np.zeros(len(offsets))
        norm = float(np.linalg.norm(normal))
        signed = (offsets[:, None] - (self.centers @ normal)[None, :]) / norm
        return ball_cap_fraction(signed / self.radius, self.d) @ self.weights

    def bounds(self):
        if not len(self.weights):
            return None
        return self.centers.min(axis=0) - self.radius, self.centers.max(axis=0) + self.radius

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        idx = rng.choice(len(self.weights), size=n, p=self.weights / self.weights.sum())
        g = rng.standard_normal((n, self.d))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        r = self.radius * rng.random(n) ** (1.0 / self.d)
        return self.centers[idx] + g * r[:, None]


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Uniform-per-cell density on a regular grid; weights are cell masses."""

    origin: np.ndarray
    cell_size: float
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "origin", np.asarray(self.origin, float))
        object.__setattr__(self, "weights", np.asarray(self.weights, float))
        if self.cell_size <= 0:
            raise ValueError("cell size must be positive")
        if self.weights.ndim != len(self.origin):
            raise ValueError("weights array rank must equal the dimension")
        if len(self.origin) > 3:
            raise ValueError("grid densities support d <= 3 only")
        if np.any(self.weights < 0):
            raise ValueError("cell weights must be nonnegative")

    @property
    def d(self) -> int:
        return len(self.origin)

    def total_mass(self) -> float:
        return float(self.weights.sum())

    def scaled(self, factor: float) -> "GridDensity":
        return GridDensity(self.origin, self.cell_size, self.weights * factor)

    def recentered(self, shift, scale: float) -> "GridDensity":
        return GridDensity(
            (self.origin - np.asarray(shift, float)) / scale,
            self.cell_size / scale,
            self.weights,
        )

    def inflated(self, factor: float) -> "GridDensity":
        """Same masses on a grid grown by `factor` about its own center."""
        center = self.origin + np.array(self.weights.shape) * (self.cell_size / 2.0)
        cell = self.cell_size * factor
        origin = center - np.array(self.weights.shape) * (cell / 2.0)
        return GridDensity(origin, cell, self.weights)

    def _cell_corners(self) -> np.ndarray:
        idx = np.indices(self.weights.shape).reshape(self.d, -1).T
        return self.origin + idx * self.cell_size

    def halfspace_mass(self, normal: np.ndarray, offset: float) -> float:
        return float(self.halfspace_mass_batch(normal, np.array([offset]))[0])

    def halfspace_mass_batch(self, normal: np.ndarray, offsets: np.ndarray) -> np.ndarray:
        """Masses in {normal.x < offset} for many offsets of one normal."""
        offsets = np.asarray(offsets, float)
        flat = self.weights.ravel()
        live = flat > 0
        if not live.any():
            return np.zeros(len(offsets))
        weights = flat[live]
        corners = self._cell_corners()[live]
        normal = np.asarray(normal, float)
        nz = normal != 0.0
        n = normal[nz]
        k = n.size
        if k == 0:
            return np.where(offsets > 0, weights.sum(), 0.0)
        # Local coordinates per cell; reflect negative axes into positive ones.
        c0 = offsets[:, None] - corners @ normal
        width = self.cell_size
        c0 = c0 - float(n[n < 0].sum()) * width
        n = np.abs(n)
        steps = n * width
        total = np.zeros_like(c0)
        for corner in iter_product((0, 1), repeat=k):
            t = c0 - sum(s for s, bit in zip(steps, corner) if bit)
            np.maximum(t, 0.0, out=t)
            total += (-1) ** sum(corner) * t**k
        fracs = total / (factorial(k) * float(np.prod(n)) * width**k)
        np.clip(fracs, 0.0, 1.0, out=fracs)
        return fracs @ weights

    def bounds(self):
        if not (self.weights > 0).any():
            return None
        idx = np.argwhere(self.weights > 0)
        return (
            self.origin + idx.min(axis=0) * self.cell_size,
            self.origin + (idx.max(axis=0) + 1) * self.cell_size,
        )

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        flat = self.weights.ravel()
        idx = rng.choice(flat.size, size=n, p=flat / flat.sum())
        multi = np.column_stack(np.unravel_index(idx, self.weights.shape))
        return self.origin + (multi + rng.random((n, self.d))) * self.cell_size


ColorMeasure = BallMixture | GridDensity


@dataclass(frozen=True, eq=False)
class MeasureModel:
    """d+1 bounded-support measures on R^d."""

    d: int
    colors: tuple[ColorMeasure, ...]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("dimension must be >= 2")
        if len(self.colors) != self.d + 1:
            raise ValueError(f"expected {self.d + 1} color measures, got {len(self.colors)}")
        for c in self.colors:
            if c.d != self.d:
                raise ValueError("color measure dimension != model dimension")

    def total_masses(self) -> np.ndarray:
        return np.array([c.total_mass() for c in self.colors])

    def normalized(self) -> "MeasureModel":
        total = float(self.total_masses().sum())
        if total <= 0:
            raise ValueError("model has no mass")
        return MeasureModel(self.d, tuple(c.scaled(1.0 / total) for c in self.colors))

    def recentered(self, shift, scale: float) -> "MeasureModel":
        return MeasureModel(self.d, tuple(c.recentered(shift, scale) for c in self.colors))

    def inflated(self, factor: float) -> "MeasureModel":
        return MeasureModel(self.d, tuple(c.inflated(factor) for c in self.colors))

    def bounds(self):
        lows, highs = [], []
        for c in self.colors:
            b = c.bounds()
            if b is not None:
                lows.append(b[0])
                highs.append(b[1])
        if not lows:
            raise ValueError("model has empty support")
        return np.min(lows, axis=0), np.max(highs, axis=0)


def as_sphere_param(u, d: int) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (d + 1,):
        raise ValueError(f"sphere parameter must have length {d + 1}")
    if abs(float(u @ u) - 1.0) > 1e-12:
        raise ValueError("sphere parameter must have unit norm (within 1e-12)")
    return u


def unit_sphere_param(vec) -> np.ndarray:
    vec = np.asarray(vec, dtype=float)
    norm = float(np.linalg.norm(vec))
    if norm == 0:
        raise ValueError("cannot normalize the zero vector")
    return vec / norm


def eval_f(model: MeasureModel, u) -> np.ndarray:
    """Mass of each color in H-(u); the poles map to everything / nothing."""
    u = as_sphere_param(u, model.d)
    normal = u[1:]
    if not normal.any():
        masses = model.total_masses()
        return masses if u[0] > 0 else np.zeros_like(masses)
    return np.array([c.halfspace_mass(normal, u[0]) for c in model.colors])


def sphere_param_to_hyperplane(u) -> Hyperplane:
    """Exact rational hyperplane matching H-(u) = {normal.x < offset}."""
    u = np.asarray(u, dtype=float)
    if not u[1:].any():
        raise ValueError("poles do not define a hyperplane")
    return Hyperplane(tuple(Fraction(float(c)) for c in u[1:]), Fraction(float(u[0])))


@dataclass(frozen=True, eq=False)
class TargetSpec:
    """Mass targets for the truncated target polytope.

    `order` sorts colors by descending total so the minimum comes last;
    `a`, `c` and `b` = (a + c) / 2 are in sorted coordinates.
    """

    d: int
    omega: np.ndarray
    order: tuple[int, ...]
    t: float
    a: np.ndarray
    c: np.ndarray
    b: np.ndarray
    bound: float

    def sort(self, y: np.ndarray) -> np.ndarray:
        return np.asarray(y, float)[list(self.order)]


def target_spec(omega, d: int) -> TargetSpec:
    """Build the target: t = min(1/(2d), 1/d - w_min), segment a--c, bound."""
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (d + 1,):
        raise ValueError(f"expected {d + 1} masses")
    if float(omega.min()) < 0.0:
        raise ValueError("masses must be nonnegative")
    if abs(float(omega.sum()) - 1.0) > 1e-9:
        raise ValueError(f"masses must sum to 1, got {omega.sum()}")
    if float(omega.max()) > 1.0 / d + 1e-12:
        bad = int(np.argmax(omega))
        raise ValueError(
            f"masses are not balanced: omega[{bad}] = {omega[bad]} > 1/d = {1.0 / d}"
        )
    order = tuple(sorted(range(d + 1), key=lambda i: (-omega[i], i)))
    w = omega[list(order)]
    w_min = float(w[-1])
    t = min(1.0 / (2 * d), 1.0 / d - w_min)
    a = np.empty(d + 1)
    a[:d] = t
    a[d] = 0.0
    c = np.empty(d + 1)
    c[:d] = w[:d] - t
    c[d] = w_min
    b = (a + c) / 2.0
    bound = min(0.5, 1.0 - d * w_min)
    return TargetSpec(d, omega, order, t, a, c, b, bound)


def in_truncated_target(y, spec: TargetSpec, tol: float) -> bool:
    """Both-sides balancedness plus the total-mass window, within tol."""
    y = np.asarray(y, dtype=float)
    total = float(y.sum())
    rest = spec.omega - y
    if np.any(y > total / spec.d + tol):
        return False
    if np.any(rest > float(rest.sum()) / spec.d + tol):
        return False
    return spec.bound - tol <= total <= 1.0 - spec.bound + tol


def distance_to_target_segment(y, spec: TargetSpec) -> float:
    """Euclidean distance from f-value y (original order) to segment a--c."""
    ys = spec.sort(y)
    direction = spec.c - spec.a
    denom = float(direction @ direction)
    if denom == 0.0:
        return float(np.linalg.norm(ys - spec.a))
    s = float(np.clip((ys - spec.a) @ direction / denom, 0.0, 1.0))
    return float(np.linalg.norm(ys - (spec.a + s * direction)))


def _segment_projection_basis(spec: TargetSpec) -> np.ndarray:
    """Orthonormal basis (rows) of the complement of the segment direction.

    For the degenerate ham-sandwich case (a == c) the direction falls back
    to the minimum-mass axis, recovering the classic bisection system.
    """
    k = spec.d + 1
    direction = spec.c - spec.a
    norm = float(np.linalg.norm(direction))
    if norm < 1e-14:
        direction = np.zeros(k)
        direction[-1] = 1.0
    else:
        direction = direction / norm
    rows = [direction]
    for j in range(k):
        e = np.zeros(k)
        e[j] = 1.0
        for r in rows:
            e = e - (e @ r) * r
        n = float(np.linalg.norm(e))
        if n > 1e-9:
            rows.append(e / n)
        if len(rows) == k:
            break
    return np.array(rows[1:])


def _tangent_basis(u: np.ndarray) -> np.ndarray:
    k = len(u)
    rows = [u]
    for j in range(k):
        e = np.zeros(k)
        e[j] = 1.0
        for r in rows:
            e = e - (e @ r) * r
        n = float(np.linalg.norm(e))
        if n > 1e-9:
            rows.append(e / n)
        if len(rows) == k:
            break
    return np.array(rows[1:]).T


def _eval_batch(model: MeasureModel, normal: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """f for many offsets of one normal; shape (len(offsets), d+1).

    Ball-only models are fused into a single incomplete-beta call, which
    is what makes the offset-matching scan cheap.
    """
    offsets = np.asarray(offsets, float)
    if all(isinstance(c, BallMixture) for c in model.colors):
        norm = float(np.linalg.norm(normal))
        projs = []
        scales = []
        weights = []
        slices = []
        at = 0
        for c in model.colors:
            k = len(c.weights)
            slices.append((at, at + k))
            at += k
            if k:
                projs.append(c.centers @ normal)
                scales.append(np.full(k, norm * c.radius))
                weights.append(c.weights)
        if at == 0:
            return np.zeros((len(offsets), model.d + 1))
        signed = (offsets[:, None] - np.concatenate(projs)[None, :]) / np.concatenate(scales)
        caps = ball_cap_fraction(signed, model.d) * np.concatenate(weights)
        zeros = np.zeros(len(offsets))
        return np.column_stack(
            [caps[:, s:e].sum(axis=1) if e > s else zeros for s, e in slices]
        )
    return np.column_stack(
        [c.halfspace_mass_batch(normal, offsets) for c in model.colors]
    )


def _direction_net(d: int, count: int) -> np.ndarray:
    """Deterministic, roughly uniform unit normals covering half of S^(d-1)."""
    if d == 2:
        ang = np.pi * (np.arange(count) + 0.5) / count
        return np.column_stack([np.cos(ang), np.sin(ang)])
    if d == 3:
        i = np.arange(count)
        z = (i + 0.5) / count
        phi = i * (np.pi * (3.0 - np.sqrt(5.0)))
        rho = np.sqrt(1.0 - z * z)
        return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    sobol = qmc.Sobol(d, scramble=False)
    m = int(np.ceil(np.log2(count + 1)))
    raw = ndtri(np.clip(sobol.random_base2(m)[1 : count + 1], 1e-6, 1 - 1e-6))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    flip = np.sign(raw[:, 0])
    flip[flip == 0] = 1.0
    return raw * flip[:, None]


def _scan_candidates(
    inner: MeasureModel,
    spec: TargetSpec,
    proj: np.ndarray,
    radius: float,
    n_dirs: int,
    n_s: int,
    top: int,
) -> list[np.ndarray]:
    """Seed hyperplanes for the polish stage.

    For every direction in the net, bisect the offset so the H- total
    matches each target total on the segment (the total is the one
    coordinate in which f is always monotone, so bisection is immune to
    the plateaus where no mass is being cut), then rank the projected
    residuals at the matched offsets.
    """
    order = list(spec.order)
    a_sum = float(spec.a.sum())
    s_grid = np.linspace(0.0, 1.0, n_s)
    targets = a_sum + s_grid * (1.0 - 2.0 * a_sum)
    scored: list[tuple[float, int, np.ndarray]] = []
    for v in _direction_net(inner.d, n_dirs):
        lo = np.full(n_s, -radius)
        hi = np.full(n_s, radius)
        for _ in range(42):
            mid = 0.5 * (lo + hi)
            above = _eval_batch(inner, v, mid).sum(axis=1) > targets
            hi[above] = mid[above]
            lo[~above] = mid[~above]
        mid = 0.5 * (lo + hi)
        f_mid = _eval_batch(inner, v, mid)
        res = (f_mid[:, order] - spec.b) @ proj.T
        scores = np.linalg.norm(res, axis=1)
        for j in range(n_s):
            scored.append((float(scores[j]), len(scored), np.append(mid[j], v)))
    scored.sort(key=lambda item: item[:2])
    return [unit_sphere_param(u) for _, _, u in scored[:top]]


def _solver_starts(d: int, seeds: int, rng_seed: int) -> list[np.ndarray]:
    starts = []
    for i in range(d):
        e = np.zeros(d + 1)
        e[i + 1] = 1.0
        starts.append(e)
    sobol = qmc.Sobol(d + 1, scramble=False)
    m = max(3, int(np.ceil(np.log2(2 * (d + 2) + 1))))
    raw = sobol.random_base2(m)[1:]
    for row in ndtri(np.clip(raw, 1e-6, 1.0 - 1e-6)):
        norm = float(np.linalg.norm(row))
        if norm > 1e-9:
            starts.append(row / norm)
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    for _ in range(seeds):
        g = rng.standard_normal(d + 1)
        starts.append(g / float(np.linalg.norm(g)))
    return starts


def _newton_polish(residual, u: np.ndarray, d: int, target: float, max_iter: int):
    """Damped tangent-space Newton; returns (u, residual norm)."""
    r = residual(u)
    rn = float(np.linalg.norm(r))
    for _ in range(max_iter):
        if rn <= target:
            break
        tangent = _tangent_basis(u)
        jac = np.empty((len(r), d))
        eps = 1e-7
        for j in range(d):
            u_eps = u + eps * tangent[:, j]
            u_eps /= float(np.linalg.norm(u_eps))
            jac[:, j] = (residual(u_eps) - r) / eps
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        if not np.all(np.isfinite(step)) or float(np.linalg.norm(step)) < 1e-16:
            break
        improved = False
        alpha = 1.0
        for _ in range(30):
            u_try = u + tangent @ (alpha * step)
            norm = float(np.linalg.norm(u_try))
            if norm > 1e-12:
                u_try /= norm
                r_try = residual(u_try)
                rn_try = float(np.linalg.norm(r_try))
                if rn_try < rn:
                    u, r, rn = u_try, r_try, rn_try
                    improved = True
                    break
            alpha /= 2.0
        if not improved:
            break
    return u, rn


_CONTINUATION_FACTORS = tuple(np.geomspace(6.0, 1.0, 12))


def _continuation_solve(
    inner: MeasureModel,
    spec: TargetSpec,
    proj: np.ndarray,
    d: int,
    radius: float,
    seeds: int,
    rng_seed: int,
    inner_tol: float,
    max_iter: int,
):
    """Homotopy fallback: solve with inflated supports, then shrink back.

    Fat supports overlap, so f has no flat regions and Newton converges
    from generic starts; each shrink step re-polishes from the tracked
    zero.  Several distinct fat-level zeros are tracked in case one path
    folds away, and a stuck track is re-seeded by a scan at its level.
    """
    order = list(spec.order)

    def level_residual(factor: float):
        model = inner if factor == 1.0 else inner.inflated(factor)

        def residual(u: np.ndarray) -> np.ndarray:
            return proj @ (eval_f(model, u)[order] - spec.b)

        return residual

    fat = level_residual(_CONTINUATION_FACTORS[0])
    fat_zeros: list[np.ndarray] = []
    for u0 in _solver_starts(d, seeds, rng_seed):
        u, rn = _newton_polish(fat, u0, d, 1e-10, max_iter)
        if rn <= 1e-8 and all(abs(float(u @ z)) < 0.9999 for z in fat_zeros):
            fat_zeros.append(u)
        if len(fat_zeros) >= 5:
            break

    best = None
    for u in fat_zeros:
        ok = True
        for factor in _CONTINUATION_FACTORS[1:]:
            factor = float(factor)
            target = inner_tol if factor == 1.0 else 1e-10
            res = level_residual(factor)
            u, rn = _newton_polish(res, u, d, target, max_iter)
            if rn > 1e-6 and factor != 1.0:
                # Track lost the zero: re-seed this level from a scan.
                model = inner.inflated(factor)
                for u_seed in _scan_candidates(model, spec, proj, radius * factor, 200, 9, 4):
                    u2, rn2 = _newton_polish(res, u_seed, d, target, max_iter)
                    if rn2 < rn:
                        u, rn = u2, rn2
                    if rn <= 1e-8:
                        break
            if rn > 1e-6 and factor != 1.0:
                ok = False
                break
        if ok and (best is None or rn < best[0]):
            best = (rn, u)
        if best is not None and best[0] <= inner_tol:
            break
    return best


@dataclass(frozen=True, eq=False)
class HamburgerSolution:
    u: np.ndarray
    masses: np.ndarray
    residual: float
    target: TargetSpec
    projection: np.ndarray
    start_index: int

    def __iter__(self):
        return iter((self.u, self.masses, self.residual))


def solve_hamburger(
    model: MeasureModel,
    tol: float = 1e-6,
    seeds: int = 8,
    rng_seed: int = 0,
    max_iter: int = 80,
    scan_directions: int | None = None,
) -> HamburgerSolution:
    """Find u with f(u) on the target segment, residual <= tol.

    Two stages.  A global scan walks a deterministic net of normal
    directions and, per direction, offset-bisects onto the segment's
    target totals; this locates the narrow regions where the hyperplane
    actually cuts mass (elsewhere f is flat and gradients vanish).  The
    best scan hits plus low-discrepancy and `seeds` seeded random starts
    are then polished by damped Newton on the projected residual.
    Deterministic: the best residual wins, ties by start index.  Raises
    ConvergenceFailure when no start reaches tol.
    """
    model = model.normalized()
    d = model.d
    spec = target_spec(model.total_masses(), d)
    proj = _segment_projection_basis(spec)

    lo, hi = model.bounds()
    shift = (lo + hi) / 2.0
    scale = max(float(np.max(hi - lo)) / 2.0, 1e-9)
    inner = model.recentered(shift, scale)
    lo_in, hi_in = inner.bounds()
    radius = float(np.linalg.norm(np.maximum(np.abs(lo_in), np.abs(hi_in)))) + 1e-6

    def residual(u: np.ndarray) -> np.ndarray:
        return proj @ (eval_f(inner, u)[list(spec.order)] - spec.b)

    if scan_directions is None:
        scan_directions = {2: 720, 3: 400}.get(d, 256)
    starts = _scan_candidates(inner, spec, proj, radius, scan_directions, 9, 12)
    starts += _solver_starts(d, seeds, rng_seed)

    inner_tol = tol * 1e-4
    best: tuple[float, int, np.ndarray] | None = None
    for start_index, u in enumerate(starts):
        u, rn = _newton_polish(residual, u, d, inner_tol, max_iter)
        if best is None or rn < best[0]:
            best = (rn, start_index, u)
        if rn <= inner_tol:
            break

    assert best is not None
    if best[0] > inner_tol:
        tracked = _continuation_solve(
            inner, spec, proj, d, radius, seeds, rng_seed, inner_tol, max_iter
        )
        if tracked is not None and tracked[0] < best[0]:
            best = (tracked[0], len(starts), tracked[1])
    rn, start_index, u = best
    # Map the internal parametrization back to original coordinates.
    normal = u[1:]
    if normal.any():
        u_ext = unit_sphere_param(
            np.concatenate(([scale * u[0] + float(normal @ shift)], normal))
        )
    else:
        u_ext = u
    masses = eval_f(model, u_ext)
    res_ext = float(np.linalg.norm(proj @ (masses[list(spec.order)] - spec.b)))
    if res_ext > tol:
        raise ConvergenceFailure(
            f"best residual {res_ext:.3e} exceeds tolerance {tol:.3e} "
            f"after {start_index + 1} starts"
        )
    return HamburgerSolution(u_ext, masses, res_ext, spec, proj, start_index)


@dataclass(frozen=True, eq=False)
class MeasureCutReport:
    omega: np.ndarray
    masses_minus: np.ndarray
    masses_plus: np.ndarray
    bound: float
    balanced_minus: bool
    balanced_plus: bool
    bound_minus_ok: bool
    bound_plus_ok: bool
    antipodal_ok: bool
    mc_ok: bool
    mc_detail: object

    @property
    def ok(self) -> bool:
        return (
            self.balanced_minus
            and self.balanced_plus
            and self.bound_minus_ok
            and self.bound_plus_ok
            and self.antipodal_ok
            and self.mc_ok
        )

    def __bool__(self) -> bool:
        return self.ok


def _eq1_balanced(y: np.ndarray, d: int, tol: float) -> bool:
    return bool(np.all(y <= float(y.sum()) / d + tol))


def verify_measure_cut(
    model: MeasureModel,
    u,
    tol: float,
    mc_samples: int = 50_000,
    mc_seed: int = 0,
    mc_sigmas: float = 4.0,
) -> MeasureCutReport:
    """Check balancedness and the total-mass bound on both sides of h(u).

    Also cross-checks the analytic masses against a seeded Monte Carlo
    estimate (within `mc_sigmas` standard errors) and the antipodal
    identity f(u) + f(-u) = omega.
    """
    from . import oracle

    model = model.normalized()
    d = model.d
    u = as_sphere_param(u, d)
    omega = model.total_masses()
    w_min = float(omega.min())
    bound = min(0.5, 1.0 - d * w_min)
    y_minus = eval_f(model, u)
    y_plus = eval_f(model, -u)

    antipodal_ok = bool(np.max(np.abs(y_minus + y_plus - omega)) <= max(tol, 1e-9))
    balanced_minus = _eq1_balanced(y_minus, d, tol)
    balanced_plus = _eq1_balanced(y_plus, d, tol)
    bound_minus_ok = float(y_minus.sum()) >= bound - tol
    bound_plus_ok = float(y_plus.sum()) >= bound - tol

    mc_ok = True
    mc = None
    if mc_samples > 0 and u[1:].any():
        mc = oracle.monte_carlo_halfspace_mass(
            model, sphere_param_to_hyperplane(u), mc_samples, mc_seed
        )
        slack = mc_sigmas * mc.stderr + 1e-9
        mc_ok = bool(np.all(np.abs(y_minus - mc.estimates) <= slack))

    return MeasureCutReport(
        omega=omega,
        masses_minus=y_minus,
        masses_plus=y_plus,
        bound=bound,
        balanced_minus=balanced_minus,
        balanced_plus=balanced_plus,
        bound_minus_ok=bound_minus_ok,
        bound_plus_ok=bound_plus_ok,
        antipodal_ok=antipodal_ok,
        mc_ok=mc_ok,
        mc_detail=mc,
    )
