"""Planar boundary curves: truncated-Fourier parametrizations, convex
support-function parametrizations, differential geometry along the curve,
boundary quadrature, and the collocation/source discretization.

Conventions: curves are 2*pi-periodic and positively oriented
(counterclockwise); the outward normal of a counterclockwise curve is
(y', -x')/|gamma'|; curvature is positive for a convex domain, so a circle
of radius R has curvature 1/R.  Quadrature is the periodic trapezoidal
rule throughout (spectrally accurate for the analytic curves in scope).
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConfigError,
    GeometryError,
    InvalidOffsetError,
    NonSimpleCurveError,
    OrientationError,
    SingularParametrizationError,
)

SPEED_TOL = 1e-12
DEFAULT_QUADRATURE_NODES = 512
DEFAULT_CONSTRAINT_GRID = 256


def _ro(arr):
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class CurveSample:
    """Pointwise curve data at parameter values t."""

    t: np.ndarray
    points: np.ndarray      # (K, 2)
    tangents: np.ndarray    # (K, 2), unit
    normals: np.ndarray     # (K, 2), unit outward
    curvatures: np.ndarray  # (K,)
    speeds: np.ndarray      # (K,)


class _Boundary:
    """Shared curve machinery; subclasses provide xy/velocity/acceleration."""

    def sample(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        pts = self.xy(t)
        vel = self.velocity(t)
        acc = self.acceleration(t)
        speeds = np.hypot(vel[:, 0], vel[:, 1])
        if np.any(speeds < SPEED_TOL):
            raise SingularParametrizationError(
                f"curve speed degenerates to {speeds.min():.3e}"
            )
        tangents = vel / speeds[:, None]
        normals = np.stack([vel[:, 1], -vel[:, 0]], axis=1) / speeds[:, None]
        curv = (vel[:, 0] * acc[:, 1] - vel[:, 1] * acc[:, 0]) / speeds**3
        return CurveSample(t, pts, tangents, normals, curv, speeds)

    def grid(self, nodes, phase=0.0):
        return phase + 2.0 * np.pi * np.arange(nodes) / nodes


class FourierBoundary(_Boundary):
    """General simply connected boundary from truncated Fourier series.

    gamma_1(t) = a_x[0] + sum_j a_x[j] cos(jt) + b_x[j] sin(jt), same for
    gamma_2 with (a_y, b_y).  Construction re-orients the curve to positive
    orientation if needed and rejects degenerate or self-intersecting
    samplings.
    """

    def __init__(self, a_x, b_x, a_y, b_y, check=True):
        a_x = np.asarray(a_x, dtype=float)
        b_x = np.asarray(b_x, dtype=float)
        a_y = np.asarray(a_y, dtype=float)
        b_y = np.asarray(b_y, dtype=float)
        if a_x.ndim != 1 or a_y.ndim != 1 or len(a_x) != len(a_y):
            raise GeometryError("cosine coefficient arrays must match in length")
        if len(b_x) != len(a_x) - 1 or len(b_y) != len(a_y) - 1:
            raise GeometryError("sine arrays must have length order, cosine order+1")
        if len(a_x) < 2:
            raise GeometryError("order must be at least 1")
        if not all(np.all(np.isfinite(c)) for c in (a_x, b_x, a_y, b_y)):
            raise GeometryError("coefficients must be finite")
        self.a_x, self.b_x, self.a_y, self.b_y = map(_ro, (a_x, b_x, a_y, b_y))
        if check:
            self._establish_invariants()

    @property
    def order(self):
        return len(self.a_x) - 1

    def _establish_invariants(self):
        nodes = max(DEFAULT_CONSTRAINT_GRID, 8 * self.order)
        if signed_area(self, nodes) < 0.0:
            # reversing t -> -t keeps cosines and flips every sine
            self.b_x = _ro(-np.asarray(self.b_x))
            self.b_y = _ro(-np.asarray(self.b_y))
        s = self.sample(self.grid(nodes))  # raises on degenerate speed
        if not _polygon_is_simple(s.points):
            raise NonSimpleCurveError("sampled boundary polygon self-intersects")

    def xy(self, t):
        j = np.arange(1, self.order + 1)
        c = np.cos(np.outer(t, j))
        s = np.sin(np.outer(t, j))
        x = self.a_x[0] + c @ self.a_x[1:] + s @ self.b_x
        y = self.a_y[0] + c @ self.a_y[1:] + s @ self.b_y
        return np.stack([x, y], axis=1)

    def velocity(self, t):
        j = np.arange(1, self.order + 1)
        c = np.cos(np.outer(t, j))
        s = np.sin(np.outer(t, j))
        vx = -s @ (j * self.a_x[1:]) + c @ (j * self.b_x)
        vy = -s @ (j * self.a_y[1:]) + c @ (j * self.b_y)
        return np.stack([vx, vy], axis=1)

    def acceleration(self, t):
        j = np.arange(1, self.order + 1)
        c = np.cos(np.outer(t, j))
        s = np.sin(np.outer(t, j))
        ax = -c @ (j * j * self.a_x[1:]) - s @ (j * j * self.b_x)
        ay = -c @ (j * j * self.a_y[1:]) - s @ (j * j * self.b_y)
        return np.stack([ax, ay], axis=1)

    def to_vector(self):
        return np.concatenate([self.a_x, self.b_x, self.a_y, self.b_y])

    def with_vector(self, vec, check=True):
        vec = np.asarray(vec, dtype=float)
        p = (len(vec) - 2) // 4
        if len(vec) != 4 * p + 2:
            raise GeometryError(f"coefficient vector length {len(vec)} is not 4P+2")
        return FourierBoundary(
            vec[: p + 1], vec[p + 1 : 2 * p + 1],
            vec[2 * p + 1 : 3 * p + 2], vec[3 * p + 2 :],
            check=check,
        )

    def scaled(self, factor):
        return self.with_vector(factor * self.to_vector(), check=False)

    def translated(self, dx, dy):
        vec = self.to_vector()
        vec[0] += dx
        vec[2 * self.order + 1] += dy
        return self.with_vector(vec, check=False)


class SupportBoundary(_Boundary):
    """Convex boundary from a truncated-Fourier support function.

    p(t) = a[0] + sum_k a[k] cos(kt) + b[k] sin(kt); the curve is
    (p cos t - p' sin t, p sin t + p' cos t), with outward normal exactly
    (cos t, sin t) and curvature 1 / (p + p'').  Convexity of the body is
    equivalent to p + p'' >= 0.  Construction is permissive about
    convexity so that infeasible coefficient sets can be measured and
    projected; operations that walk the curve fail on degenerate speed.
    """

    def __init__(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.ndim != 1 or b.ndim != 1 or len(b) != len(a) - 1:
            raise GeometryError("need cosine length order+1 and sine length order")
        if len(a) < 1 or not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise GeometryError("coefficients must be finite")
        self.a = _ro(a)
        self.b = _ro(b)

    @property
    def order(self):
        return len(self.a) - 1

    def support(self, t):
        t = np.asarray(t, dtype=float)
        k = np.arange(1, self.order + 1)
        c = np.cos(np.outer(t, k))
        s = np.sin(np.outer(t, k))
        p = self.a[0] + c @ self.a[1:] + s @ self.b
        dp = -s @ (k * self.a[1:]) + c @ (k * self.b)
        ddp = -c @ (k * k * self.a[1:]) - s @ (k * k * self.b)
        return p, dp, ddp

    def xy(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        p, dp, _ = self.support(t)
        return np.stack(
            [p * np.cos(t) - dp * np.sin(t), p * np.sin(t) + dp * np.cos(t)], axis=1
        )

    def velocity(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        p, _, ddp = self.support(t)
        q = p + ddp
        return np.stack([-q * np.sin(t), q * np.cos(t)], axis=1)

    def acceleration(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        p, dp, ddp = self.support(t)
        k = np.arange(1, self.order + 1)
        dddp = (
            np.sin(np.outer(t, k)) @ (k**3 * self.a[1:])
            - np.cos(np.outer(t, k)) @ (k**3 * self.b)
        )
        q = p + ddp
        dq = dp + dddp
        return np.stack(
            [-dq * np.sin(t) - q * np.cos(t), dq * np.cos(t) - q * np.sin(t)], axis=1
        )

    def sample(self, t):
        # the support parametrization has exact normals and curvature
        t = np.atleast_1d(np.asarray(t, dtype=float))
        p, dp, ddp = self.support(t)
        q = p + ddp
        if np.any(np.abs(q) < SPEED_TOL) or np.any(q < 0):
            raise SingularParametrizationError(
                f"support parametrization degenerates (min p + p'' = {q.min():.3e})"
            )
        ct, st = np.cos(t), np.sin(t)
        pts = np.stack([p * ct - dp * st, p * st + dp * ct], axis=1)
        tangents = np.stack([-st, ct], axis=1)
        normals = np.stack([ct, st], axis=1)
        return CurveSample(t, pts, tangents, normals, 1.0 / q, q)

    def to_vector(self):
        return np.concatenate([self.a, self.b])

    def with_vector(self, vec, check=True):
        vec = np.asarray(vec, dtype=float)
        q = (len(vec) - 1) // 2
        if len(vec) != 2 * q + 1:
            raise GeometryError(f"coefficient vector length {len(vec)} is not 2P+1")
        return SupportBoundary(vec[: q + 1], vec[q + 1 :])

    def scaled(self, factor):
        return SupportBoundary(factor * self.a, factor * self.b)

    def translated(self, dx, dy):
        # shifting the body by (dx, dy) adds dx cos t + dy sin t to p
        a = self.a.copy()
        b = self.b.copy()
        a[1] += dx
        b[0] += dy
        return SupportBoundary(a, b)

    def validate(self, grid=DEFAULT_CONSTRAINT_GRID):
        p, _, ddp = self.support(self.grid(grid))
        if np.min(p + ddp) < 0:
            raise GeometryError(
                f"support function violates convexity (margin {np.min(p + ddp):.3e})"
            )
        if np.min(p) <= 0:
            raise GeometryError("support function must be positive (origin interior)")


@dataclass(frozen=True)
class DiscreteBoundary:
    """Collocation nodes, quadrature data and exterior source points."""

    boundary: object = field(repr=False)
    t: np.ndarray
    points: np.ndarray
    normals: np.ndarray
    speeds: np.ndarray
    curvatures: np.ndarray
    weights: np.ndarray
    sources: np.ndarray
    offset: float

    @property
    def m(self):
        return len(self.t)

    @property
    def n(self):
        return len(self.sources)


def eval_curve(boundary, t):
    """Sample points, unit tangents/outward normals, curvature and speed."""
    return boundary.sample(t)


def signed_area(boundary, nodes=DEFAULT_QUADRATURE_NODES):
    t = boundary.grid(nodes)
    pts = boundary.xy(t)
    vel = boundary.velocity(t)
    return 0.5 * (2.0 * np.pi / nodes) * np.sum(
        pts[:, 0] * vel[:, 1] - pts[:, 1] * vel[:, 0]
    )


def area(boundary, nodes=DEFAULT_QUADRATURE_NODES):
    """Enclosed area by Green's theorem; errors if orientation is negative."""
    value = signed_area(boundary, nodes)
    if value <= 0.0:
        raise OrientationError(f"signed area {value:.6e} is not positive")
    return value


def perimeter(boundary, nodes=DEFAULT_QUADRATURE_NODES):
    t = boundary.grid(nodes)
    vel = boundary.velocity(t)
    return (2.0 * np.pi / nodes) * np.sum(np.hypot(vel[:, 0], vel[:, 1]))


def convexity_margin(boundary, grid=DEFAULT_CONSTRAINT_GRID):
    """min over the constraint grid of p''(t) + p(t); >= 0 means convex."""
    if not isinstance(boundary, SupportBoundary):
        raise ConfigError("convexity margin applies to support-function boundaries")
    if grid < 4 * max(boundary.order, 1):
        raise ConfigError(f"constraint grid {grid} too coarse for order {boundary.order}")
    p, _, ddp = boundary.support(boundary.grid(grid))
    return float(np.min(p + ddp))


def discretize(boundary, m, n, offset, phase=0.0):
    """Build the collocation/quadrature/source data for the solver.

    n source points ride a uniform subsample of the m collocation nodes,
    pushed a distance `offset` along the outward normal; offsets large
    enough to drop a source inside the domain are rejected.
    """
    if n < 1 or m < n:
        raise ConfigError(f"need m >= n >= 1, got m={m}, n={n}")
    if offset <= 0:
        raise ConfigError("source offset must be positive")
    s = boundary.sample(boundary.grid(m, phase))
    weights = (2.0 * np.pi / m) * s.speeds
    idx = (np.arange(n) * m) // n
    sources = s.points[idx] + offset * s.normals[idx]
    if np.any(points_in_polygon(s.points, sources)):
        bad = int(np.sum(points_in_polygon(s.points, sources)))
        raise InvalidOffsetError(
            f"{bad} source points fell inside the domain at offset {offset}"
        )
    return DiscreteBoundary(
        boundary=boundary,
        t=_ro(s.t),
        points=_ro(s.points),
        normals=_ro(s.normals),
        speeds=_ro(s.speeds),
        curvatures=_ro(s.curvatures),
        weights=_ro(weights),
        sources=_ro(sources),
        offset=float(offset),
    )


def points_in_polygon(polygon, queries):
    """Even-odd ray-crossing test, vectorized over query points."""
    px = polygon[:, 0]
    py = polygon[:, 1]
    qx = np.atleast_2d(np.asarray(queries, dtype=float))[:, 0][:, None]
    qy = np.atleast_2d(np.asarray(queries, dtype=float))[:, 1][:, None]
    x1, y1 = px[None, :], py[None, :]
    x2, y2 = np.roll(px, -1)[None, :], np.roll(py, -1)[None, :]
    straddles = (y1 > qy) != (y2 > qy)
    with np.errstate(divide="ignore", invalid="ignore"):
        xcross = x1 + (qy - y1) * (x2 - x1) / (y2 - y1)
    hits = straddles & (qx < xcross)
    return np.sum(hits, axis=1) % 2 == 1


def _polygon_is_simple(pts):
    """Proper-intersection scan over all non-adjacent segment pairs."""
    m = len(pts)
    a = pts
    b = np.roll(pts, -1, axis=0)

    def cross(o, d, p):
        return d[..., 0] * (p[..., 1] - o[..., 1]) - d[..., 1] * (p[..., 0] - o[..., 0])

    i, j = np.triu_indices(m, k=2)
    keep = ~((i == 0) & (j == m - 1))
    i, j = i[keep], j[keep]
    ai, bi = a[i], b[i]
    aj, bj = a[j], b[j]
    di = bi - ai
    dj = bj - aj
    d1 = cross(ai, di, aj) * cross(ai, di, bj)
    d2 = cross(aj, dj, ai) * cross(aj, dj, bi)
    return not np.any((d1 < 0) & (d2 < 0))


# ---------------------------------------------------------------------------
# boundary file format
# ---------------------------------------------------------------------------

def _fmt(x):
    return float(format(float(x), ".17g"))


def boundary_to_dict(boundary):
    if isinstance(boundary, FourierBoundary):
        return {
            "type": "fourier",
            "order": boundary.order,
            "coeffs": {
                "a_x": [_fmt(v) for v in boundary.a_x],
                "b_x": [_fmt(v) for v in boundary.b_x],
                "a_y": [_fmt(v) for v in boundary.a_y],
                "b_y": [_fmt(v) for v in boundary.b_y],
            },
        }
    if isinstance(boundary, SupportBoundary):
        return {
            "type": "support",
            "order": boundary.order,
            "coeffs": {
                "a": [_fmt(v) for v in boundary.a],
                "b": [_fmt(v) for v in boundary.b],
            },
        }
    raise ConfigError(f"unknown boundary object {type(boundary).__name__}")


def boundary_from_dict(data):
    try:
        kind = data["type"]
        order = int(data["order"])
        coeffs = data["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed boundary description: {exc}") from exc
    unknown = set(data) - {"type", "order", "coeffs"}
    if unknown:
        raise ConfigError(f"unknown boundary keys: {sorted(unknown)}")
    if kind == "fourier":
        expected = {"a_x", "b_x", "a_y", "b_y"}
        if set(coeffs) != expected:
            raise ConfigError(f"fourier coeffs must have keys {sorted(expected)}")
        b = FourierBoundary(coeffs["a_x"], coeffs["b_x"], coeffs["a_y"], coeffs["b_y"])
    elif kind == "support":
        if set(coeffs) != {"a", "b"}:
            raise ConfigError("support coeffs must have keys ['a', 'b']")
        b = SupportBoundary(coeffs["a"], coeffs["b"])
    else:
        raise ConfigError(f"unknown boundary type {kind!r}")
    if b.order != order:
        raise ConfigError(f"declared order {order} does not match coefficients")
    return b


def write_boundary(boundary, path):
    with open(path, "w") as fh:
        json.dump(boundary_to_dict(boundary), fh, indent=2)
        fh.write("\n")


def read_boundary(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid boundary JSON: {exc}") from exc
    return boundary_from_dict(data)


def omega1_boundary():
    """The nonconvex benchmark domain (cos t, sin t + 0.3 sin 3t)."""
    return FourierBoundary([0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0],
                           [0.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.3])


def circle_boundary(radius=1.0, center=(0.0, 0.0)):
    return FourierBoundary(
        [center[0], radius], [0.0], [center[1], 0.0], [radius]
    )
