"""Closed-form spectrum and eigenfunctions of the disk.

Branch catalog for a disk of radius R (multiplicities in parentheses):

    zero    0                                   (3)  rigid motions
    radial  2 (lam + mu) / R                    (1)
    n1      4 mu (lam + mu) / ((lam + 3 mu) R)  (2)
    low     2 mu (n - 1) / R                    (2)  n = 2, 3, ...
    high    2 (n+1) mu (lam + mu) / ((lam + 3 mu) R)  (2)  n = 2, 3, ...

Eigenfunctions are harmonic-polynomial combinations evaluated in Cartesian
coordinates with analytic Jacobians, so the boundary relation
(traction = value * displacement) can be verified pointwise to round-off.
Values from different branches that coincide (relative 1e-12) are merged
with summed multiplicity.
"""

import math
from dataclasses import dataclass

import numpy as np

from .elastic import LameParameters

MERGE_RTOL = 1e-12

BRANCHES = ("zero", "radial", "n1", "low", "high")


@dataclass(frozen=True)
class DiskEigenvalue:
    value: float
    branch: str              # branch of the smallest-index member
    multiplicity: int
    mode: int | None = None  # n for the low/high branches
    members: tuple = ()      # (branch, mode, multiplicity) of merged branches


def branch_value(branch, radius, params, mode=None):
    lam, mu = params.lam, params.mu
    if branch == "zero":
        return 0.0
    if branch == "radial":
        return 2.0 * (lam + mu) / radius
    if branch == "n1":
        return 4.0 * mu * (lam + mu) / ((lam + 3.0 * mu) * radius)
    if branch == "low":
        return 2.0 * mu * (mode - 1) / radius
    if branch == "high":
        return 2.0 * (mode + 1) * mu * (lam + mu) / ((lam + 3.0 * mu) * radius)
    raise ValueError(f"unknown branch {branch!r}")


def _raw_branches(radius, params, count):
    """Positive branch values with enough modes to cover the count smallest."""
    entries = [("radial", None, 1), ("n1", None, 2)]
    values = [branch_value(b, radius, params, m) for b, m, _ in entries]
    n = 2
    while True:
        low = branch_value("low", radius, params, n)
        high = branch_value("high", radius, params, n)
        entries += [("low", n, 2), ("high", n, 2)]
        values += [low, high]
        flat = np.sort(np.repeat(values, [e[2] for e in entries]))
        # both families grow with n: once each exceeds the count-th smallest
        # candidate no smaller value can appear later
        if len(flat) >= count and min(low, high) > flat[count - 1]:
            break
        n += 1
    return entries, values


def disk_spectrum(radius, params, count):
    """The count smallest strictly positive eigenvalues, ties merged."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if count < 1:
        raise ValueError("count must be at least 1")
    entries, values = _raw_branches(radius, params, count)
    order = np.argsort(values)
    merged = []
    for idx in order:
        branch, mode, mult = entries[idx]
        value = values[idx]
        if merged and abs(value - merged[-1].value) <= MERGE_RTOL * abs(value):
            prev = merged[-1]
            merged[-1] = DiskEigenvalue(
                value=prev.value,
                branch=prev.branch,
                multiplicity=prev.multiplicity + mult,
                mode=prev.mode,
                members=prev.members + ((branch, mode, mult),),
            )
        else:
            merged.append(
                DiskEigenvalue(value, branch, mult, mode, ((branch, mode, mult),))
            )
    out = []
    total = 0
    for ev in merged:
        out.append(ev)
        total += ev.multiplicity
        if total >= count:
            break
    return out


def disk_values(radius, params, count):
    """Flattened ascending array of the count smallest positive values."""
    flat = []
    for ev in disk_spectrum(radius, params, count):
        flat.extend([ev.value] * ev.multiplicity)
    return np.array(flat[:count])


def first_positive(radius, params):
    """Smallest strictly positive eigenvalue and its branch."""
    lam, mu = params.lam, params.mu
    if lam > mu:
        return 2.0 * mu / radius, "low"
    return branch_value("n1", radius, params), "n1"


def ordering_region(params):
    """Which ordering of the three smallest branch constants holds.

    The constants are c2 = 2(lam+mu)/R, c3 = 4 mu (lam+mu)/((lam+3mu) R)
    and c4 = 2 mu / R; the region tags are "lambda>=mu" (c4 <= c3 <= c2),
    "0<lambda<=mu" (c3 <= c4 <= c2) and "-3mu<lambda<=0" (c3 <= c2 <= c4).
    The fourth listed ordering needs lambda < -3 mu, unreachable for valid
    planar parameters.
    """
    if params.lam >= params.mu:
        return "lambda>=mu"
    if params.lam > 0:
        return "0<lambda<=mu"
    return "-3mu<lambda<=0"


def scalar_steklov_disk(radius, index):
    """Classical scalar Steklov eigenvalues of the disk: 0, then k/R twice."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    if index == 0:
        return 0.0
    return math.ceil(index / 2) / radius


# ---------------------------------------------------------------------------
# eigenfunctions
# ---------------------------------------------------------------------------

def _zpow(points, m):
    """Harmonic pair (r^m cos m theta, r^m sin m theta) via complex powers."""
    z = points[:, 0] + 1j * points[:, 1]
    zm = z**m
    return zm.real, zm.imag


class DiskEigenfunction:
    """Closed-form eigenfunction with analytic displacement and Jacobian."""

    def __init__(self, branch, index, radius, params, mode=None):
        if branch not in BRANCHES:
            raise ValueError(f"unknown branch {branch!r}")
        if branch in ("low", "high"):
            if mode is None or mode < 2:
                raise ValueError(f"branch {branch!r} needs a mode n >= 2")
        elif mode is not None:
            raise ValueError(f"branch {branch!r} takes no mode")
        counts = {"zero": 3, "radial": 1, "n1": 2, "low": 2, "high": 2}
        if not 0 <= index < counts[branch]:
            raise ValueError(f"branch {branch!r} has {counts[branch]} members")
        self.branch = branch
        self.index = index
        self.mode = mode
        self.radius = float(radius)
        self.params = params
        self.eigenvalue = branch_value(branch, radius, params, mode)
        self.scale = 1.0

    def displacement(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        x, y = points[:, 0], points[:, 1]
        lam, mu = self.params.lam, self.params.mu
        R = self.radius
        out = np.empty((len(points), 2))
        if self.branch == "zero":
            if self.index == 0:
                out[:, 0], out[:, 1] = 1.0, 0.0
            elif self.index == 1:
                out[:, 0], out[:, 1] = 0.0, 1.0
            else:
                out[:, 0], out[:, 1] = -y, x
        elif self.branch == "radial":
            out[:, 0], out[:, 1] = x, y
        elif self.branch == "n1":
            kap = (lam + 3.0 * mu) / (lam + mu)
            r2 = x * x + y * y
            p2, q2 = _zpow(points, 2)
            if self.index == 0:
                out[:, 0] = 2.0 * (R**2 - r2) + kap * p2
                out[:, 1] = kap * q2
            else:
                out[:, 0] = kap * q2
                out[:, 1] = 2.0 * (R**2 - r2) - kap * p2
        elif self.branch == "low":
            pm, qm = _zpow(points, self.mode - 1)
            if self.index == 0:
                out[:, 0], out[:, 1] = pm, -qm
            else:
                out[:, 0], out[:, 1] = qm, pm
        else:  # high
            n = self.mode
            beta = (lam + mu) * (n + 1)
            delta = lam + 3.0 * mu
            denom = (lam + mu) * n
            r2 = x * x + y * y
            pm, qm = _zpow(points, n - 1)
            pp, qp = _zpow(points, n + 1)
            if self.index == 0:
                out[:, 0] = (-beta * (r2 - R**2) * pm + delta * pp) / denom
                out[:, 1] = (beta * (r2 - R**2) * qm + delta * qp) / denom
            else:
                out[:, 0] = (beta * (r2 - R**2) * qm - delta * qp) / denom
                out[:, 1] = (beta * (r2 - R**2) * pm + delta * pp) / denom
        return self.scale * out

    def jacobian(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        x, y = points[:, 0], points[:, 1]
        lam, mu = self.params.lam, self.params.mu
        R = self.radius
        k = len(points)
        J = np.zeros((k, 2, 2))
        if self.branch == "zero":
            if self.index == 2:
                J[:, 0, 1] = -1.0
                J[:, 1, 0] = 1.0
        elif self.branch == "radial":
            J[:, 0, 0] = 1.0
            J[:, 1, 1] = 1.0
        elif self.branch == "n1":
            kap = (lam + 3.0 * mu) / (lam + mu)
            if self.index == 0:
                J[:, 0, 0] = (2.0 * kap - 4.0) * x
                J[:, 0, 1] = -(4.0 + 2.0 * kap) * y
                J[:, 1, 0] = 2.0 * kap * y
                J[:, 1, 1] = 2.0 * kap * x
            else:
                J[:, 0, 0] = 2.0 * kap * y
                J[:, 0, 1] = 2.0 * kap * x
                J[:, 1, 0] = -(4.0 - 2.0 * kap) * x
                J[:, 1, 1] = -(4.0 + 2.0 * kap) * y
        elif self.branch == "low":
            m = self.mode - 1
            pg, qg = _zpow(points, m - 1)
            if self.index == 0:
                J[:, 0, 0] = m * pg
                J[:, 0, 1] = -m * qg
                J[:, 1, 0] = -m * qg
                J[:, 1, 1] = -m * pg
            else:
                J[:, 0, 0] = m * qg
                J[:, 0, 1] = m * pg
                J[:, 1, 0] = m * pg
                J[:, 1, 1] = -m * qg
        else:  # high
            n = self.mode
            beta = (lam + mu) * (n + 1)
            delta = lam + 3.0 * mu
            denom = (lam + mu) * n
            r2 = x * x + y * y
            pm, qm = _zpow(points, n - 1)
            pg, qg = _zpow(points, n - 2)
            pp, qp = _zpow(points, n)
            dr = r2 - R**2
            m = n - 1
            if self.index == 0:
                J[:, 0, 0] = (-beta * (2 * x * pm + dr * m * pg) + delta * (n + 1) * pp) / denom
                J[:, 0, 1] = (-beta * (2 * y * pm - dr * m * qg) - delta * (n + 1) * qp) / denom
                J[:, 1, 0] = (beta * (2 * x * qm + dr * m * qg) + delta * (n + 1) * qp) / denom
                J[:, 1, 1] = (beta * (2 * y * qm + dr * m * pg) + delta * (n + 1) * pp) / denom
            else:
                J[:, 0, 0] = (beta * (2 * x * qm + dr * m * qg) - delta * (n + 1) * qp) / denom
                J[:, 0, 1] = (beta * (2 * y * qm + dr * m * pg) - delta * (n + 1) * pp) / denom
                J[:, 1, 0] = (beta * (2 * x * pm + dr * m * pg) + delta * (n + 1) * pp) / denom
                J[:, 1, 1] = (beta * (2 * y * pm - dr * m * qg) - delta * (n + 1) * qp) / denom
        return self.scale * J

    def boundary_norm(self, nodes=512):
        """Quadrature L2 norm of the trace on the circle of radius R."""
        t = 2.0 * np.pi * np.arange(nodes) / nodes
        pts = self.radius * np.stack([np.cos(t), np.sin(t)], axis=1)
        u = self.displacement(pts)
        return float(np.sqrt(np.sum(u * u) * (2.0 * np.pi / nodes) * self.radius))

    def normalized(self, nodes=512):
        """Copy rescaled to unit boundary L2 norm (returned unnormalized
        by default, matching the closed-form expressions)."""
        out = DiskEigenfunction(self.branch, self.index, self.radius,
                                self.params, self.mode)
        out.scale = self.scale / self.boundary_norm(nodes)
        return out


def disk_eigenfunctions(branch, radius, params, mode=None):
    """The closed-form eigenfunction basis of one branch (1 to 3 members)."""
    counts = {"zero": 3, "radial": 1, "n1": 2, "low": 2, "high": 2}
    return tuple(
        DiskEigenfunction(branch, i, radius, params, mode)
        for i in range(counts[branch])
    )
