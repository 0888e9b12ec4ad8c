"""Hot numeric kernels: dense fundamental-solution blocks and field evaluation.

Every kernel ships in two lanes, a numba-jitted loop version and a pure
vectorized numpy version.  The active lane is chosen at import time from
the STEKLAME_NUMBA environment flag (see _jit); individual calls can
override it with backend="numpy"/"numba".  benchmarks/bench_kernels.py
compares the two.

Points are (K, 2) float64 arrays; matrices are row-blocked by collocation
point then component, i.e. point i occupies rows 2i, 2i+1, source j the
columns 2j, 2j+1.
"""

import numpy as np

from ._jit import HAVE_NUMBA, njit


def kelvin_constants(lam, mu):
    """Prefactor and ratio of the 2D fundamental-solution tensor."""
    c1 = (lam + 3.0 * mu) / (4.0 * np.pi * mu * (lam + 2.0 * mu))
    c2 = (lam + mu) / (lam + 3.0 * mu)
    return c1, c2


# ---------------------------------------------------------------------------
# numpy lane
# ---------------------------------------------------------------------------

def _displacement_matrix_numpy(points, sources, lam, mu):
    c1, c2 = kelvin_constants(lam, mu)
    dx = points[:, 0, None] - sources[None, :, 0]
    dy = points[:, 1, None] - sources[None, :, 1]
    r2 = dx * dx + dy * dy
    logr = 0.5 * np.log(r2)
    out = np.empty((2 * len(points), 2 * len(sources)))
    out[0::2, 0::2] = c1 * (-logr + c2 * dx * dx / r2)
    out[0::2, 1::2] = c1 * (c2 * dx * dy / r2)
    out[1::2, 0::2] = out[0::2, 1::2]
    out[1::2, 1::2] = c1 * (-logr + c2 * dy * dy / r2)
    return out


def _traction_matrix_numpy(points, normals, sources, lam, mu):
    dx = points[:, 0, None] - sources[None, :, 0]
    dy = points[:, 1, None] - sources[None, :, 1]
    nx = normals[:, 0, None]
    ny = normals[:, 1, None]
    r2 = dx * dx + dy * dy
    vn = dx * nx + dy * ny
    f = 1.0 / (2.0 * np.pi * (lam + 2.0 * mu) * r2)
    g = 2.0 * (lam + mu) * vn / r2
    out = np.empty((2 * len(points), 2 * len(sources)))
    out[0::2, 0::2] = f * (-mu * vn - g * dx * dx)
    out[0::2, 1::2] = f * (-mu * (dx * ny - nx * dy) - g * dx * dy)
    out[1::2, 0::2] = f * (-mu * (dy * nx - ny * dx) - g * dx * dy)
    out[1::2, 1::2] = f * (-mu * vn - g * dy * dy)
    return out


def _displacement_field_numpy(points, sources, coeffs, lam, mu):
    c1, c2 = kelvin_constants(lam, mu)
    dx = points[:, 0, None] - sources[None, :, 0]
    dy = points[:, 1, None] - sources[None, :, 1]
    r2 = dx * dx + dy * dy
    logr = 0.5 * np.log(r2)
    ax = coeffs[None, :, 0]
    ay = coeffs[None, :, 1]
    av = (ax * dx + ay * dy) / r2
    out = np.empty((len(points), 2))
    out[:, 0] = c1 * np.sum(-logr * ax + c2 * dx * av, axis=1)
    out[:, 1] = c1 * np.sum(-logr * ay + c2 * dy * av, axis=1)
    return out


def _jacobian_field_numpy(points, sources, coeffs, lam, mu):
    c1, c2 = kelvin_constants(lam, mu)
    dx = points[:, 0, None] - sources[None, :, 0]
    dy = points[:, 1, None] - sources[None, :, 1]
    r2 = dx * dx + dy * dy
    ax = coeffs[None, :, 0]
    ay = coeffs[None, :, 1]
    av = ax * dx + ay * dy
    out = np.empty((len(points), 2, 2))
    # J = sum_j c1/r2 * (-a (x) v + c2*(av*(I - 2 v (x) v / r2) + v (x) a))
    q = c1 / r2
    t = 2.0 * av / r2
    out[:, 0, 0] = np.sum(q * (-ax * dx + c2 * (av - t * dx * dx + dx * ax)), axis=1)
    out[:, 0, 1] = np.sum(q * (-ax * dy + c2 * (-t * dx * dy + dx * ay)), axis=1)
    out[:, 1, 0] = np.sum(q * (-ay * dx + c2 * (-t * dy * dx + dy * ax)), axis=1)
    out[:, 1, 1] = np.sum(q * (-ay * dy + c2 * (av - t * dy * dy + dy * ay)), axis=1)
    return out


# ---------------------------------------------------------------------------
# numba lane
# ---------------------------------------------------------------------------

@njit(cache=True)
def _displacement_matrix_numba(points, sources, lam, mu):
    c1 = (lam + 3.0 * mu) / (4.0 * np.pi * mu * (lam + 2.0 * mu))
    c2 = (lam + mu) / (lam + 3.0 * mu)
    m = points.shape[0]
    n = sources.shape[0]
    out = np.empty((2 * m, 2 * n))
    for i in range(m):
        for j in range(n):
            dx = points[i, 0] - sources[j, 0]
            dy = points[i, 1] - sources[j, 1]
            r2 = dx * dx + dy * dy
            logr = 0.5 * np.log(r2)
            out[2 * i, 2 * j] = c1 * (-logr + c2 * dx * dx / r2)
            out[2 * i, 2 * j + 1] = c1 * c2 * dx * dy / r2
            out[2 * i + 1, 2 * j] = out[2 * i, 2 * j + 1]
            out[2 * i + 1, 2 * j + 1] = c1 * (-logr + c2 * dy * dy / r2)
    return out


@njit(cache=True)
def _traction_matrix_numba(points, normals, sources, lam, mu):
    m = points.shape[0]
    n = sources.shape[0]
    pref = 1.0 / (2.0 * np.pi * (lam + 2.0 * mu))
    out = np.empty((2 * m, 2 * n))
    for i in range(m):
        nx = normals[i, 0]
        ny = normals[i, 1]
        for j in range(n):
            dx = points[i, 0] - sources[j, 0]
            dy = points[i, 1] - sources[j, 1]
            r2 = dx * dx + dy * dy
            vn = dx * nx + dy * ny
            f = pref / r2
            g = 2.0 * (lam + mu) * vn / r2
            out[2 * i, 2 * j] = f * (-mu * vn - g * dx * dx)
            out[2 * i, 2 * j + 1] = f * (-mu * (dx * ny - nx * dy) - g * dx * dy)
            out[2 * i + 1, 2 * j] = f * (-mu * (dy * nx - ny * dx) - g * dx * dy)
            out[2 * i + 1, 2 * j + 1] = f * (-mu * vn - g * dy * dy)
    return out


@njit(cache=True)
def _displacement_field_numba(points, sources, coeffs, lam, mu):
    c1 = (lam + 3.0 * mu) / (4.0 * np.pi * mu * (lam + 2.0 * mu))
    c2 = (lam + mu) / (lam + 3.0 * mu)
    k = points.shape[0]
    n = sources.shape[0]
    out = np.zeros((k, 2))
    for i in range(k):
        u0 = 0.0
        u1 = 0.0
        for j in range(n):
            dx = points[i, 0] - sources[j, 0]
            dy = points[i, 1] - sources[j, 1]
            r2 = dx * dx + dy * dy
            logr = 0.5 * np.log(r2)
            av = (coeffs[j, 0] * dx + coeffs[j, 1] * dy) / r2
            u0 += -logr * coeffs[j, 0] + c2 * dx * av
            u1 += -logr * coeffs[j, 1] + c2 * dy * av
        out[i, 0] = c1 * u0
        out[i, 1] = c1 * u1
    return out


@njit(cache=True)
def _jacobian_field_numba(points, sources, coeffs, lam, mu):
    c1 = (lam + 3.0 * mu) / (4.0 * np.pi * mu * (lam + 2.0 * mu))
    c2 = (lam + mu) / (lam + 3.0 * mu)
    k = points.shape[0]
    n = sources.shape[0]
    out = np.zeros((k, 2, 2))
    for i in range(k):
        j00 = 0.0
        j01 = 0.0
        j10 = 0.0
        j11 = 0.0
        for j in range(n):
            dx = points[i, 0] - sources[j, 0]
            dy = points[i, 1] - sources[j, 1]
            ax = coeffs[j, 0]
            ay = coeffs[j, 1]
            r2 = dx * dx + dy * dy
            q = c1 / r2
            av = ax * dx + ay * dy
            t = 2.0 * av / r2
            j00 += q * (-ax * dx + c2 * (av - t * dx * dx + dx * ax))
            j01 += q * (-ax * dy + c2 * (-t * dx * dy + dx * ay))
            j10 += q * (-ay * dx + c2 * (-t * dy * dx + dy * ax))
            j11 += q * (-ay * dy + c2 * (av - t * dy * dy + dy * ay))
        out[i, 0, 0] = j00
        out[i, 0, 1] = j01
        out[i, 1, 0] = j10
        out[i, 1, 1] = j11
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_IMPLS = {
    "numpy": {
        "displacement_matrix": _displacement_matrix_numpy,
        "traction_matrix": _traction_matrix_numpy,
        "displacement_field": _displacement_field_numpy,
        "jacobian_field": _jacobian_field_numpy,
    },
    "numba": {
        "displacement_matrix": _displacement_matrix_numba,
        "traction_matrix": _traction_matrix_numba,
        "displacement_field": _displacement_field_numba,
        "jacobian_field": _jacobian_field_numba,
    },
}

DEFAULT_BACKEND = "numba" if HAVE_NUMBA else "numpy"


def available_backends():
    return ("numpy", "numba") if HAVE_NUMBA else ("numpy",)


def _impl(name, backend):
    backend = backend or DEFAULT_BACKEND
    try:
        return _IMPLS[backend][name]
    except KeyError:
        raise ValueError(f"unknown kernel backend {backend!r}") from None


def _as_points(arr):
    out = np.ascontiguousarray(arr, dtype=np.float64)
    if out.ndim != 2 or out.shape[1] != 2:
        raise ValueError("expected an array of shape (K, 2)")
    return out


def displacement_matrix(points, sources, lam, mu, backend=None):
    """Dense (2M, 2N) matrix of fundamental-solution displacement blocks."""
    return _impl("displacement_matrix", backend)(
        _as_points(points), _as_points(sources), float(lam), float(mu)
    )


def traction_matrix(points, normals, sources, lam, mu, backend=None):
    """Dense (2M, 2N) matrix of surface-force blocks at unit normals."""
    return _impl("traction_matrix", backend)(
        _as_points(points), _as_points(normals), _as_points(sources),
        float(lam), float(mu),
    )


def displacement_field(points, sources, coeffs, lam, mu, backend=None):
    """Evaluate u(x) = sum_j Phi(x - y_j) a_j at the given points, (K, 2)."""
    return _impl("displacement_field", backend)(
        _as_points(points), _as_points(sources), _as_points(coeffs),
        float(lam), float(mu),
    )


def jacobian_field(points, sources, coeffs, lam, mu, backend=None):
    """Evaluate the displacement Jacobian du_i/dx_k at the points, (K, 2, 2)."""
    return _impl("jacobian_field", backend)(
        _as_points(points), _as_points(sources), _as_points(coeffs),
        float(lam), float(mu),
    )
