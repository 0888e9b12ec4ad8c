"""Isotropic plane elasticity: Hooke's law, strains, and the 2D
fundamental-solution tensor of the elastostatic operator together with its
surface-force (traction) tensor.

These are the scalar reference implementations; kernels.py carries the
batched versions used to fill collocation matrices.  The traction tensor is
differentiated analytically, column by column:

    column j of  Phi(v) = c1 * (-log|v| I + c2 * v v^T / |v|^2)

has strain

    e_ik = c1 * [ (c2-1)(d_ij v_k + d_kj v_i) / (2 r^2)
                  + c2 d_ik v_j / r^2 - 2 c2 v_i v_j v_k / r^4 ],

and applying Hooke's law and contracting with the unit normal n collapses,
after simplifying the material constants, to

    T(v, n) = [ -mu ((v.n) I + v n^T - n v^T)
                - 2 (lam+mu) (v.n) v v^T / r^2 ] / (2 pi (lam+2mu) r^2),

which is homogeneous of degree -1 in v.  The finite-difference agreement
test in the suite certifies this closed form.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularKernelError
from .kernels import kelvin_constants

COINCIDENCE_TOL = 1e-12


@dataclass(frozen=True)
class LameParameters:
    """Material pair (lam, mu); requires mu > 0 and lam + mu > 0 in 2D."""

    lam: float
    mu: float

    def __post_init__(self):
        if not (np.isfinite(self.lam) and np.isfinite(self.mu)):
            raise ValueError("material constants must be finite")
        if self.mu <= 0:
            raise ValueError(f"shear modulus must be positive, got mu={self.mu}")
        if self.lam + self.mu <= 0:
            raise ValueError(
                f"need lam + mu > 0 in two dimensions, got lam={self.lam}, mu={self.mu}"
            )

    def scaled(self, factor):
        return LameParameters(factor * self.lam, factor * self.mu)


def hooke(xi, params):
    """Stress of a strain matrix: 2 mu xi + lam tr(xi) I."""
    xi = np.asarray(xi, dtype=float)
    return 2.0 * params.mu * xi + params.lam * np.trace(xi) * np.eye(2)


def strain(jacobian):
    """Symmetrized gradient (J + J^T) / 2."""
    jacobian = np.asarray(jacobian, dtype=float)
    return 0.5 * (jacobian + jacobian.T)


def _offset(x, y):
    v = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    r = np.hypot(v[0], v[1])
    if r < COINCIDENCE_TOL:
        raise SingularKernelError(
            f"field point and source point coincide (|x - y| = {r:.3e})"
        )
    return v, r


def kelvin(x, y, params):
    """Fundamental-solution tensor Phi(x - y), a symmetric 2x2 matrix."""
    v, r = _offset(x, y)
    c1, c2 = kelvin_constants(params.lam, params.mu)
    return c1 * (-np.log(r) * np.eye(2) + c2 * np.outer(v, v) / r**2)


def kelvin_traction(x, y, n, params):
    """Surface-force tensor: column k is the traction of Kelvin column k.

    Evaluated at x with unit outward normal n, for a source at y.
    """
    v, r = _offset(x, y)
    n = np.asarray(n, dtype=float)
    lam, mu = params.lam, params.mu
    vn = v @ n
    f = 1.0 / (2.0 * np.pi * (lam + 2.0 * mu) * r**2)
    return f * (
        -mu * (vn * np.eye(2) + np.outer(v, n) - np.outer(n, v))
        - 2.0 * (lam + mu) * vn * np.outer(v, v) / r**2
    )


def kelvin_gradient(x, y, params):
    """Gradient d Phi_il / d x_k of the tensor columns, shape (2, 2, 2).

    Index order (i, l, k): component i of column l, differentiated along k.
    """
    v, r = _offset(x, y)
    c1, c2 = kelvin_constants(params.lam, params.mu)
    r2 = r**2
    eye = np.eye(2)
    grad = np.empty((2, 2, 2))
    for i in range(2):
        for l in range(2):
            for k in range(2):
                grad[i, l, k] = c1 * (
                    -eye[i, l] * v[k] / r2
                    + c2 * (
                        (eye[i, k] * v[l] + eye[l, k] * v[i]) / r2
                        - 2.0 * v[i] * v[l] * v[k] / r2**2
                    )
                )
    return grad


RIGID_MOTIONS = (
    lambda p: np.broadcast_to(np.array([1.0, 0.0]), np.shape(p)).copy(),
    lambda p: np.broadcast_to(np.array([0.0, 1.0]), np.shape(p)).copy(),
    lambda p: np.stack([-np.asarray(p)[..., 1], np.asarray(p)[..., 0]], axis=-1),
)
