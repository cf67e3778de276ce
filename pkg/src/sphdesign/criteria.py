"""Variational design criteria and Weyl-sum residuals.

A configuration is a t-design exactly when the quadratic form

    V = (1/N^2) sum_i sum_j psi(x_i . x_j)

vanishes, where psi is a zonal polynomial with strictly positive
Legendre coefficients a_ell for 1 <= ell <= t and zero mean.  Three
standard choices are provided.  On S^2 the equivalent weighted
least-squares form r^T D r over Weyl sums is available together with
its Jacobian for Levenberg-Marquardt iterations.
"""

from dataclasses import dataclass
from math import lgamma, exp

import numpy as np

from . import specfun
from .errors import InvalidDimensionError, InvalidParameterError
from .pointset import PointSet, ParamVector, _free_slots, param_jacobian_point, \
    points_to_param, param_to_points
from .summation import comp_sum

PSI1 = "psi1"
PSI2 = "psi2"
PSI3 = "psi3"
KINDS = (PSI1, PSI2, PSI3)


@dataclass(frozen=True)
class PsiSpec:
    """One variational function: kind, dimension, degree, and the
    zero-order coefficient a0 removed from it.

    psi_at_1 is psi(1), the coefficient sum over degrees 1..t.  It is
    the supremum of V, the value placed on the diagonal of the pair
    sum, and the natural scale for convergence tolerances.
    """
    kind: str
    d: int
    t: int
    a0: float
    psi_at_1: float

    @property
    def alpha(self):
        return 0.5 * (self.d - 2.0)


def _a0_psi1(d, t):
    alpha = 0.5 * (d - 2.0)
    if d == 2:
        return 1.0 / t if t % 2 else 1.0 / (t + 1.0)
    if t % 2:
        return exp(lgamma(alpha + 1.5) - 0.5 * np.log(np.pi)
                   + lgamma(0.5 * t) - lgamma(alpha + 1.0 + 0.5 * t))
    return exp(lgamma(alpha + 1.5) - 0.5 * np.log(np.pi)
               + lgamma(0.5 * (t + 1.0)) - lgamma(alpha + 1.5 + 0.5 * t))


def _a0_psi2(d, t):
    alpha = 0.5 * (d - 2.0)
    if d == 2:
        return 1.0 / (t + 1.0)
    return exp(np.log(2.0) - 0.5 * np.log(np.pi) + alpha * np.log(4.0)
               + lgamma(alpha + 1.5) + lgamma(alpha + 1.0 + t)
               - lgamma(2.0 * alpha + 2.0 + t))


def make_psi(kind, d, t):
    """Build a PsiSpec with precomputed coefficients."""
    if kind not in KINDS:
        raise InvalidParameterError("unknown psi kind %r" % (kind,))
    if d < 2:
        raise InvalidDimensionError("variational criteria need d >= 2")
    if t < 1:
        raise InvalidParameterError("degree must be >= 1")
    alpha = 0.5 * (d - 2.0)
    if kind == PSI1:
        a0 = _a0_psi1(d, t)
        raw_at_1 = 2.0
    elif kind == PSI2:
        a0 = _a0_psi2(d, t)
        raw_at_1 = 1.0
    else:
        a0 = _a0_psi2(d, t)
        raw_at_1 = exp(lgamma(t + alpha + 2.0) - lgamma(t + 1.0)
                       - lgamma(alpha + 2.0))
    return PsiSpec(kind=kind, d=d, t=t, a0=a0, psi_at_1=raw_at_1 - a0)


def psi_eval(spec, z):
    """psi(z), vectorized over z in [-1, 1]."""
    z = np.asarray(z, dtype=float)
    t = spec.t
    if spec.kind == PSI1:
        return z ** (t - 1) + z ** t - spec.a0
    if spec.kind == PSI2:
        return (0.5 * (1.0 + z)) ** t - spec.a0
    vals = specfun.jacobi_batch(spec.alpha + 1.0, spec.alpha, t, z)
    return vals[t] - spec.a0


def psi_deriv(spec, z):
    """d psi / dz, analytic."""
    z = np.asarray(z, dtype=float)
    t = spec.t
    if spec.kind == PSI1:
        out = t * z ** (t - 1)
        if t >= 2:
            out = out + (t - 1) * z ** (t - 2)
        else:
            out = out + np.zeros_like(z)
        return out
    if spec.kind == PSI2:
        return 0.5 * t * (0.5 * (1.0 + z)) ** (t - 1)
    if t == 0:
        return np.zeros_like(z)
    vals = specfun.jacobi_batch(spec.alpha + 2.0, spec.alpha + 1.0, t - 1, z)
    return 0.5 * (t + 2.0 * spec.alpha + 2.0) * vals[t - 1]


def psi_coefficients(spec):
    """Legendre coefficients a_ell, ell = 0..t, of psi + a0.

    Computed by Gauss-Jacobi projection; a_0 equals spec.a0.
    """
    from scipy.special import roots_jacobi
    t = spec.t
    alpha = spec.alpha
    nodes, weights = roots_jacobi(t + 5, alpha, alpha)
    wtot = np.sum(weights)
    raw = psi_eval(spec, nodes) + spec.a0
    coeffs = np.empty(t + 1)
    pl = specfun.legendre_norm_batch(spec.d, t, nodes)
    for ell in range(t + 1):
        num = np.sum(weights * raw * pl[ell])
        den = np.sum(weights * pl[ell] ** 2)
        coeffs[ell] = num / den
    return coeffs


def _gram(coords):
    g = coords @ coords.T
    np.clip(g, -1.0, 1.0, out=g)
    return g


def variational_value(X, spec):
    """V = (1/N^2) sum_{i,j} psi(x_i . x_j), compensated summation.

    The diagonal uses the analytic value psi(1) instead of evaluating
    the polynomial at a rounded inner product.
    """
    if X.d != spec.d:
        raise InvalidDimensionError("point set and psi dimension differ")
    coords = X.expanded()
    N = coords.shape[0]
    g = _gram(coords)
    vals = psi_eval(spec, g)
    np.fill_diagonal(vals, spec.psi_at_1)
    return comp_sum(vals) / (N * N)


def variational_gradient(X, spec):
    """Cartesian gradient of V per point of the expanded set.

    Returns an (N, d+1) array with row k equal to
    (2/N^2) sum_{i != k} psi'(x_i . x_k) x_i.
    """
    if X.d != spec.d:
        raise InvalidDimensionError("point set and psi dimension differ")
    coords = X.expanded()
    N = coords.shape[0]
    g = _gram(coords)
    w = psi_deriv(spec, g)
    np.fill_diagonal(w, 0.0)
    return (2.0 / (N * N)) * (w @ coords)


def variational_value_and_param_gradient(p, spec):
    """V and its gradient w.r.t. the packed free angles of p."""
    X = param_to_points(p)
    v = variational_value(X, spec)
    gcart = variational_gradient(X, spec)
    reps = X.coords.shape[0]
    if p.symmetric:
        gcart = gcart[:reps] - gcart[reps:]
    slots = _free_slots(p.d, reps)
    phi = np.zeros((reps, p.d))
    for (j, i), v_ in zip(slots, p.values):
        phi[j, i] = v_
    grad = np.empty(len(slots))
    jac_cache = {}
    for s, (j, i) in enumerate(slots):
        if j not in jac_cache:
            jac_cache[j] = param_jacobian_point(phi[j])
        grad[s] = np.dot(jac_cache[j][i], gcart[j])
    return v, grad


@dataclass
class WeylResidual:
    """Weyl sums r_{ell,k} over a point set on S^2.

    r is ordered by ascending degree with the fixed in-degree order of
    the harmonic basis; weights holds the least-squares diagonal
    a_ell / Z(d, ell) expanded per row.
    """
    t: int
    N: int
    r: np.ndarray
    weights: np.ndarray

    @property
    def rtr(self):
        return float(comp_sum(self.r * self.r))

    @property
    def weighted(self):
        return float(comp_sum(self.weights * self.r * self.r))

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.r)))


def residual_weights(spec):
    """Diagonal weights a_ell / Z(d, ell) per residual row (d = 2)."""
    if spec.d != 2:
        raise InvalidDimensionError("weighted residuals are for d = 2")
    if spec.kind == PSI3:
        # a_ell = a0 Z(d, ell), so every weight collapses to a0
        a = np.array([spec.a0 * (2 * ell + 1)
                      for ell in range(1, spec.t + 1)])
    else:
        coeffs = psi_coefficients(spec)
        a = coeffs[1:]
    rows = []
    for ell in range(1, spec.t + 1):
        rows.append(np.full(2 * ell + 1, a[ell - 1] / (2 * ell + 1)))
    return np.concatenate(rows)


def weyl_residual(X, t, spec=None):
    """Weyl sums r_{ell,k} = sum_j Y_{ell,k}(x_j) for ell = 1..t (d = 2).

    spec selects the least-squares weights; default is the constant
    diagonal of the third variational function.
    """
    if X.d != 2:
        raise InvalidDimensionError("Weyl residuals require d = 2")
    if spec is None:
        spec = make_psi(PSI3, 2, t)
    basis = specfun.sph_harmonics_s2(t, X, include_degree0=False)
    r = np.array([comp_sum(row) for row in basis.values])
    return WeylResidual(t=t, N=X.N, r=r, weights=residual_weights(spec))


def symmetric_row_mask(t):
    """Mask of even-degree rows in the full residual of degree t."""
    mask = np.zeros((t + 1) ** 2 - 1, dtype=bool)
    pos = 0
    for ell in range(1, t + 1):
        if ell % 2 == 0:
            mask[pos:pos + 2 * ell + 1] = True
        pos += 2 * ell + 1
    return mask


def weyl_residual_reduced(X, t, spec=None):
    """Residual restricted to even degrees for a symmetric set.

    The sums run over the representatives and are doubled; odd degrees
    cancel identically by symmetry so they are dropped.
    """
    if X.d != 2:
        raise InvalidDimensionError("Weyl residuals require d = 2")
    if not X.symmetric:
        raise InvalidParameterError("reduced residual needs a symmetric set")
    if spec is None:
        spec = make_psi(PSI3, 2, t)
    basis = specfun.sph_harmonics_s2(t, X.coords, include_degree0=False)
    mask = symmetric_row_mask(t)
    r = 2.0 * np.array([comp_sum(row) for row in basis.values[mask]])
    return WeylResidual(t=t, N=X.N, r=r, weights=residual_weights(spec)[mask])


def weyl_jacobian(X, t):
    """Jacobian of the residual w.r.t. the packed angles (d = 2).

    Rows follow the residual order (even degrees only for symmetric
    sets, doubled); columns follow the ParamVector packing.
    """
    if X.d != 2:
        raise InvalidDimensionError("Weyl Jacobians require d = 2")
    p = points_to_param(X)
    reps = X.coords.shape[0]
    d1, d2 = specfun.sph_harmonics_s2_jacobian(t, X.coords, include_degree0=False)
    if X.symmetric:
        mask = symmetric_row_mask(t)
        d1 = 2.0 * d1[mask]
        d2 = 2.0 * d2[mask]
    slots = _free_slots(2, reps)
    A = np.empty((d1.shape[0], len(slots)))
    for s, (j, i) in enumerate(slots):
        A[:, s] = d1[:, j] if i == 0 else d2[:, j]
    return A
