"""Jacobi polynomials, normalized Legendre polynomials, real spherical
harmonics on S^2, harmonic-space dimensions, and largest Jacobi zeros.

All harmonic evaluation uses stable three-term recurrences in double
precision; every ratio of gamma functions goes through log-gamma
differences so large degrees do not overflow.
"""

from dataclasses import dataclass
from math import comb, lgamma, exp

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import InvalidDimensionError, InvalidParameterError

MAX_HARMONIC_DEGREE = 2000


def gamma_ratio(a, b):
    """Gamma(a)/Gamma(b) via log-gamma differences."""
    return exp(lgamma(a) - lgamma(b))


def dim_harmonic(d, ell):
    """Dimension Z(d, ell) of degree-ell spherical harmonics on S^d.

    Computed in exact integer arithmetic.
    """
    if d < 1:
        raise InvalidDimensionError("d must be >= 1, got %r" % (d,))
    if ell < 0:
        raise InvalidParameterError("degree must be >= 0, got %r" % (ell,))
    if ell == 0:
        return 1
    if ell == 1:
        return d + 1
    return comb(d + ell, ell) - comb(d + ell - 2, ell - 2)


def dim_poly(d, t):
    """Dimension D(d, t) of spherical polynomials of degree <= t on S^d."""
    if d < 1:
        raise InvalidDimensionError("d must be >= 1, got %r" % (d,))
    if t < 0:
        raise InvalidParameterError("degree must be >= 0, got %r" % (t,))
    return dim_harmonic(d + 1, t)


@dataclass(frozen=True)
class JacobiParams:
    """Parameters (alpha, beta, degree) of one Jacobi polynomial."""
    alpha: float
    beta: float
    ell: int

    def __post_init__(self):
        if self.alpha <= -1 or self.beta <= -1:
            raise InvalidParameterError("jacobi parameters must exceed -1")
        if self.ell < 0:
            raise InvalidParameterError("jacobi degree must be >= 0")


def jacobi_batch(alpha, beta, L, z):
    """Values of P_ell^(alpha,beta)(z) for ell = 0..L.

    Returns an array of shape (L+1,) + shape(z), filled by the standard
    three-term recurrence.
    """
    if alpha <= -1 or beta <= -1:
        raise InvalidParameterError("jacobi parameters must exceed -1")
    if L < 0:
        raise InvalidParameterError("max degree must be >= 0")
    z = np.asarray(z, dtype=float)
    out = np.empty((L + 1,) + z.shape)
    out[0] = 1.0
    if L == 0:
        return out
    ab = alpha + beta
    out[1] = 0.5 * (ab + 2.0) * z + 0.5 * (alpha - beta)
    for n in range(2, L + 1):
        c = 2.0 * n + ab
        a1 = 2.0 * n * (n + ab) * (c - 2.0)
        a2 = (c - 1.0) * (alpha * alpha - beta * beta)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * c
        out[n] = ((a2 + a3 * z) * out[n - 1] - a4 * out[n - 2]) / a1
    return out


def jacobi_eval(p, z):
    """Value of the Jacobi polynomial described by JacobiParams p at z."""
    return jacobi_batch(p.alpha, p.beta, p.ell, z)[p.ell]


def jacobi_at_one(alpha, ell):
    """P_ell^(alpha,beta)(1) = Gamma(ell+alpha+1)/(Gamma(ell+1)Gamma(alpha+1))."""
    return exp(lgamma(ell + alpha + 1.0) - lgamma(ell + 1.0) - lgamma(alpha + 1.0))


def jacobi_deriv(p, z):
    """Derivative of P_ell^(alpha,beta) at z."""
    if p.ell == 0:
        return np.zeros_like(np.asarray(z, dtype=float))
    q = JacobiParams(p.alpha + 1.0, p.beta + 1.0, p.ell - 1)
    return 0.5 * (p.ell + p.alpha + p.beta + 1.0) * jacobi_eval(q, z)


def legendre_norm(d, ell, z):
    """Normalized Legendre polynomial P_ell^(d+1), equal to 1 at z = 1."""
    if d < 2:
        raise InvalidDimensionError("normalized Legendre needs d >= 2")
    alpha = 0.5 * (d - 2.0)
    return jacobi_batch(alpha, alpha, ell, z)[ell] / jacobi_at_one(alpha, ell)


def legendre_norm_batch(d, L, z):
    """P_ell^(d+1)(z) for all ell = 0..L at once."""
    if d < 2:
        raise InvalidDimensionError("normalized Legendre needs d >= 2")
    alpha = 0.5 * (d - 2.0)
    vals = jacobi_batch(alpha, alpha, L, z)
    scale = np.array([jacobi_at_one(alpha, ell) for ell in range(L + 1)])
    return vals / scale.reshape((L + 1,) + (1,) * (vals.ndim - 1))


def legendre_norm_deriv(d, ell, z):
    """d/dz of the normalized Legendre polynomial P_ell^(d+1)."""
    if ell == 0:
        return np.zeros_like(np.asarray(z, dtype=float))
    factor = ell * (ell + d - 1.0) / d
    return factor * legendre_norm(d + 2, ell - 1, z)


def jacobi_largest_zero(alpha, beta, n, polish=True):
    """Largest zero of P_n^(alpha,beta) via the symmetric eigenvalue method.

    The zeros are the eigenvalues of the symmetric tridiagonal matrix
    built from the monic recurrence coefficients; one Newton step then
    polishes the largest one.
    """
    if alpha <= -1 or beta <= -1:
        raise InvalidParameterError("jacobi parameters must exceed -1")
    if n < 1:
        raise InvalidParameterError("a degree-0 polynomial has no zero")
    ab = alpha + beta
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (ab + 2.0)
    for k in range(1, n):
        c = 2.0 * k + ab
        diag[k] = (beta * beta - alpha * alpha) / (c * (c + 2.0))
    off = np.empty(max(n - 1, 0))
    for k in range(1, n):
        c = 2.0 * k + ab
        num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab)
        den = c * c * (c + 1.0) * (c - 1.0)
        off[k - 1] = np.sqrt(num / den)
    if n == 1:
        gamma = diag[0]
    else:
        gamma = eigh_tridiagonal(diag, off, eigvals_only=True)[-1]
    if polish:
        p = JacobiParams(alpha, beta, n)
        f = float(jacobi_eval(p, gamma))
        fp = float(jacobi_deriv(p, gamma))
        if fp != 0.0:
            step = f / fp
            if abs(step) < 1e-6:
                gamma = gamma - step
    return float(gamma)


def _schmidt_table(L, x):
    """Semi-normalized associated Legendre values Q_l^k(x) for l <= L.

    Q_l^k = sqrt((l-k)!/(l+k)!) * P_l^k without the Condon-Shortley
    phase, including the (1-x^2)^(k/2) factor.  Returned as a flat
    array indexed by idx(l, k) = l(l+1)/2 + k, vectorized over x.
    """
    x = np.asarray(x, dtype=float)
    u = np.sqrt(np.maximum(0.0, 1.0 - x * x))
    nrows = (L + 1) * (L + 2) // 2
    q = np.zeros((nrows,) + x.shape)

    def idx(l, k):
        return l * (l + 1) // 2 + k

    q[idx(0, 0)] = 1.0
    for k in range(1, L + 1):
        q[idx(k, k)] = u * np.sqrt((2.0 * k - 1.0) / (2.0 * k)) * q[idx(k - 1, k - 1)]
    for k in range(0, L):
        if k + 1 <= L:
            q[idx(k + 1, k)] = np.sqrt(2.0 * k + 1.0) * x * q[idx(k, k)]
        for l in range(k + 2, L + 1):
            a = np.sqrt(float(l * l - k * k))
            b = np.sqrt(float((l - 1) * (l - 1) - k * k))
            q[idx(l, k)] = ((2.0 * l - 1.0) * x * q[idx(l - 1, k)]
                            - b * q[idx(l - 2, k)]) / a
    return q


def _schmidt_theta_deriv(L, q):
    """Colatitude derivatives dQ_l^k/dtheta from the Q table itself."""
    dq = np.zeros_like(q)

    def idx(l, k):
        return l * (l + 1) // 2 + k

    for l in range(1, L + 1):
        dq[idx(l, 0)] = -np.sqrt(l * (l + 1.0)) * q[idx(l, 1)]
        for k in range(1, l + 1):
            lo = np.sqrt((l + k) * (l - k + 1.0)) * q[idx(l, k - 1)]
            hi = 0.0 if k == l else np.sqrt((l - k) * (l + k + 1.0)) * q[idx(l, k + 1)]
            dq[idx(l, k)] = 0.5 * (lo - hi)
    return dq


@dataclass
class HarmonicBasisEval:
    """Real orthonormal spherical-harmonic values on S^2.

    values has one row per basis function; the block for degree l holds
    2l+1 rows ordered sin(l phi2)..sin(phi2), the zonal term, then
    cos(phi2)..cos(l phi2).
    """
    L: int
    include_degree0: bool
    values: np.ndarray


def _s2_angles(coords):
    """Colatitude cosine (about the first axis) and azimuth of S^2 points."""
    x = np.clip(coords[:, 0], -1.0, 1.0)
    phi2 = np.arctan2(coords[:, 2], coords[:, 1])
    return x, phi2


def _check_s2(X, L):
    coords = getattr(X, "coords", X)
    coords = np.asarray(coords, dtype=float)
    if coords.ndim != 2 or coords.shape[1] != 3:
        raise InvalidDimensionError("spherical harmonics here require d = 2")
    if L > MAX_HARMONIC_DEGREE:
        raise InvalidParameterError(
            "degree %d exceeds the stability cap %d" % (L, MAX_HARMONIC_DEGREE))
    if getattr(X, "symmetric", False):
        coords = np.vstack([coords, -coords])
    return coords


def sph_harmonics_s2(L, X, include_degree0=False):
    """Evaluate the real orthonormal harmonic basis up to degree L.

    X may be a PointSet with d=2 (symmetric sets are expanded) or a
    plain (M, 3) array of unit vectors.
    """
    coords = _check_s2(X, L)
    x, phi2 = _s2_angles(coords)
    q = _schmidt_table(L, x)
    M = coords.shape[0]
    lo = 0 if include_degree0 else 1
    nrows = (L + 1) ** 2 - (0 if include_degree0 else 1)
    out = np.empty((nrows, M))
    row = 0

    def idx(l, k):
        return l * (l + 1) // 2 + k

    for l in range(lo, L + 1):
        c0 = np.sqrt(2.0 * l + 1.0)
        ck = np.sqrt(2.0 * (2.0 * l + 1.0))
        for k in range(l, 0, -1):
            out[row] = ck * q[idx(l, k)] * np.sin(k * phi2)
            row += 1
        out[row] = c0 * q[idx(l, 0)]
        row += 1
        for k in range(1, l + 1):
            out[row] = ck * q[idx(l, k)] * np.cos(k * phi2)
            row += 1
    return HarmonicBasisEval(L=L, include_degree0=include_degree0, values=out)


def sph_harmonics_s2_jacobian(L, X, include_degree0=False):
    """Analytic derivatives of the harmonic basis w.r.t. (phi1, phi2).

    phi1 is the colatitude from the first axis, phi2 the azimuth in the
    plane of the second and third axes.  Returns (dY_dphi1, dY_dphi2),
    each shaped like the value matrix.  At the poles the azimuthal
    chain-rule entries are taken at their finite limits.
    """
    coords = _check_s2(X, L)
    x, phi2 = _s2_angles(coords)
    q = _schmidt_table(L, x)
    dq = _schmidt_theta_deriv(L, q)
    M = coords.shape[0]
    lo = 0 if include_degree0 else 1
    nrows = (L + 1) ** 2 - (0 if include_degree0 else 1)
    d1 = np.zeros((nrows, M))
    d2 = np.zeros((nrows, M))
    row = 0

    def idx(l, k):
        return l * (l + 1) // 2 + k

    for l in range(lo, L + 1):
        c0 = np.sqrt(2.0 * l + 1.0)
        ck = np.sqrt(2.0 * (2.0 * l + 1.0))
        for k in range(l, 0, -1):
            d1[row] = ck * dq[idx(l, k)] * np.sin(k * phi2)
            d2[row] = ck * q[idx(l, k)] * k * np.cos(k * phi2)
            row += 1
        d1[row] = c0 * dq[idx(l, 0)]
        row += 1
        for k in range(1, l + 1):
            d1[row] = ck * dq[idx(l, k)] * np.cos(k * phi2)
            d2[row] = -ck * q[idx(l, k)] * k * np.sin(k * phi2)
            row += 1
    return d1, d2
