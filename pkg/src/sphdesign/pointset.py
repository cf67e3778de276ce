"""Point sets on S^d: representation, spherical angles, canonical
rotation normalization, packing of free variables, and file I/O.

A point x in R^{d+1} is written with spherical angles phi_1..phi_d as

    x_1 = cos(phi_1)
    x_i = sin(phi_1)...sin(phi_{i-1}) cos(phi_i),  i = 2..d
    x_{d+1} = sin(phi_1)...sin(phi_d)

with phi_i in [0, pi] for i < d and phi_d in [0, 2 pi).  After rotating
the configuration into canonical position (QR with nonnegative diagonal)
the leading angles of the first points are pinned to zero, and only the
remaining angles are optimization variables.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (InvalidDimensionError, InvalidPointError,
                     InvalidParameterError, NotNormalizedError, ParseError)

UNIT_TOL = 1e-12
READ_NORM_TOL = 1e-8
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PointSet:
    """N unit vectors on S^d.

    coords holds one point per row.  When symmetric is true, coords
    stores N/2 representatives and each antipode is implied, so N
    counts the expanded set.
    """
    d: int
    coords: np.ndarray
    symmetric: bool = False

    def __post_init__(self):
        coords = np.ascontiguousarray(np.asarray(self.coords, dtype=float))
        object.__setattr__(self, "coords", coords)
        if self.d < 1:
            raise InvalidDimensionError("d must be >= 1, got %r" % (self.d,))
        if coords.ndim != 2 or coords.shape[1] != self.d + 1:
            raise InvalidPointError(
                "coords must be (N, d+1), got shape %r" % (coords.shape,))
        if coords.shape[0] < 1:
            raise InvalidPointError("need at least one point")
        norms = np.linalg.norm(coords, axis=1)
        bad = np.abs(norms - 1.0) > UNIT_TOL
        if np.any(bad):
            raise InvalidPointError(
                "row %d has norm %.17g, not within %g of 1"
                % (int(np.argmax(bad)), norms[np.argmax(bad)], UNIT_TOL))
        coords.setflags(write=False)

    @property
    def N(self):
        n = self.coords.shape[0]
        return 2 * n if self.symmetric else n

    def expanded(self):
        """All N points as an (N, d+1) array, antipodes made explicit."""
        if not self.symmetric:
            return self.coords
        return np.vstack([self.coords, -self.coords])

    def expand(self):
        """A plain (non-symmetric) PointSet with antipodes explicit."""
        if not self.symmetric:
            return self
        return PointSet(d=self.d, coords=self.expanded(), symmetric=False)


def surface_area(d):
    """Surface area of the unit sphere S^d in R^{d+1}."""
    from math import pi, lgamma, exp
    if d < 1:
        raise InvalidDimensionError("d must be >= 1, got %r" % (d,))
    return 2.0 * pi ** ((d + 1) / 2.0) * exp(-lgamma((d + 1) / 2.0))


def geodesic_dist(x, y):
    """Great-circle distance between two unit vectors, in radians."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for v in (x, y):
        if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
            raise InvalidPointError("geodesic_dist requires unit vectors")
    return float(np.arccos(np.clip(np.dot(x, y), -1.0, 1.0)))


def n_free(d, N, symmetric=False):
    """Number of free angles of a normalized configuration."""
    if symmetric:
        if N % 2:
            raise InvalidParameterError("symmetric sets need even N")
        N = N // 2
    if N <= d:
        return N * (N - 1) // 2
    return N * d - d * (d + 1) // 2


def _free_slots(d, N):
    """Packed order of free angles: (point index j, angle index i), both
    0-based, angles i = 0..min(j, d) - 1 for point j."""
    slots = []
    for j in range(1, N):
        for i in range(min(j, d)):
            slots.append((j, i))
    return slots


def _angle_upper(d, j, i):
    """Upper bound of free angle i of point j (0-based indices)."""
    return TWO_PI if i == d - 1 else np.pi


@dataclass
class ParamVector:
    """Packed free angles of a normalized point set.

    For symmetric sets the angles describe the N/2 representatives.
    Bounds: colatitude-like angles lie in [0, pi]; the final angle of a
    point (index d) in [0, 2 pi).
    """
    d: int
    N: int
    symmetric: bool
    values: np.ndarray
    lower: np.ndarray = field(default=None)
    upper: np.ndarray = field(default=None)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        n = n_free(self.d, self.N, self.symmetric)
        if self.values.shape != (n,):
            raise InvalidParameterError(
                "expected %d packed angles, got shape %r" % (n, self.values.shape))
        if self.lower is None:
            self.lower = np.zeros(n)
        if self.upper is None:
            reps = self.N // 2 if self.symmetric else self.N
            self.upper = np.array([_angle_upper(self.d, j, i)
                                   for j, i in _free_slots(self.d, reps)])
        if np.any(self.values < self.lower - 1e-12) or \
           np.any(self.values > self.upper + 1e-12):
            raise InvalidParameterError("packed angle out of bounds")


def _angles_to_point(phi):
    """Point in R^{d+1} from its d spherical angles."""
    d = len(phi)
    x = np.empty(d + 1)
    s = 1.0
    for i in range(d):
        x[i] = s * np.cos(phi[i])
        s *= np.sin(phi[i])
    x[d] = s
    return x


def _point_to_angles(x, d):
    """Spherical angles of a unit vector; zero tails map to angle 0."""
    phi = np.empty(d)
    for i in range(d - 1):
        tail = np.linalg.norm(x[i:])
        phi[i] = 0.0 if tail == 0.0 else float(np.arccos(np.clip(x[i] / tail, -1.0, 1.0)))
    a = float(np.arctan2(x[d], x[d - 1]))
    if x[d] == 0.0 and x[d - 1] == 0.0:
        a = 0.0
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:
        a = 0.0
    phi[d - 1] = a
    return phi


def param_to_points(p):
    """Expand a ParamVector into its normalized PointSet."""
    d = p.d
    reps = p.N // 2 if p.symmetric else p.N
    slots = _free_slots(d, reps)
    coords = np.empty((reps, d + 1))
    phi = np.zeros((reps, d))
    for (j, i), v in zip(slots, p.values):
        phi[j, i] = v
    for j in range(reps):
        coords[j] = _angles_to_point(phi[j])
    # the zero pattern makes trailing coordinates exactly zero
    for j in range(min(reps, d + 1)):
        coords[j, j + 1:] = 0.0
        nrm = np.linalg.norm(coords[j])
        if nrm > 0:
            coords[j] /= nrm
    return PointSet(d=d, coords=coords, symmetric=p.symmetric)


def points_to_param(X):
    """Recover the packed free angles of a normalized PointSet.

    Raises NotNormalizedError when X lacks the canonical zero pattern.
    """
    d = X.d
    reps = X.coords.shape[0]
    _require_normalized(X)
    slots = _free_slots(d, reps)
    values = np.empty(len(slots))
    angles = np.array([_point_to_angles(X.coords[j], d) for j in range(reps)])
    for s, (j, i) in enumerate(slots):
        values[s] = angles[j, i]
    return ParamVector(d=d, N=X.N, symmetric=X.symmetric, values=values)


def _require_normalized(X, tol=1e-10):
    coords = X.coords
    reps, w = coords.shape
    d = X.d
    for j in range(min(reps, w)):
        if np.any(np.abs(coords[j, j + 1:]) > tol):
            raise NotNormalizedError(
                "point %d violates the canonical zero pattern" % j)
        # the sign of the last coordinate of point d is set by its free
        # azimuth, so only the first min(d, N) diagonal entries are pinned
        if j < min(reps, d) and coords[j, j] < -tol:
            raise NotNormalizedError(
                "point %d has a negative pinned coordinate" % j)


def is_normalized(X, tol=1e-10):
    try:
        _require_normalized(X, tol)
    except NotNormalizedError:
        return False
    return True


def normalize_pointset(X):
    """Rotate X into canonical position.

    Returns (Y, Q) with Y the rotated set and Q the (d+1)x(d+1)
    orthogonal matrix such that Y = X Q^T row-wise.  The rotated
    coordinate matrix is upper triangular across the first points with
    nonnegative diagonal, so the first point is e_1.  Rank deficiency
    is resolved by the identity completion of the QR factorization.
    """
    if is_normalized(X, tol=0.0):
        return X, np.eye(X.d + 1)
    A = X.coords.T  # (d+1, reps), points as columns
    Q, R = np.linalg.qr(A, mode="complete")
    m = min(A.shape)
    for i in range(m):
        if R[i, i] < 0.0:
            R[i, :] *= -1.0
            Q[:, i] *= -1.0
    coords = np.zeros((X.coords.shape[0], X.d + 1))
    coords[:, :R.shape[0]] = R.T
    # exact zeros in the pinned pattern, then restore unit rows
    for j in range(min(coords.shape[0], X.d + 1)):
        coords[j, j + 1:] = 0.0
    norms = np.linalg.norm(coords, axis=1)
    coords /= norms[:, None]
    Y = PointSet(d=X.d, coords=coords, symmetric=X.symmetric)
    return Y, Q.T


def write_pointset(X, path, t=None):
    """Write a PointSet as text, one point per line, 17 significant digits.

    Symmetric sets store only the representatives; the header records
    the expanded count.
    """
    lines = ["# d=%d N=%d%s sym=%d" % (
        X.d, X.N, "" if t is None else " t=%d" % t, 1 if X.symmetric else 0)]
    for row in X.coords:
        lines.append(" ".join("%.17g" % v for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_pointset(path):
    """Read a PointSet written by write_pointset (header optional)."""
    header = {}
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if "=" in tok:
                        k, _, v = tok.partition("=")
                        try:
                            header[k] = int(v)
                        except ValueError:
                            raise ParseError("bad header field %r" % tok, lineno)
                continue
            try:
                vals = [float(tok) for tok in line.split()]
            except ValueError:
                raise ParseError("unparseable number in %r" % line, lineno)
            rows.append((lineno, vals))
    if not rows:
        raise ParseError("no points in file")
    width = len(rows[0][1])
    if width < 2:
        raise ParseError("points need at least 2 coordinates", rows[0][0])
    for lineno, vals in rows:
        if len(vals) != width:
            raise ParseError(
                "expected %d columns, got %d" % (width, len(vals)), lineno)
    if "d" in header and header["d"] != width - 1:
        raise ParseError("header d=%d does not match %d columns"
                         % (header["d"], width))
    coords = np.array([vals for _, vals in rows])
    norms = np.linalg.norm(coords, axis=1)
    worst = float(np.max(np.abs(norms - 1.0)))
    if worst > READ_NORM_TOL:
        raise InvalidPointError(
            "line %d: norm deviates by %.3g (limit %g)"
            % (rows[int(np.argmax(np.abs(norms - 1.0)))][0], worst, READ_NORM_TOL))
    if worst > UNIT_TOL:
        warnings.warn("renormalizing rows with norm error up to %.3g" % worst)
        coords = coords / norms[:, None]
    symmetric = bool(header.get("sym", 0))
    X = PointSet(d=width - 1, coords=coords, symmetric=symmetric)
    if "N" in header and header["N"] != X.N:
        raise ParseError("header N=%d does not match %d points read"
                         % (header["N"], X.N))
    return X


def param_jacobian_point(phi):
    """Derivatives dx/dphi_i of one point w.r.t. its angles.

    Returns a (d, d+1) array; row i is the partial derivative of the
    point with respect to phi_i.
    """
    d = len(phi)
    c = np.cos(phi)
    s = np.sin(phi)
    # prefix[i] = prod_{k<i} sin(phi_k)
    prefix = np.empty(d + 1)
    prefix[0] = 1.0
    for i in range(d):
        prefix[i + 1] = prefix[i] * s[i]
    J = np.zeros((d, d + 1))
    for i in range(d):
        # coordinates j > i depend on phi_i through sin(phi_i);
        # coordinate i depends through cos(phi_i)
        J[i, i] = -prefix[i] * s[i]
        for j in range(i + 1, d + 1):
            tail = prefix[j] / s[i] if s[i] != 0.0 else (
                prefix[i] * np.prod(s[i + 1:j]))
            fac = c[j] if j < d else 1.0
            J[i, j] = tail * c[i] * fac
    return J
