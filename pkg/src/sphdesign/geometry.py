"""Geometric quality metrics: separation, mesh norm, mesh ratio,
inner-product multiset, and Riesz energy.

The mesh norm (covering radius) is computed by certified branch and
bound.  The field f(c) = min_j dist(c, x_j) is 1-Lipschitz in the
geodesic metric, so over a spherical cap of radius r centred at c its
supremum is at most f(c) + r.  Caps whose bound cannot beat the best
value found are discarded; the rest are split through the tangent
plane, where the exponential map does not increase distances, so the
child caps rigorously cover the parent.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (InfiniteEnergyError, InvalidParameterError,
                     UndefinedMetricError)
from .summation import comp_sum

_MAX_CELLS = 4000000
_MAX_ROUNDS = 60


def _pairwise_cos(coords):
    g = coords @ coords.T
    np.clip(g, -1.0, 1.0, out=g)
    return g


def separation(X):
    """Minimum geodesic distance over all point pairs."""
    coords = X.expanded()
    N = coords.shape[0]
    if N < 2:
        raise UndefinedMetricError("separation needs at least two points")
    g = _pairwise_cos(coords)
    iu = np.triu_indices(N, k=1)
    return float(np.arccos(np.max(g[iu])))


def _min_dist_field(centers, coords):
    """f(c) = min_j geodesic distance from each center to the set."""
    g = centers @ coords.T
    np.clip(g, -1.0, 1.0, out=g)
    return np.arccos(np.max(g, axis=1))


def _cap_radius(pitch, w):
    """Cap radius covering one lattice box of the given pitch in R^w.

    Every sphere point inside the box lies within the half-diagonal of
    the box center b, hence within chord 2*halfdiag of the projected
    center b/|b|; the geodesic radius follows from the chord.
    """
    halfdiag = 0.5 * pitch * np.sqrt(w)
    chord = min(2.0, 2.0 * halfdiag)
    return 2.0 * np.arcsin(0.5 * chord)


def _seed_boxes(w, pitch):
    """Centers of all lattice boxes of the given pitch meeting S^(w-1)."""
    k = np.arange(int(np.floor(-1.0 / pitch)) - 1, int(np.ceil(1.0 / pitch)) + 1)
    axes = [(k + 0.5) * pitch] * w
    mesh = np.meshgrid(*axes, indexing="ij")
    b = np.stack([m.ravel() for m in mesh], axis=1)
    return _near_sphere(b, pitch)


def _near_sphere(b, pitch):
    """Keep box centers whose box can intersect the unit sphere."""
    halfdiag = 0.5 * pitch * np.sqrt(b.shape[1])
    nb = np.linalg.norm(b, axis=1)
    keep = np.abs(nb - 1.0) <= halfdiag
    return b[keep]


def _box_children(parents, pitch):
    """Split each box into 2^w subboxes of half pitch.

    Children of distinct parents are distinct, so no duplicate cells
    accumulate across rounds.
    """
    w = parents.shape[1]
    offs = np.array(np.meshgrid(*([[-0.25 * pitch, 0.25 * pitch]] * w),
                                indexing="ij")).reshape(w, -1).T
    children = (parents[:, None, :] + offs[None, :, :]).reshape(-1, w)
    return _near_sphere(children, 0.5 * pitch)


def _polish_center(c, coords, iters=40):
    """Sharpen a covering-radius candidate by moving it toward the
    point equidistant from its nearest d+1 neighbours.

    Each candidate is evaluated exactly against the whole set, so the
    returned value is always a valid lower bound on the mesh norm.
    """
    w = coords.shape[1]
    best_c = c / np.linalg.norm(c)
    best = float(_min_dist_field(best_c[None, :], coords)[0])
    cur = best_c
    for _ in range(iters):
        g = coords @ cur
        order = np.argsort(-g)[:w]
        base = coords[order[0]]
        diffs = coords[order[1:]] - base
        # unit vector equidistant from the active points: null space of
        # the difference matrix, oriented toward the current iterate
        _, s, vt = np.linalg.svd(diffs, full_matrices=True)
        rank = int(np.sum(s > 1e-12 * (s[0] if s.size else 1.0)))
        null = vt[rank:]
        if null.shape[0] == 0:
            break
        y = null.T @ (null @ cur)
        ny = np.linalg.norm(y)
        if ny < 1e-14:
            break
        y /= ny
        val = float(_min_dist_field(y[None, :], coords)[0])
        if val > best + 1e-15:
            best, best_c = val, y
            cur = y
        else:
            break
    return best, best_c


def mesh_norm(X, accuracy=1e-6, max_cells=_MAX_CELLS):
    """Covering radius with a certified two-sided bracket.

    Branch and bound over ambient lattice boxes meeting the sphere.
    Each box lies inside a spherical cap around its projected center;
    the min-distance field f is 1-Lipschitz, so f(center) + cap radius
    bounds the field over the whole box.  Boxes that cannot beat the
    best value by more than the requested accuracy are pruned, the
    rest are split into 2^(d+1) half-pitch boxes.  After every round
    the best candidates are polished to locally equidistant points,
    which sharpens the lower bound to near machine precision.

    Returns (h, achieved): the true mesh norm lies in [h, h+achieved].
    achieved <= accuracy unless the cell budget ran out, in which case
    the wider, still rigorous bracket is reported.
    """
    if accuracy < 1e-8:
        raise InvalidParameterError("accuracy below 1e-8 is not supported")
    coords = X.expanded()
    w = X.d + 1
    pitch = 0.25
    boxes = _seed_boxes(w, pitch)
    centers = boxes / np.linalg.norm(boxes, axis=1)[:, None]
    r = _cap_radius(pitch, w)
    f = _min_dist_field(centers, coords)
    lower = float(np.max(f))
    for i in np.argsort(-f)[:8]:
        val, _ = _polish_center(centers[i], coords)
        lower = max(lower, val)
    upper = max(lower, float(np.max(f + r)))
    chunk = max(1, max_cells // (2 ** w))
    for _ in range(_MAX_ROUNDS):
        if upper - lower <= accuracy:
            break
        keep = f + r > lower + accuracy
        if not np.any(keep):
            upper = lower + accuracy
            break
        parents = boxes[keep]
        if parents.shape[0] * 2 ** w > max_cells:
            # cell budget exhausted: the bracket stays rigorous, the
            # requested accuracy is simply not reached
            upper = max(lower + accuracy, float(np.max(f[keep] + r)))
            break
        child_r = _cap_radius(0.5 * pitch, w)
        bs, fs = [], []
        for lo in range(0, parents.shape[0], chunk):
            cb = _box_children(parents[lo:lo + chunk], pitch)
            cc = cb / np.linalg.norm(cb, axis=1)[:, None]
            fc = _min_dist_field(cc, coords)
            if fc.size:
                m = float(np.max(fc))
                if m > lower:
                    lower = m
            sel = fc + child_r > lower + accuracy
            bs.append(cb[sel])
            fs.append(fc[sel])
        boxes = np.concatenate(bs) if bs else np.empty((0, w))
        f = np.concatenate(fs) if fs else np.empty(0)
        pitch *= 0.5
        r = child_r
        if f.size == 0:
            upper = lower + accuracy
            break
        centers = boxes / np.linalg.norm(boxes, axis=1)[:, None]
        for i in np.argsort(-f)[:8]:
            val, _ = _polish_center(centers[i], coords)
            lower = max(lower, val)
        upper = max(lower + accuracy, float(np.max(f + r)))
    return lower, max(0.0, upper - lower)


@dataclass(frozen=True)
class GeometryReport:
    """Separation, mesh norm (with its certified accuracy), mesh ratio."""
    delta: float
    h: float
    rho: float
    h_accuracy: float


def mesh_ratio(X, accuracy=1e-6):
    """GeometryReport with rho = 2 h / delta."""
    delta = separation(X)
    h, achieved = mesh_norm(X, accuracy)
    return GeometryReport(delta=delta, h=h, rho=2.0 * h / delta,
                          h_accuracy=achieved)


@dataclass(frozen=True)
class InnerProductSet:
    """Sorted multiset of pairwise inner products, optionally merged
    within a dedup tolerance (multiplicities retained)."""
    values: np.ndarray
    counts: np.ndarray
    dedup: float

    def same_as(self, other, tol=1e-8):
        """Multiset equality within tol, the configuration equivalence
        test (inner products determine a set up to rotation)."""
        a = np.repeat(self.values, self.counts)
        b = np.repeat(other.values, other.counts)
        if a.size != b.size:
            return False
        return bool(np.all(np.abs(a - b) <= tol))


def inner_product_set(X, dedup=1e-9):
    """All inner products x_i . x_j, i < j, sorted ascending."""
    coords = X.expanded()
    N = coords.shape[0]
    if N < 2:
        raise UndefinedMetricError("inner products need at least two points")
    g = _pairwise_cos(coords)
    vals = np.sort(g[np.triu_indices(N, k=1)])
    if dedup <= 0:
        return InnerProductSet(values=vals, counts=np.ones(vals.size, dtype=int),
                               dedup=dedup)
    merged = [vals[0]]
    counts = [1]
    for v in vals[1:]:
        if v - merged[-1] <= dedup:
            # running mean keeps merged clusters centred
            merged[-1] += (v - merged[-1]) / (counts[-1] + 1)
            counts[-1] += 1
        else:
            merged.append(v)
            counts.append(1)
    return InnerProductSet(values=np.array(merged),
                           counts=np.array(counts, dtype=int), dedup=dedup)


def riesz_energy(X, s):
    """Riesz energy sum_{i<j} |x_i - x_j|^(-s), compensated."""
    if s <= 0:
        raise InvalidParameterError("the energy exponent must be positive")
    coords = X.expanded()
    N = coords.shape[0]
    if N < 2:
        raise UndefinedMetricError("energy needs at least two points")
    g = _pairwise_cos(coords)
    iu = np.triu_indices(N, k=1)
    d2 = 2.0 - 2.0 * g[iu]
    if np.any(d2 <= 0.0):
        raise InfiniteEnergyError("coincident points give infinite energy")
    return comp_sum(d2 ** (-0.5 * s))
