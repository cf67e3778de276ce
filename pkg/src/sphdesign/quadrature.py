"""Equal-weight quadrature and design verification.

A point set is a t-design when its equal-weight rule integrates every
spherical polynomial of degree at most t exactly.  On S^2 this is
checked degree by degree through Weyl sums of an orthonormal harmonic
basis; in higher dimensions through the variational criteria, which
vanish if and only if the design property holds.
"""

from dataclasses import dataclass

import numpy as np

from . import criteria, specfun
from .errors import InvalidParameterError
from .summation import comp_sum

DEFAULT_TOL = 1e-12


def integrate(X, f):
    """Equal-weight rule (1/N) sum_j f(x_j) with compensated summation.

    f maps one unit vector (length d+1 array) to a float.
    """
    coords = X.expanded()
    vals = np.array([f(x) for x in coords], dtype=float)
    return comp_sum(vals) / coords.shape[0]


@dataclass
class DesignReport:
    """Verification summary for one point set and claimed degree."""
    t_claimed: int
    max_abs_weyl: float  # max |r_{l,k}|/N over degrees <= t_claimed; d=2 only
    V1: float
    V2: float
    V3: float
    rTr: float  # unscaled residual sum of squares; d=2 only, else nan
    is_design: bool
    exactness_degree: int

    def to_dict(self):
        return {
            "t_claimed": self.t_claimed,
            "max_abs_weyl": self.max_abs_weyl,
            "V1": self.V1,
            "V2": self.V2,
            "V3": self.V3,
            "rTr": self.rTr,
            "is_design": self.is_design,
            "exactness_degree": self.exactness_degree,
        }


def _degree_max_weyl_s2(X, t_max):
    """Per-degree max |r_{l,k}|/N for l = 1..t_max."""
    basis = specfun.sph_harmonics_s2(t_max, X, include_degree0=False)
    sums = np.array([comp_sum(row) for row in basis.values])
    N = X.N
    out = np.empty(t_max)
    pos = 0
    for ell in range(1, t_max + 1):
        width = 2 * ell + 1
        out[ell - 1] = np.max(np.abs(sums[pos:pos + width])) / N
        pos += width
    return out, sums


def verify_design(X, t_max, tolerance=DEFAULT_TOL):
    """Check the design property up to degree t_max.

    Reports the variational values at t_max for all three criteria and
    the largest degree whose conditions all hold.  For d = 2 the
    decision uses scaled Weyl sums; for d > 2 the three variational
    values per candidate degree.
    """
    if t_max < 1:
        raise InvalidParameterError("t_max must be >= 1")
    v = [criteria.variational_value(X, criteria.make_psi(k, X.d, t_max))
         for k in criteria.KINDS]
    if X.d == 2:
        per_degree, sums = _degree_max_weyl_s2(X, t_max)
        max_abs = float(np.max(per_degree))
        rtr = float(comp_sum(sums * sums))
        exact = 0
        for ell in range(1, t_max + 1):
            if per_degree[ell - 1] > tolerance:
                break
            exact = ell
        is_design = max_abs <= tolerance
    else:
        exact = 0
        for tt in range(1, t_max + 1):
            vs = [criteria.variational_value(X, criteria.make_psi(k, X.d, tt))
                  for k in criteria.KINDS]
            if max(abs(val) for val in vs) > tolerance:
                break
            exact = tt
        max_abs = float("nan")
        rtr = float("nan")
        is_design = exact >= t_max
    return DesignReport(t_claimed=t_max, max_abs_weyl=max_abs,
                        V1=v[0], V2=v[1], V3=v[2], rTr=rtr,
                        is_design=is_design, exactness_degree=exact)
