"""Special functions against scipy and brute-force oracles."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import eval_jacobi, roots_jacobi

from sphdesign.errors import InvalidDimensionError, InvalidParameterError
from sphdesign.pointset import PointSet
from sphdesign.specfun import (JacobiParams, dim_harmonic, dim_poly,
                               gamma_ratio, jacobi_at_one, jacobi_batch,
                               jacobi_deriv, jacobi_eval,
                               jacobi_largest_zero, legendre_norm,
                               legendre_norm_batch, legendre_norm_deriv,
                               sph_harmonics_s2, sph_harmonics_s2_jacobian)


def _monomial_count(d, t):
    """Brute-force dimension of spherical polynomials of degree <= t on
    S^d: monomials of degree t and t-1 in d+1 variables."""
    def hom(nvars, deg):
        return math.comb(nvars + deg - 1, deg)
    if t == 0:
        return 1
    return hom(d + 1, t) + hom(d + 1, t - 1)


class TestDimensions:
    def test_harmonic_s2_brute(self):
        for ell in range(0, 30):
            assert dim_harmonic(2, ell) == (1 if ell == 0 else 2 * ell + 1)

    def test_harmonic_s3(self):
        for ell in range(0, 30):
            assert dim_harmonic(3, ell) == (ell + 1) ** 2

    def test_poly_matches_monomial_count(self):
        for d in (1, 2, 3, 5, 8):
            for t in range(0, 12):
                assert dim_poly(d, t) == _monomial_count(d, t)

    def test_poly_is_partial_sum_of_harmonics(self):
        for d in (2, 3, 4):
            for t in range(0, 15):
                assert dim_poly(d, t) == sum(
                    dim_harmonic(d, ell) for ell in range(t + 1))

    def test_invalid_args(self):
        with pytest.raises(InvalidDimensionError):
            dim_harmonic(0, 3)
        with pytest.raises(InvalidParameterError):
            dim_harmonic(2, -1)
        with pytest.raises(InvalidDimensionError):
            dim_poly(0, 3)


class TestJacobi:
    def test_batch_matches_scipy(self):
        z = np.linspace(-1.0, 1.0, 41)
        for alpha, beta in [(0.0, 0.0), (0.5, -0.5), (1.5, 0.5), (2.0, 1.0)]:
            vals = jacobi_batch(alpha, beta, 12, z)
            for ell in range(13):
                expect = eval_jacobi(ell, alpha, beta, z)
                assert np.allclose(vals[ell], expect, rtol=1e-12, atol=1e-12)

    def test_value_at_one(self):
        for alpha in (0.0, 0.5, 1.5, 3.0):
            for ell in range(0, 20):
                direct = eval_jacobi(ell, alpha, 0.25, 1.0)
                assert jacobi_at_one(alpha, ell) == pytest.approx(
                    direct, rel=1e-12)

    def test_deriv_finite_difference(self):
        p = JacobiParams(1.5, 0.5, 7)
        z = np.linspace(-0.9, 0.9, 13)
        h = 1e-6
        fd = (jacobi_eval(p, z + h) - jacobi_eval(p, z - h)) / (2.0 * h)
        assert np.allclose(jacobi_deriv(p, z), fd, rtol=1e-7, atol=1e-7)

    def test_param_validation(self):
        with pytest.raises(InvalidParameterError):
            JacobiParams(-1.0, 0.0, 3)
        with pytest.raises(InvalidParameterError):
            JacobiParams(0.0, 0.0, -1)
        with pytest.raises(InvalidParameterError):
            jacobi_batch(0.0, -1.5, 4, 0.3)


class TestLegendreNorm:
    def test_is_one_at_one(self):
        for d in (2, 3, 4, 7):
            for ell in range(0, 25):
                assert legendre_norm(d, ell, 1.0) == pytest.approx(1.0,
                                                                   abs=1e-12)

    def test_batch_consistent(self):
        z = np.linspace(-1.0, 1.0, 17)
        vals = legendre_norm_batch(3, 10, z)
        for ell in range(11):
            assert np.allclose(vals[ell], legendre_norm(3, ell, z),
                               rtol=1e-13, atol=1e-13)

    def test_d2_is_classical_legendre(self):
        from scipy.special import eval_legendre
        z = np.linspace(-1.0, 1.0, 17)
        for ell in range(0, 15):
            assert np.allclose(legendre_norm(2, ell, z),
                               eval_legendre(ell, z), rtol=1e-12, atol=1e-12)

    def test_orthogonality_weighted(self):
        # integral over [-1,1] with weight (1-z^2)^((d-2)/2) vanishes
        # for distinct degrees
        d = 3
        w = 0.5 * (d - 2.0)
        for la, lb in [(0, 1), (1, 2), (2, 5), (3, 4)]:
            val, _ = quad(lambda z: legendre_norm(d, la, z)
                          * legendre_norm(d, lb, z) * (1 - z * z) ** w,
                          -1.0, 1.0)
            assert abs(val) < 1e-12

    def test_deriv_finite_difference(self):
        z = np.linspace(-0.9, 0.9, 11)
        h = 1e-6
        for d in (2, 3, 5):
            for ell in (1, 2, 6, 11):
                fd = (legendre_norm(d, ell, z + h)
                      - legendre_norm(d, ell, z - h)) / (2.0 * h)
                assert np.allclose(legendre_norm_deriv(d, ell, z), fd,
                                   rtol=1e-6, atol=1e-6)


class TestLargestZero:
    def test_matches_scipy_roots(self):
        for alpha, beta in [(0.0, 0.0), (1.0, 0.0), (1.5, 0.5), (2.5, 1.5)]:
            for n in (1, 2, 5, 12, 40):
                expect = roots_jacobi(n, alpha, beta)[0][-1]
                got = jacobi_largest_zero(alpha, beta, n)
                assert got == pytest.approx(expect, abs=1e-12)

    def test_is_a_zero(self):
        for n in (3, 9, 21):
            g = jacobi_largest_zero(1.5, 0.5, n)
            val = float(jacobi_eval(JacobiParams(1.5, 0.5, n), g))
            assert abs(val) < 1e-9

    def test_invalid(self):
        with pytest.raises(InvalidParameterError):
            jacobi_largest_zero(0.0, 0.0, 0)


def _random_s2(M, seed):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((M, 3))
    return c / np.linalg.norm(c, axis=1)[:, None]


class TestHarmonics:
    def test_addition_theorem(self):
        # sum_k Y_{l,k}(x) Y_{l,k}(y) = (2l+1) P_l(x . y)
        coords = _random_s2(40, 2)
        L = 25
        Y = sph_harmonics_s2(L, coords).values
        g = np.clip(coords @ coords.T, -1.0, 1.0)
        row = 0
        for l in range(1, L + 1):
            block = Y[row:row + 2 * l + 1]
            lhs = block.T @ block
            rhs = (2.0 * l + 1.0) * legendre_norm(2, l, g)
            assert np.allclose(lhs, rhs, rtol=0, atol=1e-10)
            row += 2 * l + 1

    def test_high_degree_norm_identity(self):
        # sum over the degree block of Y^2 at a single point equals 2l+1
        coords = _random_s2(6, 9)
        L = 200
        Y = sph_harmonics_s2(L, coords).values
        row = 0
        for l in range(1, L + 1):
            block = Y[row:row + 2 * l + 1]
            assert np.allclose(np.sum(block * block, axis=0), 2.0 * l + 1.0,
                               rtol=1e-10, atol=1e-8)
            row += 2 * l + 1

    def test_orthonormality_by_quadrature(self):
        # Gauss-Legendre x uniform azimuth integrates products exactly
        L = 6
        nodes, weights = np.polynomial.legendre.leggauss(2 * L + 2)
        M = 2 * L + 3
        phi = 2.0 * np.pi * np.arange(M) / M
        x = np.repeat(nodes, M)
        p = np.tile(phi, nodes.size)
        s = np.sqrt(1.0 - x * x)
        coords = np.stack([x, s * np.cos(p), s * np.sin(p)], axis=1)
        Y = sph_harmonics_s2(L, coords, include_degree0=True).values
        w = np.repeat(weights, M) / (2.0 * M)
        G = (Y * w) @ Y.T
        assert np.allclose(G, np.eye(G.shape[0]), atol=1e-10)

    def test_degree0_row(self):
        coords = _random_s2(5, 4)
        Y = sph_harmonics_s2(3, coords, include_degree0=True).values
        assert np.allclose(Y[0], 1.0)
        assert Y.shape[0] == 16

    def test_symmetric_pointset_expansion(self):
        coords = _random_s2(4, 8)
        X = PointSet(d=2, coords=coords, symmetric=True)
        Y = sph_harmonics_s2(5, X).values
        Yfull = sph_harmonics_s2(5, np.vstack([coords, -coords])).values
        assert np.array_equal(Y, Yfull)

    def test_jacobian_finite_difference(self):
        rng = np.random.default_rng(5)
        phi1 = rng.uniform(0.3, np.pi - 0.3, 7)
        phi2 = rng.uniform(0.0, 2.0 * np.pi, 7)

        def embed(a, b):
            return np.stack([np.cos(a), np.sin(a) * np.cos(b),
                             np.sin(a) * np.sin(b)], axis=1)

        L = 12
        d1, d2 = sph_harmonics_s2_jacobian(L, embed(phi1, phi2))
        h = 1e-6
        f1 = (sph_harmonics_s2(L, embed(phi1 + h, phi2)).values
              - sph_harmonics_s2(L, embed(phi1 - h, phi2)).values) / (2 * h)
        f2 = (sph_harmonics_s2(L, embed(phi1, phi2 + h)).values
              - sph_harmonics_s2(L, embed(phi1, phi2 - h)).values) / (2 * h)
        assert np.allclose(d1, f1, rtol=1e-5, atol=1e-5)
        assert np.allclose(d2, f2, rtol=1e-5, atol=1e-5)

    def test_rejects_wrong_dimension(self):
        with pytest.raises(InvalidDimensionError):
            sph_harmonics_s2(3, np.eye(4))

    def test_degree_cap(self):
        with pytest.raises(InvalidParameterError):
            sph_harmonics_s2(2001, np.eye(3))


def test_gamma_ratio():
    assert gamma_ratio(7.0, 5.0) == pytest.approx(30.0, rel=1e-13)
    assert gamma_ratio(150.5, 150.0) == pytest.approx(
        math.gamma(150.5) / math.gamma(150.0), rel=1e-12)
    # large arguments must not overflow even though gamma itself would
    assert gamma_ratio(5000.5, 5000.0) == pytest.approx(
        math.sqrt(5000.0), rel=1e-3)
