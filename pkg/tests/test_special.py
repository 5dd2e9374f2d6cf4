import math

import numpy as np
import pytest
from scipy.special import lpmv

from covstark.errors import BranchError, ConvergenceError, DomainError
from covstark.special import (
    QuadratureRule,
    RadialLabel,
    assoc_legendre,
    build_quadrature,
    coulomb_radial,
    coulomb_radial_derivative,
    generalized_PL,
    integrate_line_adaptive,
    jacobi_poly,
)

RNG = np.random.default_rng(7)


class TestAssocLegendre:
    def test_constant(self):
        assert assoc_legendre(0, 0, 0.37) == 1.0

    def test_linear(self):
        assert assoc_legendre(1, 0, 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_pinned_convention(self):
        # -3 x sqrt(1 - x^2) at x = 0.5: the Ferrers sign convention
        assert assoc_legendre(2, 1, 0.5) == pytest.approx(-1.299038105676658, abs=1e-12)

    def test_against_scipy(self):
        xs = RNG.uniform(-1, 1, size=7)
        for ell in range(0, 7):
            for m in range(-ell, ell + 1):
                got = assoc_legendre(ell, m, xs)
                assert np.max(np.abs(got - lpmv(m, ell, xs))) < 1e-10, (ell, m)

    def test_recurrence(self):
        # three-term recurrence in degree as an independent oracle
        x = 0.3
        for m in range(0, 4):
            for ell in range(m + 2, 10):
                lhs = (ell - m) * assoc_legendre(ell, m, x)
                rhs = x * (2 * ell - 1) * assoc_legendre(ell - 1, m, x) - (
                    ell + m - 1
                ) * assoc_legendre(ell - 2, m, x)
                assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_orthogonality(self):
        rule = build_quadrature(("interval", -1.0, 1.0), 64)
        for m in range(0, 3):
            for ell in range(m, 7):
                for ellp in range(m, 7):
                    val = float(
                        np.real(
                            rule.integrate(
                                lambda x: assoc_legendre(ell, m, x) * assoc_legendre(ellp, m, x)
                            )
                        )
                    )
                    expect = 0.0
                    if ell == ellp:
                        expect = 2.0 / (2 * ell + 1) * math.factorial(ell + m) / math.factorial(ell - m)
                    assert val == pytest.approx(expect, abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            assoc_legendre(2, 1, 1.5)


class TestJacobi:
    def test_degree_zero(self):
        assert jacobi_poly(0, 1.7 + 0.3j, -2.4, 0.9) == 1.0

    def test_legendre_reduction(self):
        z = 0.41
        assert jacobi_poly(1, 0, 0, z) == pytest.approx(z, abs=1e-15)

    def test_complex_parameters_explicit_sum(self):
        # independent evaluation of the three-term finite sum
        alpha, beta, z = 1 + 2j, 0.0, 0.3
        s0 = ((2 + alpha) * (1 + alpha) / 2) * ((z + 1) / 2) ** 2
        s1 = (2 + alpha) * (2 + beta) * ((z - 1) / 2) * ((z + 1) / 2)
        s2 = ((2 + beta) * (1 + beta) / 2) * ((z - 1) / 2) ** 2
        assert jacobi_poly(2, alpha, beta, z) == pytest.approx(s0 + s1 + s2, abs=1e-14)

    def test_three_term_recurrence(self):
        z = -0.23
        for alpha, beta in [(0.0, 0.0), (1.5, -0.4), (2.0, 3.0)]:
            for k in range(2, 21):
                a1 = 2 * k * (k + alpha + beta) * (2 * k + alpha + beta - 2)
                a2 = (2 * k + alpha + beta - 1) * (alpha**2 - beta**2)
                a3 = (2 * k + alpha + beta - 2) * (2 * k + alpha + beta - 1) * (2 * k + alpha + beta)
                a4 = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + alpha + beta)
                lhs = a1 * jacobi_poly(k, alpha, beta, z)
                rhs = (a2 + a3 * z) * jacobi_poly(k - 1, alpha, beta, z) - a4 * jacobi_poly(
                    k - 2, alpha, beta, z
                )
                assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


class TestGeneralizedPL:
    def test_legendre_diagonal(self):
        for L in range(5):
            z = RNG.uniform(-0.9, 0.9)
            got = generalized_PL(L, 0, 0, z)
            assert abs(got - assoc_legendre(L, 0, z)) < 1e-12

    def test_endpoint_identity(self):
        # at z = 1 with equal orders the value collapses to the prefactor
        for L, a in [(1.5, 0.5), (2.0, 1.0), (2.5, 1.5)]:
            assert generalized_PL(L, a, a, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_half_integer_sanity(self):
        for z in np.linspace(-0.95, 0.95, 11):
            val = generalized_PL(0.5, 0.5, -0.5, z)
            assert np.isfinite(val.real) and np.isfinite(val.imag)
            assert abs(val) > 0

    def test_branch_error(self):
        with pytest.raises(BranchError):
            generalized_PL(0.5, 0.0, 0.5, 0.3)
        with pytest.raises(BranchError):
            generalized_PL(1.0, -0.3j, 0.0, 0.3)
        with pytest.raises(BranchError):
            generalized_PL(1.0, 2.0, 0.0, 0.3)

    def test_swap_symmetry(self):
        # both index orders agree where both sit on the polynomial branch;
        # the bound-state assembly relies on this to reach the u-variable
        # functions at vanishing second Casimir label
        cases = [
            (0.5, 0.5, -0.5),
            (1.5, 0.5, -0.5),
            (1.5, 1.5, -0.5),
            (1.5, 1.5, 0.5),
            (2.0, 2.0, 0.0),
            (2.0, 1.0, 0.0),
            (2.5, 1.5, -2.5),
            (3.0, 2.0, -1.0),
        ]
        for L, a, b in cases:
            for z in np.linspace(-0.9, 0.9, 7):
                f1 = generalized_PL(L, a, b, z)
                f2 = generalized_PL(L, b, a, z)
                assert abs(f1 - f2) < 1e-12 * max(1.0, abs(f1)), (L, a, b, z)


class TestCoulombRadial:
    def test_ground_value(self):
        lab = RadialLabel(0, 0, 1.0)
        assert coulomb_radial(lab, 1.0) == pytest.approx(2.0 * math.exp(-1.0), abs=1e-14)

    def test_ground_normalization_by_quadrature(self):
        rule = build_quadrature(("radial", 0.5), 48)
        lab = RadialLabel(0, 0, 1.0)
        val = np.real(rule.integrate(lambda r: coulomb_radial(lab, r) ** 2 * r**2))
        assert val == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("n_a,ell", [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2)])
    def test_normalization(self, n_a, ell):
        lab = RadialLabel(n_a, ell, 1.0)
        scale = lab.principal / 2.0
        rule = build_quadrature(("radial", scale), 60)
        val = np.real(rule.integrate(lambda r: coulomb_radial(lab, r) ** 2 * r**2))
        assert val == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("n_a,ell", [(0, 0), (1, 0), (0, 1), (2, 1)])
    def test_eigenvalue_rayleigh(self, n_a, ell):
        # Rayleigh quotient of the 3-D radial operator on u = rho R, with the
        # analytic derivative; eigenvalue is -1/(2 N^2) in natural units
        lab = RadialLabel(n_a, ell, 1.0)
        big_n = lab.principal
        rule = build_quadrature(("radial", big_n / 2.0), 60)
        r = rule.nodes
        u = r * coulomb_radial(lab, r)
        du = coulomb_radial(lab, r) + r * coulomb_radial_derivative(lab, r)
        num = 0.5 * np.sum(rule.weights * du * du) + np.sum(
            rule.weights * (ell * (ell + 1) / (2 * r**2) - 1.0 / r) * u * u
        )
        den = np.sum(rule.weights * u * u)
        expect = -1.0 / (2.0 * big_n**2)
        assert abs(num / den - expect) < 1e-6 * abs(expect)

    def test_bohr_radius_scaling(self):
        lab1 = RadialLabel(0, 0, 1.0)
        lab2 = RadialLabel(0, 0, 2.0)
        assert coulomb_radial(lab2, 2.0) == pytest.approx(
            coulomb_radial(lab1, 1.0) / 2.0**1.5, abs=1e-14
        )


class TestQuadrature:
    def test_radial_analytic(self):
        rule = build_quadrature(("radial", 0.5), 48)
        val = np.real(rule.integrate(lambda r: r**3 * np.exp(-2.0 * r)))
        assert val == pytest.approx(3.0 / 8.0, abs=1e-12)

    def test_semicircle(self):
        rule = build_quadrature(("interval_refined", -1.0, 1.0, 22), 12)
        val = np.real(rule.integrate(lambda x: np.sqrt(1.0 - x**2)))
        assert val == pytest.approx(math.pi / 2.0, abs=1e-10)

    def test_doubling_converged(self):
        v1 = np.real(build_quadrature(("interval", 0.0, 2.0), 32).integrate(np.cos))
        v2 = np.real(build_quadrature(("interval", 0.0, 2.0), 64).integrate(np.cos))
        assert abs(v2 - v1) < 1e-10

    def test_weights_positive_and_measure(self):
        for domain, measure in [
            (("interval", -1.0, 1.0), 2.0),
            (("interval", 0.0, 3.0), 3.0),
            (("line", 12.0), 24.0),
            (("periodic", 2 * math.pi), 2 * math.pi),
        ]:
            rule = build_quadrature(domain, 24)
            assert np.all(rule.weights > 0)
            assert np.sum(rule.weights) == pytest.approx(measure, abs=1e-12)

    def test_periodic_fourier_exactness(self):
        rule = build_quadrature(("periodic", 2 * math.pi), 32)
        for m in range(1, 16):
            val = rule.integrate(lambda t, m=m: np.exp(1j * m * t))
            assert abs(val) < 1e-13

    def test_line_rule_hyperbolic_weight(self):
        # the (1 - zeta^2)^(-3/2) weight rewritten in the rapidity variable
        rule = build_quadrature(("line", 12.0), 24)
        val = np.real(rule.integrate(lambda b: np.cosh(b) / np.cosh(b) ** 3))
        assert val == pytest.approx(2.0, abs=1e-12)  # integral of sech^2

    def test_adaptive_line_gaussian(self):
        val = integrate_line_adaptive(lambda x: np.exp(-(x**2)), tail_tol=1e-12)
        assert val == pytest.approx(math.sqrt(math.pi), abs=1e-10)

    def test_adaptive_line_tail_failure(self):
        with pytest.raises(ConvergenceError):
            integrate_line_adaptive(lambda x: np.ones_like(x), tail_tol=1e-10, max_cutoff=32.0)

    def test_bad_order(self):
        with pytest.raises(DomainError):
            build_quadrature(("interval", 0.0, 1.0), 0)
