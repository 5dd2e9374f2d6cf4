import math

import numpy as np
import pytest
from scipy.linalg import expm

from covstark.errors import (
    DomainError,
    FrameRecoveryError,
    OutOfRMSError,
    SingularFrameError,
)
from covstark.lorentz import (
    GENERATOR_PAIRS,
    METRIC,
    STANDARD_FRAME_VECTOR,
    FrameParams,
    RMSPoint,
    _exp_generator,
    algebra_action,
    classical_generator_action,
    covariant_frame_derivative,
    frame_matrix,
    frame_matrix_exponential,
    frame_matrix_inverse,
    frame_params_from_vector,
    frame_vector,
    generator_action,
    little_group_matrix,
    lorentz_generators,
    minkowski_dot,
    rms_inverse,
    rms_map,
    s_matrices,
    s_matrices_mixed,
)

RNG = np.random.default_rng(1234)


def random_params(alpha_max=2.0):
    return FrameParams(
        RNG.uniform(-alpha_max, alpha_max),
        RNG.uniform(-1.4, 1.4),
        RNG.uniform(0.0, 2 * math.pi),
    )


def random_lorentz():
    gens = [generator_action(pair) for pair in GENERATOR_PAIRS]
    coeffs = RNG.uniform(-0.6, 0.6, size=6)
    return expm(sum(c * g for c, g in zip(coeffs, gens)))


class TestFrameMatrix:
    def test_identity_at_origin(self):
        assert np.allclose(frame_matrix(FrameParams(0, 0, 0)), np.eye(4), atol=1e-15)

    def test_pure_boost_entries(self):
        lt = frame_matrix(FrameParams(0.5, 0, 0))
        assert lt[0, 0] == pytest.approx(1.127626, abs=5e-7)
        assert lt[0, 3] == pytest.approx(0.521095, abs=5e-7)
        assert lt[3, 0] == pytest.approx(math.sinh(0.5), abs=1e-12)

    def test_matches_product_of_exponentials(self):
        for _ in range(20):
            p = random_params()
            assert np.max(np.abs(frame_matrix(p) - frame_matrix_exponential(p))) < 1e-12

    def test_metric_orthogonality(self):
        for _ in range(100):
            lt = frame_matrix(random_params())
            assert np.max(np.abs(lt.T @ METRIC @ lt - METRIC)) < 1e-12

    def test_inverse_identity_and_plain_transpose_fails(self):
        # the inverse is the metric adjoint; the plain transpose is not an
        # inverse once a boost is present (recorded convention)
        p = FrameParams(0.8, 0.4, 1.0)
        lt = frame_matrix(p)
        assert np.max(np.abs(frame_matrix_inverse(p) @ lt - np.eye(4))) < 1e-12
        assert np.max(np.abs(lt.T @ lt - np.eye(4))) > 0.1


class TestFrameVector:
    def test_standard_at_origin(self):
        assert np.allclose(frame_vector(FrameParams(0, 0, 0)), [0, 0, 0, 1])

    def test_unit_spacelike_norm(self):
        for _ in range(50):
            n = frame_vector(random_params())
            assert minkowski_dot(n, n) == pytest.approx(1.0, abs=1e-12)

    def test_pure_boost_components(self):
        n = frame_vector(FrameParams(0.5, 0, 0))
        assert np.allclose(n, [math.sinh(0.5), 0, 0, math.cosh(0.5)], atol=1e-14)

    def test_equals_last_column(self):
        for _ in range(20):
            p = random_params()
            assert np.array_equal(frame_vector(p), frame_matrix(p) @ STANDARD_FRAME_VECTOR)

    def test_recovery_round_trip(self):
        for _ in range(50):
            p = random_params()
            p2 = frame_params_from_vector(frame_vector(p))
            assert np.allclose(
                [p.alpha, p.omega, p.gamma], [p2.alpha, p2.omega, p2.gamma], atol=1e-9
            )

    def test_recovery_rejects_non_unit(self):
        with pytest.raises(FrameRecoveryError):
            frame_params_from_vector(np.array([0.0, 0.0, 0.0, 2.0]))


class TestGenerators:
    def test_m01_entries(self):
        m01 = lorentz_generators()[(0, 1)]
        assert m01[0, 1] == -1.0
        assert m01[1, 0] == 1.0
        m01[0, 1] = m01[1, 0] = 0.0
        assert np.array_equal(m01, np.zeros((4, 4)))

    def test_antisymmetry(self):
        for m in lorentz_generators().values():
            assert np.array_equal(m, -m.T)

    def test_commutator_table(self):
        # explicit matrix-multiplication oracle for the algebra relations
        gens = lorentz_generators()
        act = {pair: gens[pair] @ METRIC for pair in gens}  # upper-pair action form
        g = np.diag(METRIC)

        def act_any(e1, e2):
            if e1 == e2:
                return np.zeros((4, 4))
            return act[(e1, e2)] if (e1, e2) in act else -act[(e2, e1)]

        for (a, b), ma in act.items():
            for (c, d), mc in act.items():
                comm = ma @ mc - mc @ ma
                expect = (
                    (g[b] if b == c else 0.0) * act_any(a, d)
                    + (g[a] if a == d else 0.0) * act_any(b, c)
                    - (g[a] if a == c else 0.0) * act_any(b, d)
                    - (g[b] if b == d else 0.0) * act_any(a, c)
                )
                assert np.array_equal(comm, expect), ((a, b), (c, d))

    def test_lowered_pair_action_on_vectors(self):
        # (M_ab) n = delta_a n_b - delta_b n_a component pattern
        n = frame_vector(FrameParams(0.3, 0.2, 0.9))
        n_low = METRIC @ n
        for a, b in GENERATOR_PAIRS:
            dn = generator_action((a, b)) @ n
            expect = np.zeros(4)
            expect[a] = n_low[b]
            expect[b] = -n_low[a]
            assert np.allclose(dn, expect, atol=1e-14)


class TestLittleGroup:
    def test_identity(self):
        p = random_params()
        assert np.max(np.abs(little_group_matrix(np.eye(4), p) - np.eye(4))) < 1e-12

    def test_rotation_about_axis1(self):
        for _ in range(10):
            p = random_params(alpha_max=1.0)
            rot = expm(RNG.uniform(-2, 2) * generator_action((2, 3)))
            d = little_group_matrix(rot, p)
            assert np.max(np.abs(d - np.eye(4))) < 1e-10

    def test_stabilizes_standard_vector(self):
        for _ in range(50):
            d = little_group_matrix(random_lorentz(), random_params(alpha_max=1.0))
            assert np.max(np.abs(d @ STANDARD_FRAME_VECTOR - STANDARD_FRAME_VECTOR)) < 1e-10

    def test_o21_block_structure(self):
        d = little_group_matrix(random_lorentz(), random_params(alpha_max=1.0))
        assert np.max(np.abs(d[3, :3])) < 1e-10
        assert np.max(np.abs(d[:3, 3])) < 1e-10
        assert d[3, 3] == pytest.approx(1.0, abs=1e-10)

    def test_rejects_non_lorentz(self):
        with pytest.raises(DomainError):
            little_group_matrix(np.diag([2.0, 1.0, 1.0, 1.0]), random_params())

    def test_chart_boundary_raises(self):
        # rotate the standard frame vector into the omega = -pi/2 pole
        rot = expm((math.pi / 2) * generator_action((1, 3)))
        with pytest.raises(FrameRecoveryError):
            little_group_matrix(rot, FrameParams(0, 0, 0))


class TestSMatrices:
    def test_antisymmetry(self):
        for _ in range(20):
            for s in s_matrices(random_params()):
                assert np.max(np.abs(s + s.T)) < 1e-9

    def test_finite_difference_oracle(self):
        # central differences of the frame matrix through the chart, h = 1e-6
        h = 1e-6
        for p in [FrameParams(0, 0, 0), random_params(alpha_max=1.0)]:
            jac = np.zeros((4, 3))
            names = ("alpha", "omega", "gamma")
            derivs = []
            for j, name in enumerate(names):
                kw = {"alpha": p.alpha, "omega": p.omega, "gamma": p.gamma}
                kw[name] += h
                up_m = frame_matrix(FrameParams(**kw))
                up_n = frame_vector(FrameParams(**kw))
                kw[name] -= 2 * h
                dn_m = frame_matrix(FrameParams(**kw))
                dn_n = frame_vector(FrameParams(**kw))
                derivs.append((up_m - dn_m) / (2 * h))
                jac[:, j] = (up_n - dn_n) / (2 * h)
            pinv = np.linalg.pinv(jac)
            linv = frame_matrix_inverse(p)
            expect = [
                METRIC @ (linv @ sum(pinv[j, mu] * derivs[j] for j in range(3)))
                for mu in range(4)
            ]
            got = s_matrices(p)
            for mu in range(4):
                assert np.max(np.abs(got[mu] - expect[mu])) < 1e-6

    def test_covariant_derivative_annihilates_mapped_functions(self):
        p = FrameParams(0.5, -0.3, 2.0)
        y = np.array([0.2, -0.7, 0.4, 1.1])

        def mapped_square(pp, yy):
            x = frame_matrix(pp) @ yy
            return minkowski_dot(x, x)

        assert np.max(np.abs(covariant_frame_derivative(mapped_square, p, y))) < 1e-6
        for sigma in range(4):
            def component(pp, yy, s=sigma):
                return float((frame_matrix(pp) @ yy)[s])

            assert np.max(np.abs(covariant_frame_derivative(component, p, y))) < 1e-6

    def test_singular_chart_raises(self):
        with pytest.raises(SingularFrameError):
            s_matrices(FrameParams(0.2, math.pi / 2 - 1e-10, 0.5))


class TestGeneratorAction:
    def test_rotation_pair_at_origin(self):
        p = FrameParams(0, 0, 0)
        y = np.array([0.1, 0.2, 0.3, 0.4])
        dn, _ = classical_generator_action((2, 3), p, y)
        assert np.array_equal(dn, generator_action((2, 3)) @ frame_vector(p))

    def test_finite_difference_flow(self):
        eps = 1e-6
        y = np.array([0.3, -0.2, 0.8, 1.3])
        for pair in GENERATOR_PAIRS:
            p = random_params(alpha_max=1.0)
            dn, dy = classical_generator_action(pair, p, y)
            gen = generator_action(pair)
            outs = {}
            for sgn in (+1, -1):
                lam = np.eye(4) + sgn * eps * gen
                n2 = lam @ frame_vector(p)
                p2 = frame_params_from_vector(n2, tol=1e-6)
                outs[sgn] = (n2, frame_matrix_inverse(p2) @ lam @ frame_matrix(p) @ y)
            assert np.max(np.abs((outs[1][0] - outs[-1][0]) / (2 * eps) - dn)) < 1e-5
            assert np.max(np.abs((outs[1][1] - outs[-1][1]) / (2 * eps) - dy)) < 1e-5

    def test_closure_under_bracket(self):
        # nested finite differences: the field bracket equals minus the
        # action of the matrix commutator
        eps = 1e-4
        p = FrameParams(0.4, -0.3, 1.1)
        y = np.array([0.3, -0.2, 0.8, 1.3])
        a = generator_action((0, 1))
        b = generator_action((1, 3))

        def flow(gen, sgn):
            lam = expm(sgn * eps * gen)
            n2 = lam @ frame_vector(p)
            p2 = frame_params_from_vector(n2)
            return p2, frame_matrix_inverse(p2) @ lam @ frame_matrix(p) @ y

        def field(gen, pp, yy):
            dn, dy = algebra_action(gen, pp, yy)
            return np.concatenate([dn, dy])

        def directional(gen_flow, gen_field):
            pp, yp = flow(gen_flow, +1)
            pm, ym = flow(gen_flow, -1)
            return (field(gen_field, pp, yp) - field(gen_field, pm, ym)) / (2 * eps)

        bracket = directional(a, b) - directional(b, a)
        dn_c, dy_c = algebra_action(a @ b - b @ a, p, y)
        assert np.max(np.abs(bracket + np.concatenate([dn_c, dy_c]))) < 1e-5


class TestRMS:
    def test_pole_kills_hyperbolic_dependence(self):
        assert np.allclose(rms_map(RMSPoint(1.0, 0.0, 0.3, 1.0)), [0, 0, 0, 1], atol=1e-15)

    def test_equatorial_point(self):
        assert np.allclose(rms_map(RMSPoint(2.0, math.pi / 2, 0.0, 0.0)), [0, 2, 0, 0], atol=1e-15)

    def test_round_trip(self):
        for _ in range(1000):
            pt = RMSPoint(
                RNG.uniform(0.1, 5.0),
                RNG.uniform(0.05, math.pi - 0.05),
                RNG.uniform(-3.0, 3.0),
                RNG.uniform(0.0, 2 * math.pi),
            )
            back = rms_inverse(rms_map(pt))
            assert abs(back.rho - pt.rho) < 1e-10 * max(1.0, pt.rho)
            assert abs(back.theta - pt.theta) < 1e-10
            assert abs(back.beta - pt.beta) < 1e-9
            assert abs((back.phi - pt.phi + math.pi) % (2 * math.pi) - math.pi) < 1e-10

    def test_image_satisfies_support_rule(self):
        for _ in range(200):
            y = rms_map(
                RMSPoint(RNG.uniform(0, 3), RNG.uniform(0, math.pi), RNG.uniform(-4, 4), RNG.uniform(0, 2 * math.pi))
            )
            assert y[1] ** 2 + y[2] ** 2 - y[0] ** 2 >= -1e-12

    def test_inverse_rejects_outside(self):
        with pytest.raises(OutOfRMSError):
            rms_inverse(np.array([1.0, 0.1, 0.0, 0.0]))
