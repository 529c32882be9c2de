import numpy as np
import pytest

from specpick.errors import OrderCapError
from specpick.funcalc import (
    HoloFn,
    apply,
    hermite_interpolant,
    nilpotent_combo_minpoly,
    ord_of_vanishing,
    predicted_minpoly,
)
from specpick.matrixspec import (
    JordanSpec,
    SpectralData,
    eigen_multiset,
    jordan_to_matrix,
    minimal_polynomial,
)
from specpick.polyalg import ComplexPolynomial
from specpick.sampling import oracle_case, random_blaschke, random_jordan_spec


def t_squared():
    return HoloFn.from_polynomial([0, 0, 1])


class TestHoloFn:
    def test_blaschke_evaluation_and_jets(self):
        f = HoloFn.from_blaschke([(0.5, 2), (-0.3, 1)])
        z = 0.2 + 0.1j
        direct = ((z - 0.5) / (1 - 0.5 * z)) ** 2 * ((z + 0.3) / (1 + 0.3 * z))
        assert abs(f(z) - direct) <= 1e-14
        # jets at a double zero vanish exactly through order 1
        jets = f.jet(0.5, 3)
        assert jets[0] == 0 and jets[1] == 0 and abs(jets[2]) > 0

    def test_derivative_matches_rational_route(self):
        f = HoloFn.from_blaschke([(0.4, 1), (0.1j, 2)])
        fp = f.derivative()
        r = f.as_rational().derivative()
        for z in (0.0, 0.3, -0.2 + 0.4j):
            assert abs(fp(z) - r(z)) <= 1e-11

    def test_scaled_and_composed(self):
        f = HoloFn.from_polynomial([0, 1]).scaled(0.5)  # z/2
        g = f.compose_automorphism(0.3)
        z = 0.2
        assert abs(g(z) - 0.5 * (z - 0.3) / (1 - 0.3 * z)) <= 1e-14
        series = g.taylor_at(0.1, 8)
        h = 0.02
        approx = sum(series[k] * h**k for k in range(9))
        assert abs(approx - g(0.1 + h)) <= 1e-12

    def test_algebra(self):
        f = HoloFn.from_polynomial([0, 1])
        g = HoloFn.from_polynomial([0.2, 0, 0.1])
        z = 0.3 - 0.2j
        assert abs((f + g)(z) - (f(z) + g(z))) <= 1e-14
        assert abs((f * g)(z) - f(z) * g(z)) <= 1e-14

    def test_is_constant(self):
        assert HoloFn.constant(0.3).is_constant()
        assert not HoloFn.identity().is_constant()
        assert not HoloFn.from_blaschke([(0.2, 1)]).is_constant()


class TestHermiteInterpolant:
    def test_single_simple_node_gives_constant(self):
        f = HoloFn.from_blaschke([(0.3, 2)])
        p = hermite_interpolant(f, SpectralData([(0.2, 1)]))
        assert p.degree == 0
        assert abs(p.coeffs[0] - f(0.2)) <= 1e-14

    def test_identity_jets(self):
        p = hermite_interpolant(HoloFn.identity(), SpectralData([(0.1, 2), (0.4, 1)]))
        assert np.array_equal(p.coeffs, np.array([0.0 + 0j, 1.0 + 0j]))

    def test_square_jets_force_square(self):
        p = hermite_interpolant(t_squared(), SpectralData([(0.0, 3)]))
        assert np.allclose(p.coeffs, [0, 0, 1])

    def test_blaschke_interpolant_matches_jets(self):
        f = HoloFn.from_blaschke([(0.5, 1), (-0.2, 1)])
        data = SpectralData([(0.1, 2), (-0.4, 2)])
        p = hermite_interpolant(f, data)
        assert p.degree < 4
        for lam, m in data.entries:
            jets_f = f.jet(lam, m)
            jets_p = HoloFn.from_polynomial(p).jet(lam, m)
            assert np.allclose(jets_f, jets_p, atol=1e-11)


class TestApply:
    def test_identity_returns_argument_exactly(self):
        A = jordan_to_matrix(JordanSpec([(0.3, [2]), (0.1j, [1])]))
        assert np.array_equal(apply(HoloFn.identity(), A), A)

    def test_square_of_jordan_block(self):
        N = jordan_to_matrix(JordanSpec([(0.0, [3])]))
        assert np.allclose(apply(t_squared(), JordanSpec([(0.0, [3])])), N @ N)

    def test_minimal_blaschke_annihilates(self):
        f = HoloFn.from_blaschke([(0.0, 1), (0.5, 1)])
        A = np.diag([0.0, 0.5]).astype(complex)
        assert np.max(np.abs(apply(f, A))) <= 1e-12

    def test_spectrum_outside_disc_rejected(self):
        with pytest.raises(ValueError):
            apply(HoloFn.identity(), np.diag([1.5, 0.0]).astype(complex))


class TestNilpotentCombination:
    def test_all_zero_tail(self):
        assert nilpotent_combo_minpoly([0.3, 0, 0, 0]).entries == ((0.3 + 0j, 1),)

    def test_two_step_case(self):
        assert nilpotent_combo_minpoly([0, 0, 0.5, 0.1]).entries == ((0j, 2),)

    def test_first_index_drives_full_exponent(self):
        assert nilpotent_combo_minpoly([0, 0.2, 0, 0, 0]).entries == ((0j, 5),)
        # cross-check on the explicit matrix
        N = jordan_to_matrix(JordanSpec([(0.0, [5])]))
        A = 0.2 * N
        assert minimal_polynomial(A).entries == ((0j, 5),)

    def test_formula_matches_rank_oracle_random(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            n = int(rng.integers(2, 7))
            alphas = np.zeros(n, dtype=complex)
            alphas[0] = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
            ell = int(rng.integers(1, n + 1))
            if ell < n:
                alphas[ell] = 0.5
                for j in range(ell + 1, n):
                    if rng.random() < 0.5:
                        alphas[j] = complex(rng.normal(), rng.normal())
            predicted = nilpotent_combo_minpoly(alphas)
            N = jordan_to_matrix(JordanSpec([(0.0, [n])]))
            A = sum(
                alphas[j] * np.linalg.matrix_power(N, j) for j in range(n)
            ) + 0j * np.eye(n)
            assert predicted.matches(minimal_polynomial(A), 1e-8)


class TestOrdOfVanishing:
    def test_polynomial_cases(self):
        assert ord_of_vanishing(t_squared(), 0.0) == 2
        assert ord_of_vanishing(t_squared(), 0.5) == 0

    def test_blaschke_derivative_drops_multiplicity(self):
        b = HoloFn.from_blaschke([(0.0, 2)])
        assert ord_of_vanishing(b.derivative(), 0.0) == 1

    def test_cap_overflow(self):
        c = np.zeros(66)
        c[65] = 1.0
        with pytest.raises(OrderCapError):
            ord_of_vanishing(HoloFn.from_polynomial(c), 0.0)


class TestPredictedMinpoly:
    def test_identity_preserves_data(self):
        data = SpectralData([(0.2, 3), (0.5, 1)])
        assert predicted_minpoly(HoloFn.identity(), data).matches(data, 1e-12)

    def test_square_on_triple_zero(self):
        got = predicted_minpoly(t_squared(), SpectralData([(0.0, 3)]))
        assert got.entries == ((0j, 2),)
        N = jordan_to_matrix(JordanSpec([(0.0, [3])]))
        assert minimal_polynomial(N @ N).matches(got, 1e-9)

    def test_degree_one_blaschke_keeps_exponent(self):
        got = predicted_minpoly(
            HoloFn.from_blaschke([(0.0, 1)]), SpectralData([(0.0, 2)])
        )
        assert got.entries == ((0j, 2),)

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            predicted_minpoly(HoloFn.constant(0.2), SpectralData([(0.1, 1)]))

    def test_jordan_block_formula(self):
        # exponent floor((n-1)/(ord f' + 1)) + 1 on a single block
        rng = np.random.default_rng(32)
        for _ in range(20):
            n = int(rng.integers(2, 8))
            lam = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
            if abs(lam) >= 0.8:
                continue
            mult = int(rng.integers(1, 4))
            f = HoloFn.from_blaschke([(lam, mult)])
            ordv = ord_of_vanishing(f.derivative(), lam)
            assert ordv == mult - 1
            expected = (n - 1) // (ordv + 1) + 1
            got = minimal_polynomial(apply(f, JordanSpec([(lam, [n])])))
            assert got.entries[0][1] == expected

    def test_direct_sum_driven_by_largest_block(self):
        lam = 0.25
        f = HoloFn.from_blaschke([(lam, 2)])
        spec = JordanSpec([(lam, [1, 2, 5])])
        got = minimal_polynomial(apply(f, spec))
        expected = (5 - 1) // 2 + 1
        assert got.entries[0][1] == expected


class TestOracleEquivalence:
    def test_predicted_matches_computed_quick(self):
        rng = np.random.default_rng(99)
        for _ in range(40):
            spec, f = oracle_case(rng)
            predicted = predicted_minpoly(f, spec.spectral_data())
            computed = minimal_polynomial(apply(f, spec))
            assert predicted.matches(computed, 1e-6), (spec.blocks, f.kind)

    def test_spectral_mapping_quick(self):
        rng = np.random.default_rng(100)
        for _ in range(25):
            spec = random_jordan_spec(rng, max_n=6)
            f = random_blaschke(rng, max_degree=3).as_holo()
            A = jordan_to_matrix(spec)
            images = sorted(
                (f(lam) for lam in eigen_multiset(A).expanded()),
                key=lambda z: (z.real, z.imag),
            )
            got = sorted(
                eigen_multiset(apply(f, spec)).expanded(),
                key=lambda z: (z.real, z.imag),
            )
            assert len(images) == len(got)
            assert all(abs(a - b) <= 1e-7 for a, b in zip(images, got))
