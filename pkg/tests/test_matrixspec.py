import numpy as np
import pytest

from specpick.matrixspec import (
    JordanSpec,
    SpectralData,
    characteristic_polynomial,
    companion,
    eigen_multiset,
    in_spectral_unit_ball,
    is_nonderogatory,
    jordan_to_matrix,
    minimal_polynomial,
)
from specpick.polyalg import ComplexPolynomial


def nilpotent(n):
    return jordan_to_matrix(JordanSpec([(0.0, [n])]))


class TestCharacteristicPolynomial:
    def test_identity(self):
        p = characteristic_polynomial(np.eye(2, dtype=complex))
        assert np.allclose(p.coeffs, [1, -2, 1])

    def test_nilpotent(self):
        p = characteristic_polynomial(nilpotent(3))
        assert p.degree == 3
        assert np.allclose(p.coeffs[:3], 0) and p.coeffs[3] == 1

    def test_companion_cofactor_expansion(self):
        # det(tI - C_p) expanded by cofactors for p = t^4 - 0.5 t + 0.25
        p = ComplexPolynomial([0.25, -0.5, 0, 0, 1])
        assert np.allclose(characteristic_polynomial(companion(p)).coeffs, p.coeffs,
                           atol=1e-12)

    def test_companion_roundtrip_random(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            deg = int(rng.integers(1, 7))
            c = np.append(rng.normal(size=deg) + 1j * rng.normal(size=deg), 1.0)
            p = ComplexPolynomial(c)
            assert np.allclose(
                characteristic_polynomial(companion(p)).coeffs, p.coeffs, atol=1e-9
            )


class TestEigenMultiset:
    def test_diagonal(self):
        got = eigen_multiset(np.diag([0.1, 0.2]).astype(complex))
        assert got.multiplicity_of(0.1, 1e-9) == 1
        assert got.multiplicity_of(0.2, 1e-9) == 1

    def test_jordan_block(self):
        got = eigen_multiset(jordan_to_matrix(JordanSpec([(0.4, [3])])))
        assert got.entries == ((0.4 + 0j, 3),) or got.multiplicity_of(0.4, 1e-7) == 3

    def test_companion_of_factored(self):
        p = ComplexPolynomial.from_roots([(0.5, 2), (-0.3, 1), (0.1, 1)])
        got = eigen_multiset(companion(p))
        assert got.multiplicity_of(0.5, 1e-7) == 2
        assert got.multiplicity_of(-0.3, 1e-7) == 1
        assert got.multiplicity_of(0.1, 1e-7) == 1


class TestMinimalPolynomial:
    def test_identity(self):
        data = minimal_polynomial(np.eye(4, dtype=complex))
        assert data.entries == ((1 + 0j, 1),)

    def test_two_step_nilpotent_combination(self):
        # alpha N^2 for n = 4: minimal polynomial t^2
        N = nilpotent(4)
        A = 0.7 * N @ N
        data = minimal_polynomial(A)
        assert data.entries == ((0j, 2),)

    def test_jordan_pair_same_eigenvalue(self):
        A = jordan_to_matrix(JordanSpec([(0.3, [1, 2])]))
        data = minimal_polynomial(A)
        assert len(data.entries) == 1
        lam, m = data.entries[0]
        assert abs(lam - 0.3) <= 1e-8 and m == 2
        assert np.allclose((A - 0.3 * np.eye(3)) @ (A - 0.3 * np.eye(3)), 0)

    def test_jordan_spec_is_exact(self):
        spec = JordanSpec([(0.2, [1, 2]), (-0.4, [1])])
        assert minimal_polynomial(spec).entries == ((-0.4 + 0j, 1), (0.2 + 0j, 2))

    def test_roundtrip_through_matrix(self):
        spec = JordanSpec([(0.2, [1, 2]), (-0.4, [1])])
        data = minimal_polynomial(jordan_to_matrix(spec))
        assert data.matches(SpectralData([(0.2, 2), (-0.4, 1)]), 1e-8)

    def test_largest_block_property_random(self):
        rng = np.random.default_rng(77)
        for _ in range(40):
            n = int(rng.integers(2, 9))
            blocks = []
            eigs = []
            remaining = n
            while remaining > 0:
                total = int(rng.integers(1, remaining + 1))
                sizes = []
                t = total
                while t > 0:
                    s = int(rng.integers(1, t + 1))
                    sizes.append(s)
                    t -= s
                while True:
                    lam = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
                    if abs(lam) < 0.8 and all(abs(lam - e) > 0.3 for e in eigs):
                        break
                eigs.append(lam)
                blocks.append((lam, sizes))
                remaining -= total
            spec = JordanSpec(blocks)
            got = minimal_polynomial(jordan_to_matrix(spec))
            expected = spec.spectral_data()
            assert got.matches(expected, 1e-7), (spec.blocks, got.entries)

    def test_minimal_divides_characteristic(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            spec = JordanSpec(
                [(complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)), [2, 1])]
            )
            A = jordan_to_matrix(spec)
            alg = eigen_multiset(A)
            mp = minimal_polynomial(A)
            for lam, m in mp.entries:
                assert m <= alg.multiplicity_of(lam, 1e-6)

    def test_similarity_invariance(self):
        rng = np.random.default_rng(14)
        spec = JordanSpec([(0.5, [2, 3]), (-0.2 + 0.1j, [1])])
        A = jordan_to_matrix(spec)
        expected = spec.spectral_data()
        done = 0
        while done < 10:
            S = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
            if np.linalg.cond(S) > 100:
                continue
            As = S @ A @ np.linalg.inv(S)
            assert minimal_polynomial(As).matches(expected, 1e-6)
            done += 1


class TestJordanToMatrix:
    def test_single_entry(self):
        m = jordan_to_matrix(JordanSpec([(0.3 + 0.1j, [1])]))
        assert m.shape == (1, 1) and m[0, 0] == 0.3 + 0.1j

    def test_nilpotent_shape(self):
        N = nilpotent(4)
        assert np.allclose(np.diag(N, -1), 1.0)
        assert np.count_nonzero(N) == 3
        P = np.linalg.matrix_power(N, 4)
        assert np.allclose(P, 0)

    def test_distinct_eigenvalues_required(self):
        with pytest.raises(ValueError):
            JordanSpec([(0.1, [1]), (0.1, [2])])


class TestCompanion:
    def test_linear(self):
        m = companion(ComplexPolynomial([-0.4, 1]))
        assert m.shape == (1, 1) and m[0, 0] == pytest.approx(0.4)

    def test_quadratic_layout(self):
        # t^2 + a1 t + a2 -> [[0, -a2], [1, -a1]]
        a1, a2 = 0.3 - 0.1j, -0.2
        m = companion(ComplexPolynomial([a2, a1, 1]))
        assert m[0, 0] == 0 and m[1, 0] == 1
        assert m[0, 1] == -a2 and m[1, 1] == -a1

    def test_rejects_non_monic(self):
        with pytest.raises(ValueError):
            companion(ComplexPolynomial([1, 2]))


class TestPredicates:
    def test_nonderogatory_jordan_block(self):
        assert is_nonderogatory(jordan_to_matrix(JordanSpec([(0.2, [5])])))

    def test_nonderogatory_fails_for_nilpotent_combination(self):
        for n in (4, 5, 6):
            N = nilpotent(n)
            A = 0.5 * np.linalg.matrix_power(N, n - 2)
            assert not is_nonderogatory(A)

    def test_nonderogatory_distinct_diagonal(self):
        assert is_nonderogatory(np.diag([0.1, 0.5, -0.3]).astype(complex))

    def test_unit_ball_membership(self):
        assert in_spectral_unit_ball(np.zeros((3, 3), dtype=complex))
        assert not in_spectral_unit_ball(np.diag([1.0, 0.0]).astype(complex))
        assert in_spectral_unit_ball(jordan_to_matrix(JordanSpec([(0.99, [4])])))
        assert not in_spectral_unit_ball(
            jordan_to_matrix(JordanSpec([(0.99, [4])])), margin=0.02
        )
