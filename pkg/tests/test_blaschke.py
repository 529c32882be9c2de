import numpy as np
import pytest

from specpick.blaschke import (
    BlaschkeProduct,
    apply_to_matrix,
    as_rational,
    minimal_blaschke,
    preimage,
)
from specpick.funcalc import ord_of_vanishing
from specpick.matrixspec import (
    JordanSpec,
    SpectralData,
    eigen_multiset,
    jordan_to_matrix,
    minimal_polynomial,
)
from specpick.sampling import random_blaschke, random_jordan_spec


class TestConstruction:
    def test_single_zero_at_origin(self):
        b = minimal_blaschke(SpectralData([(0.0, 1)]))
        for t in (0.3, -0.5j, 0.9):
            assert b(t) == t

    def test_double_zero(self):
        b = minimal_blaschke(SpectralData([(0.0, 2)]))
        assert b(0.4) == pytest.approx(0.16)

    def test_rejects_zero_outside_disc(self):
        with pytest.raises(ValueError):
            BlaschkeProduct([(1.0, 1)])

    def test_degree_three_boundary_modulus(self):
        b = minimal_blaschke(SpectralData([(0.5, 1), (-0.3, 2)]))
        assert b.degree == 3
        theta = np.linspace(0, 2 * np.pi, 32, endpoint=False)
        assert np.max(np.abs(np.abs(b(np.exp(1j * theta))) - 1)) <= 1e-12


class TestRationalForm:
    def test_identity_factor(self):
        r = as_rational(BlaschkeProduct([(0.0, 1)]))
        assert np.allclose(r.num.coeffs, [0, 1]) and np.allclose(r.den.coeffs, [1])

    def test_single_generic_factor(self):
        lam = 0.3 - 0.2j
        r = as_rational(BlaschkeProduct([(lam, 1)]))
        assert np.allclose(r.num.coeffs, [-lam, 1])
        assert np.allclose(r.den.coeffs, [1, -np.conj(lam)])

    def test_expanded_agrees_with_factored(self):
        b = BlaschkeProduct([(0.5, 2)])
        r = as_rational(b)
        zs = 0.77 * np.exp(1j * np.linspace(0, 6.0, 50))
        assert np.max(np.abs(r(zs) - b(zs))) <= 1e-12
        assert r.num.degree == 2 and abs(r.den(0)) > 0

    def test_monic_numerator_full_degree(self):
        b = random_blaschke(np.random.default_rng(3), max_degree=5)
        r = as_rational(b)
        assert r.num.degree == b.degree
        assert abs(r.num.coeffs[-1] - 1) <= 1e-12


class TestPreimage:
    def test_identity_product(self):
        b = BlaschkeProduct([(0.0, 1)])
        w = 0.3 - 0.4j
        assert preimage(b, w).entries == ((w, 1),)

    def test_square_roots(self):
        b = BlaschkeProduct([(0.0, 2)])
        got = preimage(b, 0.25)
        assert got.multiplicity_of(0.5, 1e-9) == 1
        assert got.multiplicity_of(-0.5, 1e-9) == 1

    def test_critical_value(self):
        b = BlaschkeProduct([(0.0, 2)])
        assert preimage(b, 0.0).entries == ((0j, 2),)

    def test_degree_conservation_random(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            b = random_blaschke(rng, max_degree=6)
            w = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
            if abs(w) >= 1:
                continue
            got = preimage(b, w)
            assert got.total() == b.degree
            for root in got.roots():
                assert abs(root) < 1.0
                assert abs(b(root) - w) <= 1e-8

    def test_target_outside_closed_disc_rejected(self):
        with pytest.raises(ValueError):
            preimage(BlaschkeProduct([(0.0, 1)]), 1.5)


class TestMatrixApplication:
    def test_annihilation_of_own_matrix(self):
        rng = np.random.default_rng(21)
        for _ in range(15):
            spec = random_jordan_spec(rng, max_n=6, eig_radius=0.8)
            A = jordan_to_matrix(spec)
            S = np.eye(A.shape[0]) + 0.2 * (
                rng.normal(size=A.shape) + 1j * rng.normal(size=A.shape)
            )
            A = S @ A @ np.linalg.inv(S)
            b = minimal_blaschke(minimal_polynomial(A))
            scale = max(np.linalg.norm(A), 1.0)
            assert np.linalg.norm(apply_to_matrix(b, A)) <= 1e-8 * scale

    def test_identity_product_returns_matrix(self):
        A = jordan_to_matrix(JordanSpec([(0.4, [2])]))
        b = BlaschkeProduct([(0.0, 1)])
        assert np.allclose(apply_to_matrix(b, A), A)

    def test_spectral_mapping_instance(self):
        b = BlaschkeProduct([(0.0, 2)])
        got = apply_to_matrix(b, jordan_to_matrix(JordanSpec([(0.4, [2])])))
        eigs = eigen_multiset(got)
        assert eigs.multiplicity_of(0.16, 1e-8) == 2


class TestDerivativeOrder:
    def test_derivative_drops_multiplicity_by_one(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            b = random_blaschke(rng, max_degree=6)
            holo = b.as_holo()
            bprime = holo.derivative()
            for zero, mult in b.factors:
                if mult >= 2:
                    assert ord_of_vanishing(bprime, zero) == mult - 1
