import numpy as np
import pytest

from specpick.polyalg import (
    ComplexPolynomial,
    RationalFunction,
    RootMultiset,
    disc_automorphism,
    hausdorff_distance,
    mobius_distance,
    poly_roots,
)


def entries_match(entries, expected, tol=1e-7):
    if len(entries) != len(expected):
        return False
    exp = sorted(expected, key=lambda rm: (complex(rm[0]).real, complex(rm[0]).imag))
    return all(
        abs(r - complex(er)) <= tol and m == em
        for (r, m), (er, em) in zip(entries, exp)
    )


class TestPolyRoots:
    def test_quadratic_exact_factorization(self):
        roots = poly_roots(ComplexPolynomial([-1, 0, 1]))
        assert entries_match(roots.entries, [(1, 1), (-1, 1)])

    def test_repeated_root_at_origin(self):
        roots = poly_roots(ComplexPolynomial([0, 0, 1]))
        assert entries_match(roots.entries, [(0, 2)])

    def test_hand_expanded_cubic(self):
        # (t - 0.5)^2 (t + 0.3) = t^3 - 0.7 t^2 - 0.05 t + 0.075
        p = ComplexPolynomial([0.075, -0.05, -0.7, 1.0])
        roots = poly_roots(p)
        assert entries_match(roots.entries, [(0.5, 2), (-0.3, 1)])
        # recovered roots re-expand to the same coefficients
        q = ComplexPolynomial.from_roots(roots.entries)
        assert np.allclose(q.coeffs, p.coeffs, atol=1e-10)

    def test_rejects_degree_zero_and_zero_polynomial(self):
        with pytest.raises(ValueError):
            poly_roots(ComplexPolynomial([3.0]))
        with pytest.raises(ValueError):
            poly_roots(ComplexPolynomial([]))
        with pytest.raises(ValueError):
            poly_roots(ComplexPolynomial([1, 1]), cluster_tol=0.0)

    def test_multiplicities_sum_to_degree(self):
        roots = poly_roots(ComplexPolynomial.from_roots([(0.2, 3), (-0.5j, 2)]))
        assert roots.total() == 5

    def test_roundtrip_random_factored(self):
        # roots separated far beyond 10x cluster_tol; multiplicities exact
        rng = np.random.default_rng(2024)
        for _ in range(60):
            count = int(rng.integers(1, 6))
            pts = []
            while len(pts) < count:
                z = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
                if abs(z) < 0.9 and all(abs(z - w) >= 0.08 for w in pts):
                    pts.append(z)
            mults = []
            budget = 12
            for i in range(count):
                room = budget - (count - 1 - i)
                mults.append(int(rng.integers(1, min(4, room) + 1)))
                budget -= mults[-1]
            p = ComplexPolynomial.from_roots(zip(pts, mults))
            recovered = poly_roots(p, strict=True)
            assert entries_match(recovered.entries, list(zip(pts, mults)), tol=1e-7)


class TestMobius:
    def test_identity(self):
        assert mobius_distance(0.3 + 0.2j, 0.3 + 0.2j) == 0.0

    def test_collapse_at_origin(self):
        z = 0.4 - 0.1j
        assert mobius_distance(0, z) == pytest.approx(abs(z), abs=1e-15)

    def test_hand_value(self):
        assert mobius_distance(0.5, -0.5) == pytest.approx(0.8, abs=1e-15)

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            mobius_distance(1.0, 0.0)
        with pytest.raises(ValueError):
            mobius_distance(0.0, 1.0 + 0.1j)
        with pytest.raises(ValueError):
            mobius_distance(float("nan"), 0.0)

    def test_metric_axioms_sampled(self):
        rng = np.random.default_rng(5)
        pts = []
        while len(pts) < 40:
            z = complex(rng.uniform(-0.95, 0.95), rng.uniform(-0.95, 0.95))
            if abs(z) < 0.95:
                pts.append(z)
        for _ in range(300):
            a, b, c = rng.choice(pts, 3)
            assert mobius_distance(a, b) == mobius_distance(b, a)
            assert mobius_distance(a, c) <= (
                mobius_distance(a, b) + mobius_distance(b, c) + 1e-12
            )


class TestDiscAutomorphism:
    def test_zero_parameter_is_identity(self):
        for z in (0.3, -0.2 + 0.4j, 0.99j):
            assert disc_automorphism(0, z) == z

    def test_maps_parameter_to_zero(self):
        assert disc_automorphism(0.3 - 0.1j, 0.3 - 0.1j) == 0

    def test_hand_value(self):
        assert disc_automorphism(0.5, 0.7) == pytest.approx(0.2 / 0.65, abs=1e-15)

    def test_inverse_property(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            a = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
            z = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
            if abs(a) >= 0.95 or abs(z) >= 1:
                continue
            w = disc_automorphism(a, z)
            assert abs(disc_automorphism(-a, w) - z) <= 1e-12


class TestHausdorff:
    def test_same_set_is_zero(self):
        s = [0.1, -0.2 + 0.3j, 0.5]
        assert hausdorff_distance(s, s, mobius_distance) == 0.0

    def test_singletons(self):
        z = 0.3 + 0.4j
        assert hausdorff_distance([0], [z], mobius_distance) == pytest.approx(abs(z))

    def test_hand_enumerated(self):
        got = hausdorff_distance([0], [0.5, -0.5], mobius_distance)
        assert got == pytest.approx(0.5, abs=1e-15)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            hausdorff_distance([], [0.1], mobius_distance)

    def test_metric_properties_on_finite_subsets(self):
        rng = np.random.default_rng(7)

        def rand_set():
            k = int(rng.integers(1, 5))
            out = []
            while len(out) < k:
                z = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
                if abs(z) < 0.9:
                    out.append(z)
            return out

        for _ in range(80):
            a, b, c = rand_set(), rand_set(), rand_set()
            dab = hausdorff_distance(a, b, mobius_distance)
            assert dab == hausdorff_distance(b, a, mobius_distance)
            assert dab <= (
                hausdorff_distance(a, c, mobius_distance)
                + hausdorff_distance(c, b, mobius_distance)
                + 1e-9
            )
        # zero iff equal at the clustering tolerance
        s = rand_set()
        perturbed = [z + 1e-12 for z in s]
        assert hausdorff_distance(s, perturbed, mobius_distance) <= 1e-9


class TestPolynomialAlgebra:
    def test_evaluation_and_arithmetic(self):
        p = ComplexPolynomial([1, 2, 3])  # 1 + 2t + 3t^2
        q = ComplexPolynomial([0, 1])
        assert p(2.0) == pytest.approx(17.0)
        assert (p + q)(2.0) == pytest.approx(19.0)
        assert (p * q)(2.0) == pytest.approx(34.0)
        assert (2.5 * q)(2.0) == pytest.approx(5.0)
        assert p.derivative()(1.0) == pytest.approx(8.0)

    def test_taylor_shift_matches_evaluation(self):
        rng = np.random.default_rng(8)
        c = rng.normal(size=7) + 1j * rng.normal(size=7)
        p = ComplexPolynomial(c)
        a = 0.3 - 0.2j
        shifted = p.taylor_at(a, 6)
        for h in (0.1, -0.05 + 0.02j):
            direct = p(a + h)
            via_series = sum(shifted[k] * h**k for k in range(7))
            assert abs(direct - via_series) <= 1e-12

    def test_trim_keeps_leading_coefficient_meaningful(self):
        p = ComplexPolynomial([1.0, 1.0, 1e-18])
        assert p.degree == 1

    def test_rational_derivative_and_taylor(self):
        # B(t) = t / (1 - 0.5 t): B'(t) = 1 / (1 - 0.5 t)^2
        r = RationalFunction(ComplexPolynomial([0, 1]), ComplexPolynomial([1, -0.5]))
        dr = r.derivative()
        z = 0.2 + 0.1j
        expected = 1.0 / (1 - 0.5 * z) ** 2
        assert abs(dr(z) - expected) <= 1e-13
        series = r.taylor_at(0.0, 4)
        # t/(1 - 0.5t) = t + 0.5 t^2 + 0.25 t^3 + ...
        assert np.allclose(series, [0, 1, 0.5, 0.25, 0.125])

    def test_rational_compose_mobius(self):
        r = RationalFunction(ComplexPolynomial([0, 0, 1]), ComplexPolynomial([1]))
        comp = r.compose_mobius(0.4)
        for z in (0.1, -0.3 + 0.2j):
            psi = (z - 0.4) / (1 - 0.4 * z)
            assert abs(comp(z) - psi**2) <= 1e-12

    def test_root_multiset_helpers(self):
        rm = RootMultiset([(0.5, 2), (-0.3, 1)])
        assert rm.total() == 3
        assert rm.expanded() == [-0.3, 0.5, 0.5]
        assert rm.multiplicity_of(0.5 + 1e-9, 1e-7) == 2
        assert rm.multiplicity_of(0.9, 1e-7) == 0
