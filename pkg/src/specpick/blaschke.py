"""Finite Blaschke products: construction from minimal-polynomial data,
evaluation, rational expansion, preimages, and matrix application."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import funcalc
from .matrixspec import JordanSpec, as_matrix
from .polyalg import (
    DEFAULT_CLUSTER_TOL,
    ComplexPolynomial,
    RationalFunction,
    RootMultiset,
    poly_roots,
    require_finite,
)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Product of disc automorphism factors ((t - z)/(1 - conj(z) t))^m.

    All zeros lie strictly inside the unit disc, so the product maps the
    disc into itself and the boundary circle onto itself. There is no
    unimodular prefactor.
    """

    factors: tuple

    def __init__(self, factors):
        norm = []
        for z, m in factors:
            z = require_finite(z, "Blaschke zero")
            m = int(m)
            if abs(z) >= 1.0:
                raise ValueError(f"Blaschke zero {z} not inside the unit disc")
            if m < 1:
                raise ValueError("multiplicities must be positive")
            norm.append((z, m))
        norm.sort(key=lambda zm: (zm[0].real, zm[0].imag))
        object.__setattr__(self, "factors", tuple(norm))
        if not norm:
            raise ValueError("BlaschkeProduct requires at least one factor")

    @property
    def degree(self):
        return sum(m for _, m in self.factors)

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.ones(z.shape, dtype=np.complex128)
        for zero, mult in self.factors:
            out = out * ((z - zero) / (1.0 - np.conj(zero) * z)) ** mult
        return out if out.ndim else complex(out)

    def as_holo(self):
        return funcalc.HoloFn.from_blaschke(self.factors)

    def as_rational(self):
        num = ComplexPolynomial([1.0])
        den = ComplexPolynomial([1.0])
        for zero, mult in self.factors:
            for _ in range(mult):
                num = num * ComplexPolynomial([-zero, 1.0])
                den = den * ComplexPolynomial([1.0, -np.conj(zero)])
        return RationalFunction(num, den)


def minimal_blaschke(data):
    """The Blaschke product whose zeros are the minimal-polynomial data."""
    return BlaschkeProduct(data.entries)


def as_rational(product):
    """Expanded numerator/denominator form P/Q with monic P of full degree."""
    return product.as_rational()


def preimage(product, w, cluster_tol=DEFAULT_CLUSTER_TOL):
    """All solutions of B(t) = w in the closed disc, with multiplicity.

    Solves P - w Q = 0 on the expanded form; the leading coefficient cannot
    vanish for |w| <= 1, so exactly deg B points return.
    """
    w = require_finite(w, "target value")
    if abs(w) > 1.0 + 1e-12:
        raise ValueError("preimage target must lie in the closed unit disc")
    rat = product.as_rational()
    poly = rat.num - w * rat.den
    roots = poly_roots(poly, cluster_tol=cluster_tol)
    if roots.total() != product.degree:
        raise AssertionError(
            "preimage lost multiplicity: "
            f"{roots.total()} points for degree {product.degree}"
        )
    return RootMultiset(roots.entries)


def apply_to_matrix(product, A, rank_tol=None, cluster_tol=DEFAULT_CLUSTER_TOL):
    """B(A) through the holomorphic functional calculus."""
    if not isinstance(A, JordanSpec):
        A = as_matrix(A)
    return funcalc.apply(
        product.as_holo(), A, rank_tol=rank_tol, cluster_tol=cluster_tol
    )
