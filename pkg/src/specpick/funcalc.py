"""Holomorphic functional calculus for matrices with spectrum in the disc.

f(A) is computed through the Hermite interpolation route: the unique
polynomial matching f's jets of order m(lam)-1 at each eigenvalue of the
minimal polynomial is evaluated at A. Jets are always produced by
coefficient-level series manipulation, never finite differences, so
integer quantities (orders of vanishing, predicted exponents) rest on
exact structure plus a threshold.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import AmbiguityError, IllConditionedError, OrderCapError
from .matrixspec import (
    JordanSpec,
    SpectralData,
    as_matrix,
    jordan_to_matrix,
    minimal_polynomial,
)
from .polyalg import (
    DEFAULT_CLUSTER_TOL,
    ComplexPolynomial,
    RationalFunction,
    require_finite,
    series_compose,
    series_div,
    series_mul,
    series_pow,
)

DEFAULT_DROP_TOL = 1e-9
DEFAULT_ORD_CAP = 64


def _mobius_series(zero, at, order):
    """Series of (t - zero)/(1 - conj(zero) t) around t = at.

    The constant term is exactly zero when ``at`` equals ``zero``, which is
    what keeps annihilation computations exact.
    """
    num = np.zeros(order + 1, dtype=np.complex128)
    num[0] = at - zero
    if order >= 1:
        num[1] = 1.0
    den = np.zeros(order + 1, dtype=np.complex128)
    den[0] = 1.0 - np.conj(zero) * at
    if order >= 1:
        den[1] = -np.conj(zero)
    return series_div(num, den, order)


class HoloFn:
    """Holomorphic function on the unit disc with exact jets.

    Instances wrap one of a few structural representations (polynomial,
    finite Blaschke product, scalar multiple, composition with a disc
    automorphism, derivative, general rational) and expose evaluation plus
    Taylor coefficients at any point of the disc.
    """

    __slots__ = ("kind", "payload")

    def __init__(self, kind, payload):
        self.kind = kind
        self.payload = payload

    @classmethod
    def from_polynomial(cls, p):
        if not isinstance(p, ComplexPolynomial):
            p = ComplexPolynomial(p)
        return cls("poly", p)

    @classmethod
    def from_rational(cls, r):
        if not isinstance(r, RationalFunction):
            raise TypeError("from_rational expects a RationalFunction")
        return cls("rational", r)

    @classmethod
    def from_blaschke(cls, product):
        """Accepts a BlaschkeProduct or an iterable of (zero, mult) pairs."""
        factors = getattr(product, "factors", product)
        factors = tuple((complex(z), int(m)) for z, m in factors)
        for z, m in factors:
            if abs(z) >= 1.0:
                raise ValueError("Blaschke zeros must lie inside the unit disc")
            if m < 1:
                raise ValueError("multiplicities must be positive")
        return cls("blaschke", factors)

    @classmethod
    def identity(cls):
        return cls("poly", ComplexPolynomial.identity())

    @classmethod
    def constant(cls, c):
        return cls("poly", ComplexPolynomial.constant(require_finite(c)))

    def scaled(self, c):
        return HoloFn("scaled", (require_finite(c, "scale"), self))

    def compose_automorphism(self, a):
        """The function z -> f((z - a)/(1 - conj(a) z))."""
        a = require_finite(a, "automorphism parameter")
        if abs(a) >= 1.0:
            raise ValueError("automorphism parameter must lie inside the unit disc")
        return HoloFn("mobius", (self, a))

    def derivative(self, order=1):
        if order < 1:
            return self
        if self.kind == "poly":
            p = self.payload
            for _ in range(order):
                p = p.derivative()
            return HoloFn("poly", p)
        if self.kind == "deriv":
            inner, k = self.payload
            return HoloFn("deriv", (inner, k + order))
        return HoloFn("deriv", (self, order))

    # -- evaluation and jets --

    def __call__(self, z):
        z = require_finite(z, "argument")
        if self.kind == "poly":
            return self.payload(z)
        if self.kind == "rational":
            return self.payload(z)
        if self.kind == "blaschke":
            out = 1.0 + 0.0j
            for zero, mult in self.payload:
                out *= ((z - zero) / (1.0 - np.conj(zero) * z)) ** mult
            return out
        if self.kind == "scaled":
            c, inner = self.payload
            return c * inner(z)
        if self.kind == "mobius":
            inner, a = self.payload
            return inner((z - a) / (1.0 - np.conj(a) * z))
        if self.kind == "deriv":
            inner, k = self.payload
            return inner.taylor_at(z, k)[k] * math.factorial(k)
        raise AssertionError(self.kind)

    def taylor_at(self, a, order):
        """Coefficients of f(a + h) in h through h**order."""
        a = require_finite(a, "expansion point")
        if self.kind == "poly":
            return self.payload.taylor_at(a, order)
        if self.kind == "rational":
            return self.payload.taylor_at(a, order)
        if self.kind == "blaschke":
            out = np.zeros(order + 1, dtype=np.complex128)
            out[0] = 1.0
            for zero, mult in self.payload:
                factor = _mobius_series(zero, a, order)
                out = series_mul(out, series_pow(factor, mult, order), order)
            return out
        if self.kind == "scaled":
            c, inner = self.payload
            return c * inner.taylor_at(a, order)
        if self.kind == "mobius":
            inner, w = self.payload
            psi = _mobius_series(w, a, order)
            image = psi[0]
            psi0 = psi.copy()
            psi0[0] = 0.0
            return series_compose(inner.taylor_at(image, order), psi0, order)
        if self.kind == "deriv":
            inner, k = self.payload
            base = inner.taylor_at(a, order + k)
            out = np.empty(order + 1, dtype=np.complex128)
            for j in range(order + 1):
                out[j] = base[j + k] * (
                    math.factorial(j + k) / math.factorial(j)
                )
            return out
        raise AssertionError(self.kind)

    def jet(self, a, count):
        """Derivative values f(a), f'(a), ..., f^(count-1)(a)."""
        coeffs = self.taylor_at(a, count - 1)
        return np.array(
            [coeffs[j] * math.factorial(j) for j in range(count)],
            dtype=np.complex128,
        )

    def as_rational(self):
        if self.kind == "poly":
            return RationalFunction.from_polynomial(self.payload)
        if self.kind == "rational":
            return self.payload
        if self.kind == "blaschke":
            num = ComplexPolynomial([1.0])
            den = ComplexPolynomial([1.0])
            for zero, mult in self.payload:
                for _ in range(mult):
                    num = num * ComplexPolynomial([-zero, 1.0])
                    den = den * ComplexPolynomial([1.0, -np.conj(zero)])
            return RationalFunction(num, den)
        if self.kind == "scaled":
            c, inner = self.payload
            return c * inner.as_rational()
        if self.kind == "mobius":
            inner, a = self.payload
            return inner.as_rational().compose_mobius(a)
        if self.kind == "deriv":
            inner, k = self.payload
            r = inner.as_rational()
            for _ in range(k):
                r = r.derivative()
            return r
        raise AssertionError(self.kind)

    def is_constant(self):
        r = self.as_rational()
        d = r.num.derivative() * r.den - r.num * r.den.derivative()
        if d.is_zero:
            return True
        scale = max(r.num.l1, r.den.l1, 1.0)
        return float(np.max(np.abs(d.coeffs))) <= 1e-12 * scale * scale

    def __add__(self, other):
        other = other if isinstance(other, HoloFn) else HoloFn.constant(other)
        r = self.as_rational() + other.as_rational()
        if r.den.degree == 0:
            return HoloFn.from_polynomial(r.num * (1.0 / r.den.coeffs[0]))
        return HoloFn("rational", r)

    def __mul__(self, other):
        if np.isscalar(other):
            return self.scaled(other)
        r = self.as_rational() * other.as_rational()
        if r.den.degree == 0:
            return HoloFn.from_polynomial(r.num * (1.0 / r.den.coeffs[0]))
        return HoloFn("rational", r)

    __rmul__ = __mul__


def hermite_interpolant(f, data):
    """The unique polynomial of degree < sum m(lam) matching f's jets of
    order m(lam)-1 at each eigenvalue in ``data``.

    A structurally polynomial f of low enough degree is its own interpolant
    and is returned verbatim; otherwise the confluent Vandermonde system is
    solved, failing explicitly when near-coincident eigenvalues make it
    ill-conditioned.
    """
    for lam, _ in data.entries:
        if abs(lam) >= 1.0:
            raise ValueError("interpolation nodes must lie inside the unit disc")
    n_total = data.degree()

    rat = f.as_rational() if isinstance(f, HoloFn) else None
    if rat is not None and rat.den.degree == 0 and rat.num.degree < n_total:
        return rat.num * (1.0 / rat.den.coeffs[0])

    rows = []
    rhs = []
    for lam, mult in data.entries:
        jets = f.jet(lam, mult)
        for j in range(mult):
            row = np.zeros(n_total, dtype=np.complex128)
            for k in range(j, n_total):
                fall = 1.0
                for i in range(j):
                    fall *= k - i
                row[k] = fall * lam ** (k - j)
            rows.append(row)
            rhs.append(jets[j])
    V = np.array(rows)
    cond = np.linalg.cond(V)
    if not np.isfinite(cond) or cond > 1e12:
        raise IllConditionedError(
            f"confluent Vandermonde condition {cond:.3e}: eigenvalues too close "
            "for a reliable interpolant"
        )
    coeffs = np.linalg.solve(V, np.array(rhs))
    return ComplexPolynomial(coeffs)


def _poly_at_matrix(p, A):
    n = A.shape[0]
    if p.coeffs.size == 0:
        return np.zeros((n, n), dtype=np.complex128)
    out = p.coeffs[-1] * np.eye(n, dtype=np.complex128)
    for k in range(p.coeffs.size - 2, -1, -1):
        out = out @ A + p.coeffs[k] * np.eye(n, dtype=np.complex128)
    return out


def apply(f, A, rank_tol=None, cluster_tol=DEFAULT_CLUSTER_TOL):
    """f(A) for a matrix (or JordanSpec) with spectrum inside the disc."""
    if isinstance(A, JordanSpec):
        data = A.spectral_data()
        A = jordan_to_matrix(A)
    else:
        A = as_matrix(A)
        kwargs = {"cluster_tol": cluster_tol}
        if rank_tol is not None:
            kwargs["rank_tol"] = rank_tol
        data = minimal_polynomial(A, **kwargs)
    if any(abs(lam) >= 1.0 for lam in data.eigenvalues()):
        raise ValueError("apply requires the spectrum inside the unit disc")
    p = hermite_interpolant(f, data)
    return _poly_at_matrix(p, A)


def nilpotent_combo_minpoly(alphas, drop_tol=1e-12):
    """Minimal-polynomial data of sum_j alpha_j N^j for the n x n nilpotent N.

    The single eigenvalue is alpha_0; its exponent is floor((n-1)/l) + 1
    where l is the least index j >= 1 with alpha_j nonzero (l = n when all
    of them vanish).
    """
    alphas = [complex(a) for a in alphas]
    n = len(alphas)
    if n < 2:
        raise ValueError("need at least two coefficients (n >= 2)")
    scale = max(1.0, max(abs(a) for a in alphas))
    ell = n
    for j in range(1, n):
        if abs(alphas[j]) > drop_tol * scale:
            ell = j
            break
    exponent = (n - 1) // ell + 1
    return SpectralData([(alphas[0], exponent)])


def ord_of_vanishing(g, a, drop_tol=DEFAULT_DROP_TOL, cap=DEFAULT_ORD_CAP):
    """Order of vanishing of g at a: the least j with nonvanishing j-th
    Taylor coefficient at the working threshold (0 if g(a) != 0)."""
    a = require_finite(a, "point")
    window = 8
    while True:
        window = min(window, cap)
        coeffs = g.taylor_at(a, window)
        scale = max(1.0, float(np.max(np.abs(coeffs))))
        hits = np.flatnonzero(np.abs(coeffs) > drop_tol * scale)
        if hits.size:
            return int(hits[0])
        if window >= cap:
            raise OrderCapError(
                f"no nonvanishing derivative up to order {cap}; "
                "input may be identically zero"
            )
        window *= 2


def _group_values(values, cluster_tol):
    """Single-linkage grouping of scalar values; returns lists of indices."""
    groups = [[i] for i in range(len(values))]
    merged = True
    while merged:
        merged = False
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                d = min(
                    abs(values[i] - values[j]) for i in groups[a] for j in groups[b]
                )
                if d <= cluster_tol:
                    groups[a] += groups[b]
                    del groups[b]
                    merged = True
                    break
            if merged:
                break
    return groups


def predicted_minpoly(f, data, cluster_tol=DEFAULT_CLUSTER_TOL, strict=False,
                      drop_tol=DEFAULT_DROP_TOL):
    """Closed-form minimal-polynomial data of f(A) from the data of A.

    Eigenvalues are grouped by their images under f (fibers); each image nu
    receives the exponent max over its fiber of
    floor((m(lam)-1)/(ord_lam f' + 1)) + 1.
    """
    if f.is_constant():
        raise ValueError("predicted_minpoly requires a non-constant function")
    for lam, _ in data.entries:
        if abs(lam) >= 1.0:
            raise ValueError("eigenvalues must lie inside the unit disc")

    fprime = f.derivative()
    images = [f(lam) for lam, _ in data.entries]
    groups = _group_values(images, cluster_tol)

    for g in groups:
        diam = max(abs(images[i] - images[j]) for i in g for j in g)
        if diam > cluster_tol:
            raise AmbiguityError(
                "eigenvalue images chain across the cluster tolerance; "
                "fiber grouping is ambiguous"
            )
    if strict:
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                gap = min(
                    abs(images[i] - images[j])
                    for i in groups[a]
                    for j in groups[b]
                )
                if gap <= 10 * cluster_tol:
                    raise AmbiguityError(
                        "strict mode: image groups closer than 10x cluster tolerance"
                    )

    entries = []
    for g in groups:
        nu = np.mean([images[i] for i in g])
        k = 0
        for i in g:
            lam, m = data.entries[i]
            ord_fp = ord_of_vanishing(fprime, lam, drop_tol=drop_tol)
            k = max(k, (m - 1) // (ord_fp + 1) + 1)
        entries.append((nu, k))
    return SpectralData(entries)
