"""Small dense complex matrices: characteristic/minimal polynomials,
Jordan specifications, companion matrices, spectral unit ball membership.

Eigenvalues go through the characteristic polynomial (Faddeev-LeVerrier
coefficients, then the multiplicity-aware root finder) because the
multiplicity structure matters more here than last-digit accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import IllConditionedError
from .polyalg import (
    DEFAULT_CLUSTER_TOL,
    ComplexPolynomial,
    RootMultiset,
    poly_roots,
)

DEFAULT_RANK_TOL = 1e-8


@dataclass(frozen=True)
class JordanSpec:
    """Jordan form data: per eigenvalue, the non-decreasing block sizes."""

    blocks: tuple

    def __init__(self, blocks):
        norm = []
        seen = []
        for lam, sizes in blocks:
            lam = complex(lam)
            sizes = tuple(sorted(int(s) for s in sizes))
            if not sizes or any(s < 1 for s in sizes):
                raise ValueError("block sizes must be positive")
            for other in seen:
                if lam == other:
                    raise ValueError("JordanSpec eigenvalues must be pairwise distinct")
            seen.append(lam)
            norm.append((lam, sizes))
        object.__setattr__(self, "blocks", tuple(norm))

    @property
    def dimension(self):
        return sum(sum(sizes) for _, sizes in self.blocks)

    def spectral_data(self):
        """Exact minimal-polynomial data: exponent = largest block size."""
        return SpectralData([(lam, max(sizes)) for lam, sizes in self.blocks])


@dataclass(frozen=True)
class SpectralData:
    """Minimal-polynomial data: distinct eigenvalues with their exponents."""

    entries: tuple

    def __init__(self, entries):
        ent = tuple(
            sorted(
                ((complex(lam), int(m)) for lam, m in entries),
                key=lambda em: (em[0].real, em[0].imag),
            )
        )
        if not ent:
            raise ValueError("SpectralData requires at least one eigenvalue")
        for _, m in ent:
            if m < 1:
                raise ValueError("exponents must be positive")
        object.__setattr__(self, "entries", ent)

    def degree(self):
        return sum(m for _, m in self.entries)

    def eigenvalues(self):
        return [lam for lam, _ in self.entries]

    def exponent_of(self, value, tol):
        for lam, m in self.entries:
            if abs(lam - complex(value)) <= tol:
                return m
        return 0

    def matches(self, other, tol):
        """Entrywise comparison: eigenvalues within tol, exponents exact."""
        if len(self.entries) != len(other.entries):
            return False
        return all(
            abs(a - b) <= tol and ma == mb
            for (a, ma), (b, mb) in zip(self.entries, other.entries)
        )


def as_matrix(target):
    """Coerce a raw array or JordanSpec to a square complex ndarray."""
    if isinstance(target, JordanSpec):
        return jordan_to_matrix(target)
    m = np.asarray(target, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError("matrix must be square with n >= 1")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix entries must be finite")
    return m


def jordan_to_matrix(spec):
    """Block-diagonal matrix with one Jordan block per spec entry.

    Blocks carry the eigenvalue on the diagonal and ones on the first
    subdiagonal.
    """
    n = spec.dimension
    out = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for lam, sizes in spec.blocks:
        for size in sizes:
            for i in range(size):
                out[pos + i, pos + i] = lam
                if i + 1 < size:
                    out[pos + i + 1, pos + i] = 1.0
            pos += size
    return out


def companion(p):
    """Companion matrix of a monic polynomial, ones on the subdiagonal and
    negated coefficients down the last column."""
    if not isinstance(p, ComplexPolynomial):
        p = ComplexPolynomial(p)
    if p.degree < 1:
        raise ValueError("companion requires degree >= 1")
    if not p.is_monic():
        raise ValueError("companion requires a monic polynomial")
    k = p.degree
    out = np.zeros((k, k), dtype=np.complex128)
    for i in range(1, k):
        out[i, i - 1] = 1.0
    # column (-a_k, ..., -a_1)^T where p = t^k + a_1 t^{k-1} + ... + a_k
    out[:, k - 1] = -p.coeffs[:k]
    return out


def characteristic_polynomial(A):
    """det(tI - A), monic of degree n, by the Faddeev-LeVerrier recurrence."""
    A = as_matrix(A)
    n = A.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    M = np.eye(n, dtype=np.complex128)
    c = -np.trace(A)
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        M = A @ M + c * np.eye(n, dtype=np.complex128)
        c = -np.trace(A @ M) / k
        coeffs[n - k] = c
    return ComplexPolynomial(coeffs)


def eigen_multiset(A, cluster_tol=DEFAULT_CLUSTER_TOL):
    """Spectrum with algebraic multiplicities, via the characteristic
    polynomial and the clustering root finder."""
    A = as_matrix(A)
    if A.shape[0] == 1:
        return RootMultiset([(complex(A[0, 0]), 1)])
    return poly_roots(characteristic_polynomial(A), cluster_tol=cluster_tol)


def _rank(M, rank_tol, natural_scale):
    """Numerical rank by QR with column pivoting.

    ``natural_scale`` is the magnitude the matrix would have if it were not
    structurally degenerate; pivots below the roundoff floor it implies are
    dust, not directions, and are discarded before any decision. Among the
    live pivots, one falling within a factor 10 of the relative threshold
    raises IllConditionedError instead of guessing.
    """
    n = M.shape[0]
    r = scipy.linalg.qr(M, mode="r", pivoting=True)[0]
    pivots = np.sort(np.abs(np.diag(r)))[::-1]
    noise_floor = 2e4 * n * np.finfo(float).eps * max(natural_scale, 1e-300)
    live = pivots[pivots > noise_floor]
    if live.size == 0:
        return 0
    thr = rank_tol * live[0]
    if thr <= noise_floor:
        # the relative threshold sits inside the dust; every live pivot is
        # distinguishable from roundoff
        return int(live.size)
    ambiguous = (live > thr / 10.0) & (live < thr * 10.0)
    if np.any(ambiguous):
        raise IllConditionedError(
            f"rank decision ambiguous: pivot {live[ambiguous][0]:.3e} within "
            f"a factor 10 of threshold {thr:.3e}"
        )
    return int(np.count_nonzero(live > thr))


def minimal_polynomial(A, rank_tol=DEFAULT_RANK_TOL, cluster_tol=DEFAULT_CLUSTER_TOL):
    """Minimal-polynomial data of A.

    For each distinct eigenvalue the exponent is the least k >= 1 with
    rank((A - lam I)^k) == rank((A - lam I)^(k+1)). JordanSpec inputs are
    answered exactly without numerics.
    """
    if isinstance(A, JordanSpec):
        return A.spectral_data()
    A = as_matrix(A)
    n = A.shape[0]
    eigs = eigen_multiset(A, cluster_tol=cluster_tol)
    entries = []
    for lam, alg_mult in eigs.entries:
        B = A - lam * np.eye(n, dtype=np.complex128)
        norm_b = max(np.linalg.norm(B, 2), 1e-300)
        P = B.copy()
        prev = _rank(P, rank_tol, norm_b)
        m = None
        for k in range(1, alg_mult + 1):
            P_next = P @ B
            nxt = _rank(P_next, rank_tol, norm_b ** (k + 1))
            if nxt == prev:
                m = k
                break
            P, prev = P_next, nxt
        if m is None:
            m = alg_mult
        entries.append((lam, m))
    return SpectralData(entries)


def is_nonderogatory(A, rank_tol=DEFAULT_RANK_TOL, cluster_tol=DEFAULT_CLUSTER_TOL):
    """True iff the minimal polynomial has full degree n."""
    if isinstance(A, JordanSpec):
        return A.spectral_data().degree() == A.dimension
    A = as_matrix(A)
    data = minimal_polynomial(A, rank_tol=rank_tol, cluster_tol=cluster_tol)
    return data.degree() == A.shape[0]


def in_spectral_unit_ball(A, margin=0.0, cluster_tol=DEFAULT_CLUSTER_TOL):
    """True iff every eigenvalue has modulus < 1 - margin."""
    if isinstance(A, JordanSpec):
        moduli = [abs(lam) for lam, _ in A.blocks]
    else:
        moduli = [abs(lam) for lam in eigen_multiset(A, cluster_tol).roots()]
    return all(mod < 1.0 - margin for mod in moduli)
