"""Complex polynomial/rational arithmetic and unit-disc geometry.

Everything here is coefficient-level: polynomials are stored lowest degree
first, derivatives and Taylor jets are computed by exact coefficient
manipulation (synthetic shifts and truncated series), never by finite
differences. Root multiplicities are first-class: ``poly_roots`` returns a
multiset and resolves repeated roots by cluster verification plus
derivative-polished centers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import aberth, initial_ring
from .errors import AmbiguityError, RootFindingError

_TRIM_REL = 1e-13

DEFAULT_CLUSTER_TOL = 1e-7
DEFAULT_MAX_ITER = 200
RESIDUAL_ACCEPT_REL = 1e-10


def require_finite(z, name="value"):
    """Reject NaN/Inf components at the public API boundary."""
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"{name} must have finite components, got {z!r}")
    return z


def _trim(coeffs):
    c = np.asarray(coeffs, dtype=np.complex128).ravel()
    if c.size == 0:
        return c
    top = np.max(np.abs(c))
    if top == 0.0:
        return c[:0]
    keep = np.flatnonzero(np.abs(c) > _TRIM_REL * top)
    if keep.size == 0:
        return c[:0]
    return c[: keep[-1] + 1].copy()


class ComplexPolynomial:
    """Dense complex polynomial, coefficients lowest degree first.

    The zero polynomial has an empty coefficient array and degree -1.
    Trailing coefficients below a relative threshold are trimmed so the
    leading coefficient is always meaningful.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(coeffs)
        if self.coeffs.size:
            for c in self.coeffs:
                if not (np.isfinite(c.real) and np.isfinite(c.imag)):
                    raise ValueError("polynomial coefficients must be finite")

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def identity(cls):
        """The polynomial t."""
        return cls([0.0, 1.0])

    @classmethod
    def from_roots(cls, roots_with_multiplicity):
        """Monic polynomial with the given (root, multiplicity) factors."""
        c = np.array([1.0 + 0.0j])
        for root, mult in roots_with_multiplicity:
            for _ in range(int(mult)):
                c = np.convolve(c, np.array([-complex(root), 1.0 + 0.0j]))
        return cls(c)

    @property
    def degree(self):
        return self.coeffs.size - 1

    @property
    def is_zero(self):
        return self.coeffs.size == 0

    @property
    def l1(self):
        return float(np.sum(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def is_monic(self, tol=1e-9):
        return self.coeffs.size > 0 and abs(self.coeffs[-1] - 1.0) <= tol

    def __call__(self, z):
        if self.coeffs.size == 0:
            return np.zeros_like(np.asarray(z, dtype=np.complex128)) + 0j if np.ndim(z) else 0j
        z = np.asarray(z, dtype=np.complex128)
        p = np.full(z.shape, self.coeffs[-1], dtype=np.complex128)
        for k in range(self.coeffs.size - 2, -1, -1):
            p = p * z + self.coeffs[k]
        return p if p.ndim else complex(p)

    def derivative(self):
        if self.coeffs.size <= 1:
            return ComplexPolynomial()
        k = np.arange(1, self.coeffs.size)
        return ComplexPolynomial(self.coeffs[1:] * k)

    def taylor_at(self, a, order):
        """Coefficients of p(a + h) in h, up to h**order (exact shift)."""
        a = complex(a)
        work = self.coeffs.copy()
        out = np.zeros(order + 1, dtype=np.complex128)
        for j in range(order + 1):
            if work.size == 0:
                break
            acc = work[-1]
            quot = np.empty(max(work.size - 1, 0), dtype=np.complex128)
            for k in range(work.size - 2, -1, -1):
                quot[k] = acc
                acc = acc * a + work[k]
            out[j] = acc
            work = quot
        return out

    def __add__(self, other):
        other = _as_poly(other)
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(n, dtype=np.complex128)
        a[: self.coeffs.size] += self.coeffs
        a[: other.coeffs.size] += other.coeffs
        return ComplexPolynomial(a)

    def __sub__(self, other):
        other = _as_poly(other)
        return self + (-1.0) * other

    def __mul__(self, other):
        if np.isscalar(other):
            return ComplexPolynomial(self.coeffs * complex(other))
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return ComplexPolynomial()
        return ComplexPolynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __repr__(self):
        return f"ComplexPolynomial({list(self.coeffs)})"


def _as_poly(p):
    if isinstance(p, ComplexPolynomial):
        return p
    if np.isscalar(p):
        return ComplexPolynomial([p])
    return ComplexPolynomial(p)


# -- truncated power series helpers (arrays, lowest order first) --


def series_mul(a, b, order):
    out = np.convolve(a[: order + 1], b[: order + 1])[: order + 1]
    if out.size < order + 1:
        out = np.pad(out, (0, order + 1 - out.size))
    return out


def series_div(a, b, order):
    """Series a/b to the given order; requires b[0] != 0."""
    if b.size == 0 or b[0] == 0:
        raise ZeroDivisionError("series division by series with zero constant term")
    a = np.pad(a[: order + 1], (0, max(0, order + 1 - a.size)))
    b = np.pad(b[: order + 1], (0, max(0, order + 1 - b.size)))
    out = np.zeros(order + 1, dtype=np.complex128)
    for k in range(order + 1):
        s = a[k]
        for j in range(1, k + 1):
            s -= b[j] * out[k - j]
        out[k] = s / b[0]
    return out


def series_pow(a, m, order):
    out = np.zeros(order + 1, dtype=np.complex128)
    out[0] = 1.0
    for _ in range(int(m)):
        out = series_mul(out, a, order)
    return out


def series_compose(outer, inner, order):
    """Series outer(inner(h)) to the given order; requires inner[0] == 0."""
    if inner.size and inner[0] != 0:
        raise ValueError("series composition requires a vanishing inner constant term")
    out = np.zeros(order + 1, dtype=np.complex128)
    for k in range(min(outer.size - 1, order), -1, -1):
        out = series_mul(out, inner, order)
        out[0] += outer[k]
    return out


class RationalFunction:
    """Quotient of two ComplexPolynomials; no coprimality is assumed."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = _as_poly(num)
        self.den = _as_poly(den)
        if self.den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")

    @classmethod
    def from_polynomial(cls, p):
        return cls(p, ComplexPolynomial([1.0]))

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def derivative(self):
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def taylor_at(self, a, order):
        num_t = self.num.taylor_at(a, order)
        den_t = self.den.taylor_at(a, order)
        if den_t.size == 0 or den_t[0] == 0:
            raise ZeroDivisionError("denominator vanishes at the expansion point")
        return series_div(num_t, den_t, order)

    def __add__(self, other):
        other = _as_rational(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other):
        if np.isscalar(other):
            return RationalFunction(self.num * complex(other), self.den)
        other = _as_rational(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def compose_mobius(self, a):
        """The rational function t -> self((t - a) / (1 - conj(a) t))."""
        a = require_finite(a, "automorphism parameter")
        if abs(a) >= 1.0:
            raise ValueError("automorphism parameter must lie inside the unit disc")
        lin_num = ComplexPolynomial([-a, 1.0])
        lin_den = ComplexPolynomial([1.0, -np.conj(a)])
        deg = max(self.num.degree, self.den.degree, 0)

        def subst(p):
            out = ComplexPolynomial()
            for k, c in enumerate(p.coeffs):
                term = ComplexPolynomial([c])
                for _ in range(k):
                    term = term * lin_num
                for _ in range(deg - k):
                    term = term * lin_den
                out = out + term
            return out

        return RationalFunction(subst(self.num), subst(self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


def _as_rational(r):
    if isinstance(r, RationalFunction):
        return r
    return RationalFunction.from_polynomial(_as_poly(r))


@dataclass(frozen=True)
class RootMultiset:
    """Distinct roots with positive multiplicities, sorted for determinism."""

    entries: tuple

    def __init__(self, entries):
        ent = tuple(
            sorted(
                ((complex(r), int(m)) for r, m in entries),
                key=lambda rm: (rm[0].real, rm[0].imag),
            )
        )
        for _, m in ent:
            if m < 1:
                raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "entries", ent)

    def total(self):
        return sum(m for _, m in self.entries)

    def roots(self):
        return [r for r, _ in self.entries]

    def expanded(self):
        out = []
        for r, m in self.entries:
            out.extend([r] * m)
        return out

    def multiplicity_of(self, value, tol):
        for r, m in self.entries:
            if abs(r - complex(value)) <= tol:
                return m
        return 0


# -- root finding ------------------------------------------------------


def _linkage_cuts(points):
    """Single-linkage merge sequence; returns partitions finest to coarsest."""
    clusters = [[i] for i in range(len(points))]
    cuts = [[list(c) for c in clusters]]
    while len(clusters) > 1:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                d = min(
                    abs(points[i] - points[j])
                    for i in clusters[a]
                    for j in clusters[b]
                )
                if best is None or d < best[0]:
                    best = (d, a, b)
        _, a, b = best
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]
        cuts.append([list(c) for c in clusters])
    return cuts


def _horner(coeffs, z):
    p = coeffs[-1]
    for k in range(coeffs.size - 2, -1, -1):
        p = p * z + coeffs[k]
    return p


def _derivative_coeffs(coeffs, order):
    c = coeffs
    for _ in range(order):
        if c.size <= 1:
            return np.zeros(1, dtype=np.complex128)
        c = c[1:] * np.arange(1, c.size)
    return c


def _newton_polish(coeffs, z0, iters=80):
    """Newton on the given coefficient array, starting from z0."""
    dc = _derivative_coeffs(coeffs, 1)
    z = z0
    fz = abs(_horner(coeffs, z))
    for _ in range(iters):
        fp = _horner(dc, z)
        if fp == 0:
            break
        step = _horner(coeffs, z) / fp
        znew = z - step
        fznew = abs(_horner(coeffs, znew))
        if fznew > fz and abs(step) > 1e-12 * (1.0 + abs(z)):
            step *= 0.5
            znew = z - step
            fznew = abs(_horner(coeffs, znew))
            if fznew > fz:
                break
        converged = abs(step) <= 1e-16 * (1.0 + abs(znew))
        z, fz = znew, fznew
        if converged:
            break
    return z


def _expand(centers, mults):
    c = np.array([1.0 + 0.0j])
    for root, m in zip(centers, mults):
        factor = np.array([-root, 1.0 + 0.0j])
        for _ in range(int(m)):
            c = np.convolve(c, factor)
    return c


def _refine_on_manifold(monic, centers, mults, iters=12):
    """Gauss-Newton for root positions under a fixed multiplicity pattern.

    Solves min over (r_1..r_s) of || coeffs(prod (t-r_i)^{m_i}) - monic ||.
    When the pattern matches the true root structure the residual drops to
    roundoff level, which is what the clustering verification relies on.
    Returns (refined centers, max coefficient residual).
    """
    r = np.asarray(centers, dtype=np.complex128).copy()
    m = np.asarray(mults, dtype=np.int64)
    d = monic.size - 1
    best_res = None
    best_r = r.copy()
    for _ in range(iters):
        resid_vec = (_expand(r, m) - monic)[:d]
        res = float(np.max(np.abs(resid_vec)))
        if best_res is None or res < best_res:
            best_res, best_r = res, r.copy()
        if res <= 10 * np.finfo(float).eps:
            break
        jac = np.zeros((d, r.size), dtype=np.complex128)
        for i in range(r.size):
            reduced = m.copy()
            reduced[i] -= 1
            jac[:, i] = -m[i] * _expand(r, reduced)[:d]
        try:
            delta = np.linalg.lstsq(jac, -resid_vec, rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(delta)):
            break
        r = r + delta
    resid_vec = (_expand(r, m) - monic)[:d]
    res = float(np.max(np.abs(resid_vec)))
    if best_res is None or res < best_res:
        best_res, best_r = res, r
    return best_r, best_res


def poly_roots(
    p,
    cluster_tol=DEFAULT_CLUSTER_TOL,
    max_iter=DEFAULT_MAX_ITER,
    strict=False,
):
    """All roots of p with multiplicities.

    Aberth-Ehrlich simultaneous iteration locates the d approximations;
    repeated roots are then resolved by scanning single-linkage clusterings
    from coarsest to finest, polishing each candidate center with Newton on
    the (m-1)-st derivative, and accepting the first clustering whose
    re-expanded polynomial reproduces the input coefficients. Roots closer
    than ``cluster_tol`` are always merged.

    Raises RootFindingError if the iteration misses the residual acceptance
    and AmbiguityError if no clustering is consistent with the coefficients.
    """
    p = _as_poly(p)
    if p.degree < 1:
        raise ValueError("poly_roots requires degree >= 1")
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")

    if p.degree == 1:
        root = -p.coeffs[0] / p.coeffs[1]
        return RootMultiset([(root, 1)])

    lc = p.coeffs[-1]
    monic = p.coeffs / lc
    d = p.degree
    l1_monic = float(np.sum(np.abs(monic)))
    accept = RESIDUAL_ACCEPT_REL * (1.0 + p.l1)

    z0 = initial_ring(monic)
    z, _ = aberth(monic, z0, int(max_iter), 1e-14, 1e-14 * (1.0 + l1_monic))
    residuals = np.abs(p(z))
    worst = float(np.max(residuals))
    if worst > accept:
        raise RootFindingError(
            f"root iteration residual {worst:.3e} exceeds acceptance {accept:.3e}",
            residual=worst,
        )

    verify_tol = max(1e-11 * (1.0 + l1_monic), 100 * np.finfo(float).eps * d * (1.0 + l1_monic))
    cuts = _linkage_cuts(list(z))
    chosen = None
    for cut in reversed(cuts):  # coarsest first
        centers = []
        mults = []
        for cluster in cut:
            m = len(cluster)
            centroid = np.mean([z[i] for i in cluster])
            if m > 1:
                dm = _derivative_coeffs(monic, m - 1)
                centroid = _newton_polish(dm, centroid, iters=40)
            centers.append(centroid)
            mults.append(m)
        refined, res = _refine_on_manifold(monic, centers, mults)
        if not np.all(np.isfinite(refined)):
            continue
        collision = any(
            abs(refined[i] - refined[j]) <= cluster_tol
            for i in range(len(refined))
            for j in range(i + 1, len(refined))
        )
        if collision:
            continue
        if res <= verify_tol:
            chosen = list(zip(refined, mults))
            break
    if chosen is None:
        raise AmbiguityError(
            "no root clustering reproduces the coefficients; the root "
            "configuration is ambiguous at this tolerance"
        )

    if strict:
        _strict_multiplicity_check(monic, chosen, cluster_tol)
    return RootMultiset(chosen)


def _strict_multiplicity_check(monic, entries, cluster_tol, drop=1e-7):
    poly = ComplexPolynomial(monic)
    for root, m in entries:
        jets = poly.taylor_at(root, poly.degree)
        scale = float(np.max(np.abs(jets)))
        low = np.abs(jets[:m])
        if np.any(low > drop * scale) or abs(jets[m]) <= drop * scale:
            raise AmbiguityError(
                f"derivative cross-check rejects multiplicity {m} at {root:.6g}"
            )


# -- disc geometry ------------------------------------------------------


def mobius_distance(z1, z2):
    """Invariant distance |z1 - z2| / |1 - conj(z2) z1| on the unit disc."""
    z1 = require_finite(z1, "z1")
    z2 = require_finite(z2, "z2")
    if abs(z1) >= 1.0 or abs(z2) >= 1.0:
        raise ValueError("mobius_distance requires both points inside the unit disc")
    return abs(z1 - z2) / abs(1.0 - np.conj(z2) * z1)


def disc_automorphism(a, z):
    """The automorphism (z - a) / (1 - conj(a) z); maps a to 0."""
    a = require_finite(a, "a")
    z = require_finite(z, "z")
    if abs(a) >= 1.0:
        raise ValueError("automorphism parameter must lie inside the unit disc")
    if abs(z) > 1.0 + 1e-9:
        raise ValueError("argument must lie in the closed unit disc")
    return (z - a) / (1.0 - np.conj(a) * z)


def hausdorff_distance(set_a, set_b, metric):
    """max-min Hausdorff distance between finite nonempty point sets."""
    pts_a = list(set_a)
    pts_b = list(set_b)
    if not pts_a or not pts_b:
        raise ValueError("hausdorff_distance requires nonempty sets")

    def directed(src, dst):
        return max(min(metric(s, t) for t in dst) for s in src)

    return max(directed(pts_a, pts_b), directed(pts_b, pts_a))
