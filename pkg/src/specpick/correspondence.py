"""Proper holomorphic correspondences from the disc to a planar disc and
numerical certification of the two Schwarz-type bounds for them.

A correspondence is stored as the monic degree-n polynomial in w whose
coefficient functions are polynomials in z; its fiber over z is the root
multiset. Properness (fibers staying away from the target boundary) is
certified on a radial-angular grid, which is documented in the
certificate rather than claimed exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import aberth_batch, initial_ring
from .errors import PropernessError
from .polyalg import (
    DEFAULT_CLUSTER_TOL,
    ComplexPolynomial,
    RootMultiset,
    hausdorff_distance,
    mobius_distance,
    poly_roots,
    require_finite,
)

DEFAULT_PROPERNESS_MARGIN = 1e-3
DEFAULT_GRID = (64, 128)
GRID_MAX_RADIUS = 0.999


@dataclass(frozen=True)
class DiscDomain:
    """Target disc with closed-form invariant distance."""

    center: complex = 0.0
    radius: float = 1.0

    def __post_init__(self):
        require_finite(self.center, "center")
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise ValueError("radius must be positive and finite")

    def boundary_distance(self, p):
        return self.radius - abs(complex(p) - complex(self.center))

    def contains(self, p, margin=0.0):
        return self.boundary_distance(p) > margin


def caratheodory_distance(dom, p, q):
    """Invariant distance on a disc: rescale to the unit disc, then Mobius."""
    p = require_finite(p, "p")
    q = require_finite(q, "q")
    if not dom.contains(p) or not dom.contains(q):
        raise ValueError("points must lie inside the domain")
    c, r = complex(dom.center), dom.radius
    return mobius_distance((p - c) / r, (q - c) / r)


@dataclass(frozen=True)
class Correspondence:
    """Zero set of w^n + sum_j (-1)^j a_j(z) w^(n-j) over the disc.

    ``coeffs`` lists a_1 .. a_n as polynomials in z; n is the multiplicity.
    """

    degree: int
    coeffs: tuple
    domain: DiscDomain = field(default_factory=DiscDomain)

    def __init__(self, degree, coeffs, domain=None):
        degree = int(degree)
        coeffs = tuple(
            c if isinstance(c, ComplexPolynomial) else ComplexPolynomial(c)
            for c in coeffs
        )
        if degree < 1:
            raise ValueError("correspondence degree must be >= 1")
        if len(coeffs) != degree:
            raise ValueError("need exactly n coefficient functions a_1..a_n")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "domain", domain if domain is not None else DiscDomain())

    @classmethod
    def graph(cls, f_poly, domain=None):
        """The single-valued correspondence w = f(z)."""
        return cls(1, [f_poly], domain)

    def fiber_polynomial(self, z):
        """Monic polynomial in w whose roots are the fiber over z."""
        n = self.degree
        c = np.zeros(n + 1, dtype=np.complex128)
        c[n] = 1.0
        for j, a in enumerate(self.coeffs, start=1):
            c[n - j] = (-1.0) ** j * a(z)
        return ComplexPolynomial(c)

    def fiber_values_grid(self, zs, max_iter=200):
        """Fiber points over many z at once (batched kernel, no clustering)."""
        zs = np.asarray(zs, dtype=np.complex128).ravel()
        n = self.degree
        rows = np.zeros((zs.size, n + 1), dtype=np.complex128)
        rows[:, n] = 1.0
        for j, a in enumerate(self.coeffs, start=1):
            rows[:, n - j] = (-1.0) ** j * a(zs)
        z0 = np.empty((zs.size, n), dtype=np.complex128)
        for i in range(zs.size):
            z0[i] = initial_ring(rows[i])
        return aberth_batch(rows, z0, max_iter, 1e-14, 1e-13)


def fiber(corr, zeta, cluster_tol=DEFAULT_CLUSTER_TOL, check_domain=True):
    """Fiber multiset over zeta: the n roots of the defining polynomial."""
    zeta = require_finite(zeta, "zeta")
    if abs(zeta) >= 1.0:
        raise ValueError("fiber point must lie inside the unit disc")
    roots = poly_roots(corr.fiber_polynomial(zeta), cluster_tol=cluster_tol)
    if check_domain:
        for w in roots.roots():
            if corr.domain.boundary_distance(w) <= 0:
                raise PropernessError(
                    f"fiber point {w} over {zeta} leaves the target domain"
                )
    return RootMultiset(roots.entries)


@dataclass
class SlackReport:
    lhs: float
    rhs: float
    slack: float
    detail: dict


def check_schwarz_product(corr, zeta1, zeta2, cluster_tol=DEFAULT_CLUSTER_TOL):
    """Exponent-one product bound: both directed max-of-products of
    invariant distances over the multiplicity-expanded fibers must stay
    below the Mobius distance of the nodes."""
    f1 = fiber(corr, zeta1, cluster_tol).expanded()
    f2 = fiber(corr, zeta2, cluster_tol).expanded()
    dom = corr.domain

    def directed(mus, nus):
        best = 0.0
        for mu in mus:
            prod = 1.0
            for nu in nus:
                prod *= caratheodory_distance(dom, nu, mu)
            best = max(best, prod)
        return best

    d21 = directed(f2, f1)
    d12 = directed(f1, f2)
    lhs = max(d21, d12)
    rhs = mobius_distance(zeta1, zeta2)
    return SlackReport(
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        detail={"directed_2_vs_1": d21, "directed_1_vs_2": d12},
    )


def check_schwarz_hausdorff(corr, zeta1, zeta2, cluster_tol=DEFAULT_CLUSTER_TOL):
    """Hausdorff bound: the invariant-Hausdorff distance between fiber
    supports is at most the Mobius node distance to the power 1/n."""
    s1 = fiber(corr, zeta1, cluster_tol).roots()
    s2 = fiber(corr, zeta2, cluster_tol).roots()
    dom = corr.domain
    lhs = hausdorff_distance(s1, s2, lambda p, q: caratheodory_distance(dom, p, q))
    rhs = mobius_distance(zeta1, zeta2) ** (1.0 / corr.degree)
    return SlackReport(lhs=lhs, rhs=rhs, slack=rhs - lhs, detail={})


@dataclass
class PropernessResult:
    ok: bool
    min_margin: float
    grid: tuple
    margin_required: float
    violation: tuple | None = None

    def __bool__(self):
        return self.ok


def validate_properness(
    corr,
    grid=DEFAULT_GRID,
    margin=DEFAULT_PROPERNESS_MARGIN,
    max_radius=GRID_MAX_RADIUS,
):
    """Grid certificate that all fibers keep the required distance from the
    target boundary.

    Samples radial x angular points of the disc with radii approaching
    ``max_radius``; a violating (z, w) pair is returned rather than raised.
    The certificate is exact only at grid resolution, which it records.
    """
    n_rad, n_ang = grid
    radii = np.linspace(0.0, max_radius, n_rad)
    angles = np.exp(2j * np.pi * np.arange(n_ang) / n_ang)
    zs = np.concatenate([[0.0 + 0.0j]] + [[r * angles][0] for r in radii[1:]])
    fibers = corr.fiber_values_grid(zs)
    dist = corr.domain.radius - np.abs(fibers - complex(corr.domain.center))
    min_margin = float(dist.min())
    if min_margin < margin:
        idx = np.unravel_index(int(np.argmin(dist)), dist.shape)
        return PropernessResult(
            ok=False,
            min_margin=min_margin,
            grid=(n_rad, n_ang),
            margin_required=margin,
            violation=(complex(zs[idx[0]]), complex(fibers[idx])),
        )
    return PropernessResult(
        ok=True,
        min_margin=min_margin,
        grid=(n_rad, n_ang),
        margin_required=margin,
    )
