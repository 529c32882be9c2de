"""Seeded random generators for property sweeps.

The oracle and soundness sweeps need instances whose spectral structure is
numerically decidable: eigenvalue (and eigenvalue-image) separations are
floored according to the worst multiplicity in play, since resolving an
m-fold structure costs roughly the m-th root of the working precision.
Instances inside the ambiguous window are rejected, matching the
package-wide policy of erroring rather than guessing there.
"""

from __future__ import annotations

import numpy as np

from .blaschke import BlaschkeProduct
from .conditions import DataPoint, ThreePointData
from .correspondence import Correspondence, DiscDomain, validate_properness
from .funcalc import HoloFn
from .matrixspec import JordanSpec
from .polyalg import ComplexPolynomial

# minimum separation of distinct values that must be told apart when the
# worst Jordan exponent is m (index 1..8)
_SEP_FLOOR = {1: 2e-3, 2: 2e-3, 3: 0.02, 4: 0.05, 5: 0.12, 6: 0.2, 7: 0.3, 8: 0.35}


def point_in_disc(rng, radius=0.9):
    while True:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) < radius:
            return z


def random_partition(rng, total):
    sizes = []
    while total > 0:
        s = int(rng.integers(1, total + 1))
        sizes.append(s)
        total -= s
    return sizes


def random_jordan_spec(rng, max_n=8, min_n=2, eig_radius=0.8):
    """JordanSpec with eigenvalues separated enough for its block sizes."""
    n = int(rng.integers(min_n, max_n + 1))
    blocks = []
    eigs = []
    remaining = n
    while remaining > 0:
        total = int(rng.integers(1, remaining + 1))
        sizes = random_partition(rng, total)
        floor = _SEP_FLOOR[max(sizes)]
        for _ in range(500):
            lam = point_in_disc(rng, eig_radius)
            if all(abs(lam - e) > max(floor, 0.05) for e in eigs):
                break
        else:
            continue
        eigs.append(lam)
        blocks.append((lam, sizes))
        remaining -= total
    return JordanSpec(blocks)


def random_blaschke(rng, max_degree=4, zero_radius=0.85, pin_zeros=()):
    """Finite Blaschke product of degree 1..max_degree.

    ``pin_zeros`` values may be chosen (with multiplicity) as zeros, which
    engineers critical points or annihilation at prescribed spots.
    """
    degree = int(rng.integers(1, max_degree + 1))
    zeros = {}
    used = 0
    while used < degree:
        m = int(rng.integers(1, degree - used + 1))
        if pin_zeros and rng.random() < 0.35:
            z = pin_zeros[int(rng.integers(0, len(pin_zeros)))]
        else:
            z = point_in_disc(rng, zero_radius)
        zeros[z] = zeros.get(z, 0) + m
        used += m
    return BlaschkeProduct(sorted(zeros.items(), key=lambda t: (t[0].real, t[0].imag)))


def random_poly_disc_map(rng, max_degree=5):
    """Polynomial with coefficient l1 norm below 0.9, hence a disc self-map."""
    degree = int(rng.integers(1, max_degree + 1))
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    c = c / (np.sum(np.abs(c)) + 1e-12) * 0.9
    if np.sum(np.abs(c[1:])) < 1e-3:
        c[1] += 0.3
    return ComplexPolynomial(c)


def oracle_case(rng, max_n=8):
    """A (JordanSpec, HoloFn) pair whose image structure is decidable.

    Rejects draws where two distinct eigenvalue images fall inside the
    ambiguous window between "equal" and "separated by the multiplicity
    floor". Pinned Blaschke zeros deliberately create image collisions and
    in-spectrum critical points, which exercise the exponent formula.
    """
    while True:
        spec = random_jordan_spec(rng, max_n=max_n)
        eigs = [lam for lam, _ in spec.blocks]
        if rng.random() < 0.5:
            f = random_blaschke(rng, max_degree=4, pin_zeros=tuple(eigs)).as_holo()
        else:
            f = HoloFn.from_polynomial(random_poly_disc_map(rng, max_degree=5))
        data = spec.spectral_data()
        images = [f(lam) for lam, _ in data.entries]
        mults = [m for _, m in data.entries]
        ambiguous = False
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                floor = _SEP_FLOOR[max(mults[i], mults[j])]
                if 1e-9 < abs(images[i] - images[j]) < floor:
                    ambiguous = True
        if not ambiguous:
            return spec, f


def distinct_nodes(rng, count=3, radius=0.85, min_sep=0.1):
    while True:
        nodes = [point_in_disc(rng, radius) for _ in range(count)]
        if all(
            abs(nodes[i] - nodes[j]) >= min_sep
            for i in range(count)
            for j in range(i + 1, count)
        ):
            return nodes


def realizable_three_point(rng, n=3, kind=None):
    """Data sampled from an explicit interpolant, so every necessary
    condition must pass on it.

    kind "diag": F(z) = diag(f_1(z), ..., f_n(z)) with finite Blaschke f_i;
    kind "scalar": F(z) = f(z) I.
    """
    if kind is None:
        kind = "diag" if rng.random() < 0.7 else "scalar"
    nodes = distinct_nodes(rng, 3)
    if kind == "scalar":
        f = random_blaschke(rng, max_degree=3)
        targets = [f(z) * np.eye(n, dtype=np.complex128) for z in nodes]
    else:
        fs = [random_blaschke(rng, max_degree=3) for _ in range(n)]
        targets = [
            np.diag([f(z) for f in fs]).astype(np.complex128) for z in nodes
        ]
    points = [DataPoint(z, w) for z, w in zip(nodes, targets)]
    return ThreePointData(points), kind


def random_proper_correspondence(
    rng,
    max_degree=4,
    coeff_degree=3,
    domain=None,
    fill=0.8,
):
    """Certified-proper correspondence with polynomial coefficients.

    Random coefficients are rescaled (w -> s w pushes a_j -> s^j a_j) so
    the largest fiber modulus over the certification grid lands near
    ``fill`` times the target radius, then the certificate is recomputed.
    """
    domain = domain if domain is not None else DiscDomain()
    n = int(rng.integers(1, max_degree + 1))
    coeffs = []
    for _ in range(n):
        deg = int(rng.integers(0, coeff_degree + 1))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        coeffs.append(ComplexPolynomial(c))
    corr = Correspondence(n, coeffs, DiscDomain(0.0, 1e9))
    grid_max = float(
        np.max(np.abs(corr.fiber_values_grid(_coarse_grid())))
    )
    target = fill * domain.radius
    s = target / max(grid_max, 1e-9)
    scaled = [
        ComplexPolynomial(c.coeffs * s ** (j + 1)) for j, c in enumerate(coeffs)
    ]
    shifted = list(scaled)
    # recenter: fibers of sum (-1)^j a_j w^{n-j} live near 0; shift to domain center
    if domain.center != 0:
        corr0 = Correspondence(n, shifted, DiscDomain(0.0, domain.radius))
        return _shift_correspondence(corr0, domain)
    out = Correspondence(n, shifted, domain)
    cert = validate_properness(out)
    if not cert.ok:
        # extremely skewed draws can still graze the margin; shrink once more
        shrunk = [
            ComplexPolynomial(c.coeffs * 0.5 ** (j + 1))
            for j, c in enumerate(shifted)
        ]
        out = Correspondence(n, shrunk, domain)
        cert = validate_properness(out)
    if not cert.ok:
        raise AssertionError("could not scale correspondence to properness")
    return out


def _coarse_grid():
    radii = np.linspace(0.1, 0.999, 12)
    ang = np.exp(2j * np.pi * np.arange(16) / 16)
    return np.concatenate([r * ang for r in radii])


def _shift_correspondence(corr, domain):
    """Translate fibers by the domain center: substitute w -> w - c."""
    n = corr.degree
    c = complex(domain.center)
    # p(w) = w^n + sum (-1)^j a_j w^{n-j}; build q(w) = p(w - c)
    new_coeffs = []
    # expand p(w - c) via binomial on each power
    from math import comb

    acc = [ComplexPolynomial() for _ in range(n + 1)]  # coefficient of w^k
    full = [None] * (n + 1)
    full[n] = ComplexPolynomial([1.0])
    for j, a in enumerate(corr.coeffs, start=1):
        full[n - j] = (-1.0) ** j * a
    for p_k in range(n + 1):
        base = full[p_k]
        if base is None or base.is_zero:
            continue
        for k in range(p_k + 1):
            coef = comb(p_k, k) * (-c) ** (p_k - k)
            acc[k] = acc[k] + coef * base
    for j in range(1, n + 1):
        new_coeffs.append((-1.0) ** j * acc[n - j])
    return Correspondence(n, new_coeffs, domain)
