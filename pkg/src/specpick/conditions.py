"""Necessary-condition certifiers for 2- and 3-point spectral Pick data.

A verdict of Infeasible proves no holomorphic interpolant into the
spectral unit ball exists; a satisfied condition proves nothing, so the
complementary verdict is Inconclusive, never "feasible". Infeasibility is
only declared when the violation clears ``report_tol``; borderline results
stay Inconclusive with a warning, so round-off can never manufacture a
false certificate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .blaschke import minimal_blaschke, preimage
from .errors import AmbiguityError, ConstraintError
from .funcalc import DEFAULT_DROP_TOL, ord_of_vanishing
from .matrixspec import (
    DEFAULT_RANK_TOL,
    JordanSpec,
    as_matrix,
    in_spectral_unit_ball,
    minimal_polynomial,
)
from .polyalg import (
    DEFAULT_CLUSTER_TOL,
    disc_automorphism,
    hausdorff_distance,
    mobius_distance,
    require_finite,
)

DEFAULT_REPORT_TOL = 1e-9


def _c(z):
    """Complex number as a JSON-ready [re, im] pair."""
    z = complex(z)
    return [z.real, z.imag]


class VerdictStatus(enum.Enum):
    INFEASIBLE = "infeasible"
    INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    status: VerdictStatus
    report: dict
    witness: dict | None = None
    warnings: list = field(default_factory=list)

    @property
    def infeasible(self):
        return self.status is VerdictStatus.INFEASIBLE


class DataPoint:
    """An interpolation node in the disc with its target matrix.

    The target may be a raw matrix or a JordanSpec; its spectrum must lie
    strictly inside the unit disc.
    """

    __slots__ = ("node", "target")

    def __init__(self, node, target):
        node = require_finite(node, "node")
        if abs(node) >= 1.0:
            raise ValueError(f"node {node} must lie inside the unit disc")
        if not isinstance(target, JordanSpec):
            target = as_matrix(target)
        if not in_spectral_unit_ball(target):
            raise ValueError("target spectrum must lie inside the unit disc")
        self.node = node
        self.target = target

    @property
    def dimension(self):
        if isinstance(self.target, JordanSpec):
            return self.target.dimension
        return self.target.shape[0]

    def spectral_data(self, rank_tol=DEFAULT_RANK_TOL, cluster_tol=DEFAULT_CLUSTER_TOL):
        return minimal_polynomial(self.target, rank_tol=rank_tol, cluster_tol=cluster_tol)


class ThreePointData:
    """Three DataPoints with pairwise distinct nodes and equal dimension."""

    __slots__ = ("points",)

    def __init__(self, points):
        points = tuple(points)
        if len(points) != 3:
            raise ValueError("ThreePointData requires exactly three points")
        nodes = [p.node for p in points]
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(nodes[i] - nodes[j]) <= 1e-12:
                    raise ValueError("interpolation nodes must be pairwise distinct")
        dims = {p.dimension for p in points}
        if len(dims) != 1:
            raise ValueError("all targets must share one dimension")
        if points[0].dimension < 2:
            raise ValueError("matrix dimension must be at least 2")
        self.points = points

    @property
    def dimension(self):
        return self.points[0].dimension


# -- two-point condition -------------------------------------------------


def check_two_point(
    p1,
    p2,
    report_tol=DEFAULT_REPORT_TOL,
    rank_tol=DEFAULT_RANK_TOL,
    cluster_tol=DEFAULT_CLUSTER_TOL,
):
    """Two-point necessary condition.

    Compares max over one spectrum of the Mobius-distance product against
    the other spectrum (with minimal-polynomial exponents, i.e. the modulus
    of the minimal Blaschke product) with the Mobius distance of the nodes.
    """
    if abs(p1.node - p2.node) <= 1e-12:
        raise ValueError("two-point check requires distinct nodes")
    sd1 = p1.spectral_data(rank_tol, cluster_tol)
    sd2 = p2.spectral_data(rank_tol, cluster_tol)
    b1 = minimal_blaschke(sd1)
    b2 = minimal_blaschke(sd2)

    term_21 = max(abs(b1(mu)) for mu in sd2.eigenvalues())
    term_12 = max(abs(b2(lam)) for lam in sd1.eigenvalues())
    lhs = max(term_21, term_12)
    rhs = mobius_distance(p1.node, p2.node)
    margin = lhs - rhs

    report = {
        "condition": "two_point",
        "nodes": [_c(p1.node), _c(p2.node)],
        "spectrum_1": [[_c(lam), m] for lam, m in sd1.entries],
        "spectrum_2": [[_c(lam), m] for lam, m in sd2.entries],
        "term_sigma2_vs_B1": term_21,
        "term_sigma1_vs_B2": term_12,
        "lhs": lhs,
        "rhs": rhs,
        "margin": margin,
    }
    warnings = []
    if abs(margin) <= report_tol:
        warnings.append("borderline: |lhs - rhs| within report tolerance")
    if margin > report_tol:
        witness = {"lhs": lhs, "rhs": rhs, "margin": margin}
        return Verdict(VerdictStatus.INFEASIBLE, report, witness, warnings)
    return Verdict(VerdictStatus.INCONCLUSIVE, report, None, warnings)


# -- three-point condition -----------------------------------------------


def _image_groups(blaschke_prod, spec_data, cluster_tol, drop_tol):
    """Spectrum of B(W) by spectral mapping, grouped into fibers.

    Returns a list of dicts with the image value nu, the fiber members
    (eigenvalue, exponent, ord of B' there), and the exponent
    q = max over the fiber of floor((m-1)/(ord+1)) + 1.
    """
    holo = blaschke_prod.as_holo()
    bprime = holo.derivative()
    images = [holo(lam) for lam, _ in spec_data.entries]
    idx_groups = _cluster_indices(images, cluster_tol)
    groups = []
    for g in sorted(idx_groups, key=lambda g: (images[g[0]].real, images[g[0]].imag)):
        nu = np.mean([images[i] for i in g])
        members = []
        q = 0
        for i in g:
            lam, m = spec_data.entries[i]
            ordv = ord_of_vanishing(bprime, lam, drop_tol=drop_tol)
            members.append({"lambda": _c(lam), "m": m, "ord_bprime": ordv})
            q = max(q, (m - 1) // (ordv + 1) + 1)
        groups.append({"nu": complex(nu), "q": q, "fiber": members})
    return groups


def _cluster_indices(values, tol):
    groups = [[i] for i in range(len(values))]
    merged = True
    while merged:
        merged = False
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                d = min(abs(values[i] - values[j]) for i in groups[a] for j in groups[b])
                if d <= tol:
                    groups[a] += groups[b]
                    del groups[b]
                    merged = True
                    break
            if merged:
                break
    return groups


def q_exponent(
    nu,
    j,
    k,
    data,
    cluster_tol=DEFAULT_CLUSTER_TOL,
    rank_tol=DEFAULT_RANK_TOL,
    drop_tol=DEFAULT_DROP_TOL,
):
    """The exponent q(nu, j, k) of the three-point condition (1-based j, k).

    Maximum of floor((m(j, lam) - 1)/(ord_lam B_k' + 1)) + 1 over the
    eigenvalues lam of W_j that B_k maps to nu.
    """
    if j == k:
        raise ValueError("q_exponent requires j != k")
    nu = require_finite(nu, "nu")
    b_k = minimal_blaschke(data.points[k - 1].spectral_data(rank_tol, cluster_tol))
    sd_j = data.points[j - 1].spectral_data(rank_tol, cluster_tol)
    holo = b_k.as_holo()
    bprime = holo.derivative()
    fiber = [
        (lam, m)
        for lam, m in sd_j.entries
        if abs(holo(lam) - nu) <= max(cluster_tol, 1e-9)
    ]
    if not fiber:
        raise AmbiguityError(
            f"no eigenvalue of W_{j} maps to {nu} under B_{k} at the tolerance"
        )
    return max(
        (m - 1) // (ord_of_vanishing(bprime, lam, drop_tol=drop_tol) + 1) + 1
        for lam, m in fiber
    )


def _containment_status(image_groups, radius, report_tol):
    """Strict containment of the image spectrum in D(0, radius), with a
    borderline band of width report_tol around the circle."""
    max_mod = max(abs(g["nu"]) for g in image_groups)
    if max_mod <= radius - report_tol:
        return "holds", max_mod - radius
    if max_mod >= radius + report_tol:
        return "fails", max_mod - radius
    return "borderline", max_mod - radius


def check_three_point(
    data,
    report_tol=DEFAULT_REPORT_TOL,
    rank_tol=DEFAULT_RANK_TOL,
    cluster_tol=DEFAULT_CLUSTER_TOL,
    drop_tol=DEFAULT_DROP_TOL,
):
    """Three-point necessary condition.

    For each base index k the data must satisfy one of two branches:
    either the rescaled spectra stay inside the disc and the two-sided
    exponent-weighted Mobius product inequality holds, or some rotation
    theta0 makes both Blaschke preimage sets land inside the corresponding
    spectra. Infeasible requires one k at which branch 1 fails beyond
    tolerance and the finite branch-2 candidate search is exhausted.
    """
    spectral = [p.spectral_data(rank_tol, cluster_tol) for p in data.points]
    nodes = [p.node for p in data.points]
    per_k = []
    witness = None
    warnings = []

    for k in (1, 2, 3):
        others = [i for i in (1, 2, 3) if i != k]
        G, L = max(others), min(others)
        b_k = minimal_blaschke(spectral[k - 1])
        psi = {j: disc_automorphism(nodes[k - 1], nodes[j - 1]) for j in (G, L)}
        groups = {
            j: _image_groups(b_k, spectral[j - 1], cluster_tol, drop_tol)
            for j in (G, L)
        }

        containment = {}
        for j in (G, L):
            status, excess = _containment_status(groups[j], abs(psi[j]), report_tol)
            containment[j] = {"status": status, "excess": excess}

        branch1 = {"status": None, "lhs": None, "rhs": None, "margin": None}
        rhs = mobius_distance(nodes[L - 1], nodes[G - 1])
        branch1["rhs"] = rhs
        c_stats = {containment[G]["status"], containment[L]["status"]}
        if c_stats == {"holds"}:
            terms = []
            for mu_side, nu_side in ((L, G), (G, L)):
                best = 0.0
                for gmu in groups[mu_side]:
                    mu_scaled = gmu["nu"] / psi[mu_side]
                    prod = 1.0
                    for gnu in groups[nu_side]:
                        nu_scaled = gnu["nu"] / psi[nu_side]
                        prod *= mobius_distance(mu_scaled, nu_scaled) ** gnu["q"]
                    best = max(best, prod)
                terms.append(best)
            lhs = max(terms)
            branch1["lhs"] = lhs
            branch1["terms"] = terms
            branch1["margin"] = lhs - rhs
            if lhs > rhs + report_tol:
                branch1["status"] = "fails"
            elif lhs <= rhs - report_tol:
                branch1["status"] = "holds"
            else:
                branch1["status"] = "borderline"
        elif "fails" in c_stats:
            branch1["status"] = "fails"
            branch1["margin"] = max(containment[j]["excess"] for j in (G, L))
        else:
            branch1["status"] = "borderline"

        branch2 = _branch2_search(
            b_k, spectral, psi, G, L, report_tol, cluster_tol
        )

        k_entry = {
            "k": k,
            "G": G,
            "L": L,
            "blaschke_zeros": [[_c(z), m] for z, m in b_k.factors],
            "psi": {str(j): _c(psi[j]) for j in (G, L)},
            "images": {
                str(j): [
                    {"nu": _c(g["nu"]), "q": g["q"], "fiber": g["fiber"]}
                    for g in groups[j]
                ]
                for j in (G, L)
            },
            "containment": {str(j): containment[j] for j in (G, L)},
            "branch1": branch1,
            "branch2": branch2,
        }
        per_k.append(k_entry)

        if branch1["status"] == "borderline":
            warnings.append(f"k={k}: branch 1 borderline at report tolerance")
        if branch1["status"] == "fails" and branch2["status"] == "fails" and witness is None:
            witness = {
                "k": k,
                "branch1_margin": branch1["margin"],
                "branch2_candidates": branch2["candidates"],
                "statement": (
                    f"base k={k}: the product inequality is violated by "
                    f"{branch1['margin']:.3e} and no rotation satisfies the "
                    "preimage containments"
                ),
            }

    report = {
        "condition": "three_point",
        "nodes": [_c(z) for z in nodes],
        "spectra": [[[_c(lam), m] for lam, m in sd.entries] for sd in spectral],
        "branches": per_k,
    }
    if witness is not None:
        return Verdict(VerdictStatus.INFEASIBLE, report, witness, warnings)
    return Verdict(VerdictStatus.INCONCLUSIVE, report, None, warnings)


def _branch2_search(b_k, spectral, psi, G, L, report_tol, cluster_tol):
    """Finite search for a rotation theta0 satisfying both preimage
    containments.

    Containment of the (always nonempty) preimage forces the rotated value
    to be an eigenvalue image, so candidates come from the spectrum of the
    G-side target; each is verified against both containments.
    """
    holo = b_k.as_holo()
    band = max(1e-6, 10 * cluster_tol)
    cand = []
    for lam, _ in spectral[G - 1].entries:
        val = holo(lam)
        if abs(abs(val) - abs(psi[G])) <= band and abs(val) > 0:
            u = val / psi[G]
            u /= abs(u)
            if all(abs(u - u0) > cluster_tol for u0 in cand):
                cand.append(u)
    result = {
        "status": "fails",
        "theta0": None,
        "candidates": [_c(u) for u in cand],
    }
    for u in cand:
        ok = True
        for j in (G, L):
            pre = preimage(b_k, u * psi[j], cluster_tol=cluster_tol)
            eigs = spectral[j - 1].eigenvalues()
            for root in pre.roots():
                if min(abs(root - e) for e in eigs) > max(cluster_tol, 1e-8):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            result["status"] = "holds"
            result["theta0"] = float(np.angle(u))
            break
    return result


# -- Hausdorff-form condition --------------------------------------------


def check_baribeau_kamara(
    data,
    base_index=1,
    nu_override=None,
    report_tol=DEFAULT_REPORT_TOL,
    rank_tol=DEFAULT_RANK_TOL,
    cluster_tol=DEFAULT_CLUSTER_TOL,
):
    """Hausdorff-distance necessary condition with base point k.

    Compares the Mobius-Hausdorff distance between the in-disc parts of
    the two rescaled image spectra with M(nodes)^(1/nu). The exponent nu
    depends on the unknown interpolant, so it defaults to the dimension n,
    the weakest always-valid choice; nu_override substitutes any positive
    integer for experiments.
    """
    if base_index not in (1, 2, 3):
        raise ValueError("base_index must be 1, 2, or 3")
    n = data.dimension
    nu = int(nu_override) if nu_override is not None else n
    if nu < 1:
        raise ValueError("nu must be a positive integer")

    base = data.points[base_index - 1]
    other_idx = [i for i in (1, 2, 3) if i != base_index]
    b_base = minimal_blaschke(base.spectral_data(rank_tol, cluster_tol))
    holo = b_base.as_holo()

    sets = {}
    excluded = {}
    for j in other_idx:
        pt = data.points[j - 1]
        psi_val = disc_automorphism(base.node, pt.node)
        vals = [
            holo(lam) / psi_val
            for lam in pt.spectral_data(rank_tol, cluster_tol).eigenvalues()
        ]
        distinct = []
        for v in sorted(vals, key=lambda z: (z.real, z.imag)):
            if all(abs(v - u) > cluster_tol for u in distinct):
                distinct.append(v)
        inside = [v for v in distinct if abs(v) < 1.0 - report_tol]
        sets[j] = inside
        excluded[j] = [v for v in distinct if abs(v) >= 1.0 - report_tol]

    report = {
        "condition": "baribeau_kamara",
        "base_index": base_index,
        "nu": nu,
        "nodes": [_c(p.node) for p in data.points],
        "scaled_spectra": {str(j): [_c(v) for v in sets[j]] for j in other_idx},
        "boundary_excluded": {str(j): [_c(v) for v in excluded[j]] for j in other_idx},
        "note": (
            "hypothesis on the rescaled spectra is checked only at the two "
            "non-base nodes, not on the whole disc"
        ),
    }
    warnings = []
    if any(not sets[j] for j in other_idx):
        warnings.append(
            "hypothesis failure: a rescaled spectrum lies entirely on the "
            "boundary circle; the condition does not apply"
        )
        report.update({"lhs": None, "rhs": None, "margin": None})
        return Verdict(VerdictStatus.INCONCLUSIVE, report, None, warnings)

    lhs = hausdorff_distance(sets[other_idx[0]], sets[other_idx[1]], mobius_distance)
    rhs = mobius_distance(
        data.points[other_idx[0] - 1].node, data.points[other_idx[1] - 1].node
    ) ** (1.0 / nu)
    margin = lhs - rhs
    report.update({"lhs": lhs, "rhs": rhs, "margin": margin})
    if abs(margin) <= report_tol:
        warnings.append("borderline: |lhs - rhs| within report tolerance")
    if margin > report_tol:
        witness = {"lhs": lhs, "rhs": rhs, "margin": margin, "nu": nu}
        return Verdict(VerdictStatus.INFEASIBLE, report, witness, warnings)
    return Verdict(VerdictStatus.INCONCLUSIVE, report, None, warnings)


# -- example-class generator ----------------------------------------------


def _nilpotent(n):
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(1, n):
        out[i, i - 1] = 1.0
    return out


def generate_example(n, a, b, beta=None, alpha=None, report_tol=DEFAULT_REPORT_TOL):
    """Three-point data separating the exponent-weighted condition from the
    Hausdorff-form one.

    Builds {(0, 0), (a, A), (b, B)} with A a two-step nilpotent combination
    (minimal polynomial t^2, not non-derogatory for n >= 4) and B diagonal
    with entries engineered so the three-point check certifies
    infeasibility while the Hausdorff and two-point checks stay silent.
    Returns (ThreePointData, constraint report).
    """
    n = int(n)
    if n < 4:
        raise ValueError("the example class requires n >= 4")
    a = require_finite(a, "a")
    b = require_finite(b, "b")
    if abs(a) >= 1.0 or abs(b) >= 1.0:
        raise ValueError("a and b must lie inside the unit disc")
    if abs(a) == 0 or abs(b) == 0 or abs(a - b) <= 1e-12:
        raise ValueError("a, b must be nonzero and distinct")

    m_ab = mobius_distance(a, b)

    if alpha is None:
        alpha = [0.0] * n
        alpha[n - 2] = 0.5
    alpha = [complex(x) for x in alpha]
    if len(alpha) != n:
        raise ConstraintError(
            f"alpha must have exactly n={n} coefficients", bullet="alpha_length"
        )
    if any(abs(alpha[j]) > 1e-12 for j in range(n - 2)):
        raise ConstraintError(
            "alpha_j must vanish for j <= n-3", bullet="alpha_pattern"
        )
    if abs(alpha[n - 2]) <= 1e-12:
        raise ConstraintError("alpha_{n-2} must be nonzero", bullet="alpha_pattern")

    N = _nilpotent(n)
    A = np.zeros((n, n), dtype=np.complex128)
    P = np.eye(n, dtype=np.complex128)
    for j in range(n):
        A += alpha[j] * P
        P = P @ N
    # alpha_0 = 0 by the pattern check, so A is nilpotent

    lo = abs(b) * m_ab**0.5
    hi = min(abs(b) * m_ab ** (1.0 / n), abs(b) ** (1.0 / (2 * n)) * m_ab**0.5)
    auto = beta is None
    if auto:
        if not lo < hi:
            raise ConstraintError(
                f"selection interval ({lo:.6g}, {hi:.6g}] is empty",
                bullet="interval",
            )
        # strictly interior picks keep every comparison away from equality
        beta = [0.0] + [lo + (hi - lo) * i / n for i in range(1, n)]
    beta = [complex(x) for x in beta]
    if len(beta) != n:
        raise ConstraintError(f"beta must have exactly n={n} entries", bullet="beta_length")

    bullets = []

    def bullet(name, holds, detail):
        bullets.append({"name": name, "holds": bool(holds), "detail": detail})
        if not holds:
            raise ConstraintError(f"constraint violated: {name} ({detail})", bullet=name)

    bullet("beta1_zero", abs(beta[0]) <= 1e-12, f"|beta_1| = {abs(beta[0]):.3e}")
    distinct = all(
        abs(beta[i] - beta[j]) > 1e-12 for i in range(n) for j in range(i + 1, n)
    )
    bullet("beta_distinct", distinct, "pairwise distinct entries")
    sq_distinct = all(
        abs(beta[i] ** 2 - beta[j] ** 2) > 1e-12
        for i in range(n)
        for j in range(i + 1, n)
    )
    bullet("beta_squares_distinct", sq_distinct, "pairwise distinct squares")
    bullet(
        "modulus_below_b",
        all(abs(x) < abs(b) for x in beta),
        f"max |beta| = {max(abs(x) for x in beta):.6g} vs |b| = {abs(b):.6g}",
    )
    bullet(
        "square_below_mobius",
        all(abs(x) ** 2 < m_ab for x in beta),
        f"max |beta|^2 = {max(abs(x) ** 2 for x in beta):.6g} vs M(a,b) = {m_ab:.6g}",
    )
    bullet(
        "tail_below_min_bound",
        all(abs(x) <= hi + 1e-12 for x in beta[1:]),
        f"max tail |beta| = {max(abs(x) for x in beta[1:]):.6g} vs bound {hi:.6g}",
    )
    bullet(
        "witness_above_sqrt_bound",
        any(abs(x) > lo for x in beta[1:]),
        f"need some |beta_i| > {lo:.6g}",
    )

    zero = np.zeros((n, n), dtype=np.complex128)
    data = ThreePointData(
        [
            DataPoint(0.0, zero),
            DataPoint(a, A),
            DataPoint(b, np.diag(beta).astype(np.complex128)),
        ]
    )
    report = {
        "n": n,
        "a": _c(a),
        "b": _c(b),
        "mobius_ab": m_ab,
        "alpha": [_c(x) for x in alpha],
        "beta": [_c(x) for x in beta],
        "auto_selected_beta": auto,
        "selection_interval": [lo, hi],
        "bullets": bullets,
    }
    return data, report
