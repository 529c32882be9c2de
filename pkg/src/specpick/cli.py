"""Command-line front end: JSON in, JSON report out, exit codes 0/1/2.

Exit code contract: 0 means the run completed and no infeasibility was
certified; 2 is reserved for a certified Infeasible verdict (or, for the
batch commands, a detected violation of a bound that is a theorem, which
would indicate a bug); 1 is any input or numeric error. Every execution
prints a JSON report to stdout; diagnostics go to stderr.

Complex numbers travel as [re, im] pairs. Matrices are flat row-major
lists of such pairs. Jordan data is {"blocks": [{"lambda": [re, im],
"sizes": [..]}]}.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import conditions, correspondence, funcalc, matrixspec, sampling
from .errors import SpecpickError
from .polyalg import ComplexPolynomial

DEFAULT_SEED = 170525


class InputError(Exception):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class RunConfig:
    cluster_tol: float = 1e-7
    rank_tol: float = 1e-8
    report_tol: float = 1e-9
    properness_margin: float = 1e-3
    max_iter: int = 200
    seed: int = DEFAULT_SEED

    def validate(self):
        for name in ("cluster_tol", "rank_tol", "report_tol", "properness_margin"):
            if getattr(self, name) <= 0:
                raise InputError(f"config.{name}", "must be positive")
        if self.max_iter < 1:
            raise InputError("config.max_iter", "must be >= 1")


# -- JSON parsing helpers -------------------------------------------------


def _expect(cond, path, message):
    if not cond:
        raise InputError(path, message)


def parse_complex(obj, path):
    _expect(
        isinstance(obj, (list, tuple)) and len(obj) == 2,
        path,
        "expected a [re, im] pair",
    )
    re_part, im_part = obj
    _expect(
        isinstance(re_part, (int, float)) and isinstance(im_part, (int, float)),
        path,
        "components must be numbers",
    )
    return complex(re_part, im_part)


def parse_matrix(obj, path):
    _expect(isinstance(obj, list) and obj, path, "expected a nonempty list of [re, im] pairs")
    n = int(round(len(obj) ** 0.5))
    _expect(n * n == len(obj), path, f"length {len(obj)} is not a perfect square")
    entries = [parse_complex(e, f"{path}[{i}]") for i, e in enumerate(obj)]
    return np.array(entries, dtype=np.complex128).reshape(n, n)


def parse_jordan(obj, path):
    _expect(isinstance(obj, list) and obj, path, "expected a nonempty list of blocks")
    blocks = []
    for i, blk in enumerate(obj):
        bp = f"{path}[{i}]"
        _expect(isinstance(blk, dict), bp, "expected a block object")
        _expect("lambda" in blk, f"{bp}.lambda", "missing eigenvalue")
        _expect("sizes" in blk, f"{bp}.sizes", "missing block sizes")
        lam = parse_complex(blk["lambda"], f"{bp}.lambda")
        sizes = blk["sizes"]
        _expect(
            isinstance(sizes, list) and all(isinstance(s, int) and s > 0 for s in sizes),
            f"{bp}.sizes",
            "expected a list of positive integers",
        )
        blocks.append((lam, sizes))
    try:
        return matrixspec.JordanSpec(blocks)
    except ValueError as exc:
        raise InputError(path, str(exc)) from exc


def parse_target(obj, path):
    if "matrix" in obj:
        return parse_matrix(obj["matrix"], f"{path}.matrix")
    if "blocks" in obj:
        return parse_jordan(obj["blocks"], f"{path}.blocks")
    raise InputError(path, "expected a 'matrix' or 'blocks' target")


def parse_datapoint(obj, path):
    _expect(isinstance(obj, dict), path, "expected an object")
    _expect("node" in obj, f"{path}.node", "missing node")
    node = parse_complex(obj["node"], f"{path}.node")
    target = parse_target(obj, path)
    try:
        return conditions.DataPoint(node, target)
    except ValueError as exc:
        raise InputError(path, str(exc)) from exc


def parse_points(doc, path, count):
    _expect(isinstance(doc, dict), path, "expected a JSON object")
    _expect("points" in doc, f"{path}.points", "missing points array")
    pts = doc["points"]
    _expect(
        isinstance(pts, list) and len(pts) == count,
        f"{path}.points",
        f"expected exactly {count} points",
    )
    return [parse_datapoint(p, f"{path}.points[{i}]") for i, p in enumerate(pts)]


def parse_holo(obj, path):
    _expect(isinstance(obj, dict), path, "expected an object describing f")
    kind = obj.get("kind")
    if kind == "polynomial":
        _expect("coeffs" in obj, f"{path}.coeffs", "missing coefficients")
        coeffs = [
            parse_complex(c, f"{path}.coeffs[{i}]") for i, c in enumerate(obj["coeffs"])
        ]
        return funcalc.HoloFn.from_polynomial(coeffs)
    if kind == "blaschke":
        _expect("factors" in obj, f"{path}.factors", "missing factors")
        factors = []
        for i, fac in enumerate(obj["factors"]):
            fp = f"{path}.factors[{i}]"
            _expect(isinstance(fac, dict) and "zero" in fac and "mult" in fac, fp,
                    "expected {zero, mult}")
            factors.append(
                (parse_complex(fac["zero"], f"{fp}.zero"), int(fac["mult"]))
            )
        try:
            return funcalc.HoloFn.from_blaschke(factors)
        except ValueError as exc:
            raise InputError(path, str(exc)) from exc
    raise InputError(f"{path}.kind", "expected 'polynomial' or 'blaschke'")


def parse_correspondence(doc, path):
    _expect(isinstance(doc, dict), path, "expected a JSON object")
    _expect("degree" in doc, f"{path}.degree", "missing degree")
    degree = doc["degree"]
    _expect(isinstance(degree, int) and degree >= 1, f"{path}.degree",
            "degree must be a positive integer")
    _expect("coeffs" in doc, f"{path}.coeffs", "missing coefficient functions")
    coeffs_doc = doc["coeffs"]
    _expect(
        isinstance(coeffs_doc, list) and len(coeffs_doc) == degree,
        f"{path}.coeffs",
        f"expected {degree} coefficient polynomials",
    )
    coeffs = []
    for j, cj in enumerate(coeffs_doc):
        cp = f"{path}.coeffs[{j}]"
        _expect(isinstance(cj, list), cp, "expected a coefficient list")
        coeffs.append(
            ComplexPolynomial([parse_complex(c, f"{cp}[{i}]") for i, c in enumerate(cj)])
        )
    dom = correspondence.DiscDomain()
    if "domain" in doc:
        dd = doc["domain"]
        _expect(isinstance(dd, dict), f"{path}.domain", "expected an object")
        center = parse_complex(dd.get("center", [0.0, 0.0]), f"{path}.domain.center")
        radius = dd.get("radius", 1.0)
        _expect(isinstance(radius, (int, float)) and radius > 0,
                f"{path}.domain.radius", "radius must be positive")
        dom = correspondence.DiscDomain(center, float(radius))
    return correspondence.Correspondence(degree, coeffs, dom)


# -- report plumbing ------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, conditions.VerdictStatus):
        return obj.value
    return obj


def _digest(doc):
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()


def _matrix_out(m):
    return [[v.real, v.imag] for v in np.asarray(m).ravel()]


def emit(report, stream=None):
    print(json.dumps(_jsonable(report), sort_keys=True), file=stream or sys.stdout)


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(path, f"cannot read input: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(path, f"invalid JSON: {exc}") from exc


# -- commands --------------------------------------------------------------


def cmd_check2(args, cfg):
    doc = _load(args.input)
    p1, p2 = parse_points(doc, "$", 2)
    verdict = conditions.check_two_point(
        p1,
        p2,
        report_tol=cfg.report_tol,
        rank_tol=cfg.rank_tol,
        cluster_tol=cfg.cluster_tol,
    )
    report = {
        "command": "check2",
        "config": asdict(cfg),
        "inputs_digest": _digest(doc),
        "verdict": verdict.status.value,
        "witness": verdict.witness,
        "intermediates": verdict.report,
        "warnings": verdict.warnings,
    }
    emit(report)
    return 2 if verdict.infeasible else 0


def cmd_check3(args, cfg):
    doc = _load(args.input)
    pts = parse_points(doc, "$", 3)
    data = conditions.ThreePointData(pts)
    if args.bk:
        verdict = conditions.check_baribeau_kamara(
            data,
            base_index=args.base,
            nu_override=args.nu,
            report_tol=cfg.report_tol,
            rank_tol=cfg.rank_tol,
            cluster_tol=cfg.cluster_tol,
        )
    else:
        verdict = conditions.check_three_point(
            data,
            report_tol=cfg.report_tol,
            rank_tol=cfg.rank_tol,
            cluster_tol=cfg.cluster_tol,
        )
    report = {
        "command": "check3",
        "mode": "baribeau_kamara" if args.bk else "three_point",
        "config": asdict(cfg),
        "inputs_digest": _digest(doc),
        "verdict": verdict.status.value,
        "witness": verdict.witness,
        "intermediates": verdict.report,
        "warnings": verdict.warnings,
    }
    emit(report)
    return 2 if verdict.infeasible else 0


def cmd_example(args, cfg):
    try:
        a = complex(args.a)
        b = complex(args.b)
    except ValueError as exc:
        raise InputError("a/b", f"cannot parse complex literal: {exc}") from exc
    beta = None
    if args.beta is not None:
        beta_doc = json.loads(args.beta)
        beta = [parse_complex(x, f"beta[{i}]") if isinstance(x, list) else complex(x)
                for i, x in enumerate(beta_doc)]
    alpha = None
    if args.alpha is not None:
        alpha_doc = json.loads(args.alpha)
        alpha = [parse_complex(x, f"alpha[{i}]") if isinstance(x, list) else complex(x)
                 for i, x in enumerate(alpha_doc)]
    try:
        data, constraint_report = conditions.generate_example(
            args.n, a, b, beta=beta, alpha=alpha, report_tol=cfg.report_tol
        )
    except ValueError as exc:
        raise InputError("n/a/b", str(exc)) from exc

    doc = {
        "points": [
            {
                "node": [p.node.real, p.node.imag],
                "matrix": _matrix_out(matrixspec.as_matrix(p.target)),
            }
            for p in data.points
        ]
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(_jsonable(doc), fh, sort_keys=True, indent=2)
    report = {
        "command": "example",
        "config": asdict(cfg),
        "constraints": constraint_report,
        "output_file": args.out,
        "data": doc if not args.out else None,
    }
    emit(report)
    return 0


def cmd_funcalc(args, cfg):
    doc = _load(args.input)
    _expect(isinstance(doc, dict), "$", "expected a JSON object")
    rng = np.random.default_rng(cfg.seed)

    if args.oracle:
        mismatches = 0
        trials = []
        for i in range(args.oracle):
            spec, f = sampling.oracle_case(rng)
            predicted = funcalc.predicted_minpoly(f, spec.spectral_data(),
                                                  cluster_tol=cfg.cluster_tol)
            computed = matrixspec.minimal_polynomial(
                funcalc.apply(f, spec),
                rank_tol=cfg.rank_tol,
                cluster_tol=cfg.cluster_tol,
            )
            match = predicted.matches(computed, 1e-6)
            mismatches += 0 if match else 1
            trials.append(
                {
                    "trial": i,
                    "match": match,
                    "predicted": [[lam.real, lam.imag, m] for lam, m in predicted.entries],
                    "computed": [[lam.real, lam.imag, m] for lam, m in computed.entries],
                }
            )
        report = {
            "command": "funcalc",
            "mode": "oracle",
            "config": asdict(cfg),
            "inputs_digest": _digest(doc),
            "trials": args.oracle,
            "mismatches": mismatches,
            "cases": trials if mismatches else trials[:5],
        }
        emit(report)
        return 1 if mismatches else 0

    _expect("f" in doc, "$.f", "missing function description")
    f = parse_holo(doc["f"], "$.f")
    target = parse_target(doc, "$")
    try:
        data = matrixspec.minimal_polynomial(
            target, rank_tol=cfg.rank_tol, cluster_tol=cfg.cluster_tol
        )
        f_of_a = funcalc.apply(f, target, rank_tol=cfg.rank_tol,
                               cluster_tol=cfg.cluster_tol)
        predicted = funcalc.predicted_minpoly(f, data, cluster_tol=cfg.cluster_tol)
        computed = matrixspec.minimal_polynomial(
            f_of_a, rank_tol=cfg.rank_tol, cluster_tol=cfg.cluster_tol
        )
    except ValueError as exc:
        raise InputError("$", str(exc)) from exc
    match = predicted.matches(computed, 1e-6)
    report = {
        "command": "funcalc",
        "config": asdict(cfg),
        "inputs_digest": _digest(doc),
        "f_of_a": _matrix_out(f_of_a),
        "input_minimal_polynomial": [[lam.real, lam.imag, m] for lam, m in data.entries],
        "predicted_minimal_polynomial": [
            [lam.real, lam.imag, m] for lam, m in predicted.entries
        ],
        "computed_minimal_polynomial": [
            [lam.real, lam.imag, m] for lam, m in computed.entries
        ],
        "match": match,
    }
    emit(report)
    return 0 if match else 1


def cmd_corres(args, cfg):
    doc = _load(args.input)
    corr = parse_correspondence(doc, "$")
    cert = correspondence.validate_properness(corr, margin=cfg.properness_margin)
    if not cert.ok:
        report = {
            "command": "corres",
            "config": asdict(cfg),
            "inputs_digest": _digest(doc),
            "properness": {
                "ok": False,
                "min_margin": cert.min_margin,
                "grid": list(cert.grid),
                "violation_z": [cert.violation[0].real, cert.violation[0].imag],
                "violation_w": [cert.violation[1].real, cert.violation[1].imag],
            },
        }
        emit(report)
        print("properness violation; refusing to sweep", file=sys.stderr)
        return 1

    rng = np.random.default_rng(cfg.seed)
    slack71 = []
    slack14 = []
    consistency = []
    for _ in range(args.pairs):
        z1, z2 = sampling.distinct_nodes(rng, 2, radius=0.95, min_sep=1e-3)
        r_prod = correspondence.check_schwarz_product(
            corr, z1, z2, cluster_tol=cfg.cluster_tol
        )
        r_haus = correspondence.check_schwarz_hausdorff(
            corr, z1, z2, cluster_tol=cfg.cluster_tol
        )
        slack71.append(r_prod.slack)
        slack14.append(r_haus.slack)
        consistency.append(
            r_haus.lhs ** corr.degree
            - max(r_prod.detail["directed_2_vs_1"], r_prod.detail["directed_1_vs_2"])
        )
    csv_lines = ["product_slack,hausdorff_slack,consistency_excess"]
    csv_lines += [f"{a!r},{b!r},{c!r}" for a, b, c in zip(slack71, slack14, consistency)]
    report = {
        "command": "corres",
        "config": asdict(cfg),
        "inputs_digest": _digest(doc),
        "properness": {
            "ok": True,
            "min_margin": cert.min_margin,
            "grid": list(cert.grid),
        },
        "pairs": args.pairs,
        "min_product_slack": min(slack71) if slack71 else None,
        "min_hausdorff_slack": min(slack14) if slack14 else None,
        "max_consistency_excess": max(consistency) if consistency else None,
        "slack_csv": "\n".join(csv_lines),
    }
    emit(report)
    bound_violated = (slack71 and min(slack71) < -1e-9) or (
        slack14 and min(slack14) < -1e-9
    )
    return 2 if bound_violated else 0


# -- entry point ------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cluster-tol", type=float, default=1e-7)
    common.add_argument("--rank-tol", type=float, default=1e-8)
    common.add_argument("--report-tol", type=float, default=1e-9)
    common.add_argument("--properness-margin", type=float, default=1e-3)
    common.add_argument("--max-iter", type=int, default=200)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="sampling seed (SPECPICK_SEED env overrides)")

    parser = argparse.ArgumentParser(
        prog="specpick",
        description=(
            "Necessary-condition certificates for 2- and 3-point spectral "
            "Pick interpolation and Schwarz bounds for holomorphic "
            "correspondences"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p2 = sub.add_parser("check2", parents=[common],
                        help="two-point feasibility certificate")
    p2.add_argument("input")
    p2.set_defaults(func=cmd_check2)

    p3 = sub.add_parser("check3", parents=[common],
                        help="three-point feasibility certificate")
    p3.add_argument("input")
    p3.add_argument("--bk", action="store_true",
                    help="run the Hausdorff-form condition instead")
    p3.add_argument("--base", type=int, default=1, choices=(1, 2, 3))
    p3.add_argument("--nu", type=int, default=None)
    p3.set_defaults(func=cmd_check3)

    pe = sub.add_parser("example", parents=[common],
                        help="generate the separating example class")
    pe.add_argument("n", type=int)
    pe.add_argument("a")
    pe.add_argument("b")
    pe.add_argument("--beta", default=None, help="JSON list of beta entries")
    pe.add_argument("--alpha", default=None, help="JSON list of alpha coefficients")
    pe.add_argument("--out", default=None, help="write the data set to this file")
    pe.set_defaults(func=cmd_example)

    pf = sub.add_parser("funcalc", parents=[common],
                        help="evaluate f(A) and its minimal polynomial")
    pf.add_argument("input")
    pf.add_argument("--oracle", type=int, default=0,
                    help="run N random predicted-vs-computed trials")
    pf.set_defaults(func=cmd_funcalc)

    pc = sub.add_parser("corres", parents=[common],
                        help="Schwarz bounds for a correspondence")
    pc.add_argument("input")
    pc.add_argument("--pairs", type=int, default=1000)
    pc.set_defaults(func=cmd_corres)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    seed_env = os.environ.get("SPECPICK_SEED")
    cfg = RunConfig(
        cluster_tol=args.cluster_tol,
        rank_tol=args.rank_tol,
        report_tol=args.report_tol,
        properness_margin=args.properness_margin,
        max_iter=args.max_iter,
        seed=int(seed_env) if seed_env is not None else args.seed,
    )
    try:
        cfg.validate()
        return args.func(args, cfg)
    except InputError as exc:
        emit({"command": args.command, "error": {"type": "input", "path": exc.path,
                                                 "message": str(exc)}})
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except SpecpickError as exc:
        emit({"command": args.command,
              "error": {"type": type(exc).__name__, "message": str(exc)}})
        print(f"numeric error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        emit({"command": args.command,
              "error": {"type": "value", "message": str(exc)}})
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
