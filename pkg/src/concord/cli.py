"""Command-line interface.

Exit codes: 0 on success, 2 on usage/validation errors, 3 on infeasibility
verdicts, so scripts can branch on attainability.  Numeric flags accept
exact fractions ("7/24") to keep boundary feasibility tests sharp.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import jsonio
from .attainability import (
    PartialSignature,
    bound_missing,
    check_attainable,
    enumerate_vertices,
    project_vertices,
)
from .amatrix import build_A_matrix
from .elliptical import McConfig, elliptical_signature, t_limit_weights
from .equiconcordant import (
    SkeletalSignature,
    b_matrix_fractions,
    build_B_matrix,
    skeletal_solve,
)
from .errors import ConcordError, InfeasibleError, NotAttainableError
from .estimation import empirical_signature, empirical_signature_ties, ingest_csv
from .reproduce import run_reproduction
from .sampler import sample_mixture, validate_mixture
from .signatures import EvenSignature, extend_to_full, signature_from_weights, weights_from_signature
from .subsets import even_power_set

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def parse_number(text: str) -> float:
    """Exact fraction or decimal literal."""
    return float(Fraction(text))


def parse_number_list(text: str) -> list[float]:
    return [parse_number(tok) for tok in text.split(",") if tok.strip()]


def parse_subset(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _emit(doc, args) -> None:
    text = json.dumps(doc, indent=2)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _partial_from_args(args) -> PartialSignature:
    if getattr(args, "signature", None):
        return jsonio.partial_signature_from_json(_load_json(args.signature))
    if getattr(args, "pairs", None) is not None:
        if args.d is None:
            raise ConcordError("--pairs requires --d")
        return PartialSignature.from_pairs(args.d, parse_number_list(args.pairs))
    raise ConcordError("provide --signature FILE or --d with --pairs LIST")


def _matrix_from_args(args) -> np.ndarray:
    doc = _load_json(args.matrix)
    return jsonio.matrix_from_json(doc)


def cmd_amatrix(args) -> int:
    A = build_A_matrix(args.d)
    doc = {
        "d": args.d,
        "labels": [list(s) for s in even_power_set(args.d)],
        "matrix": A.astype(int).tolist(),
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_bmatrix(args) -> int:
    B = build_B_matrix(args.d)
    doc = {
        "d": args.d,
        "matrix": jsonio.matrix_to_json(B),
        "fractions": [[str(x) for x in row] for row in b_matrix_fractions(args.d)],
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_solve(args) -> int:
    sig = jsonio.even_signature_from_json(_load_json(args.signature))
    try:
        w = weights_from_signature(sig)
    except NotAttainableError as err:
        print(f"not attainable: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    _emit(jsonio.weights_to_json(w), args)
    return EXIT_OK


def cmd_signature(args) -> int:
    w = jsonio.weights_from_json(_load_json(args.weights))
    even = signature_from_weights(w)
    doc = jsonio.signature_to_json(extend_to_full(even) if args.full else even)
    _emit(doc, args)
    return EXIT_OK


def cmd_check(args) -> int:
    partial = _partial_from_args(args)
    cert = check_attainable(partial)
    doc = {
        "feasible": cert.feasible,
        "phase1_objective": cert.phase1_objective,
    }
    if cert.witness is not None:
        doc["witness"] = jsonio.weights_to_json(cert.witness)
    if cert.infeasibility_reason:
        doc["reason"] = cert.infeasibility_reason
    _emit(doc, args)
    if not cert.feasible:
        print("not attainable", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_bounds(args) -> int:
    partial = _partial_from_args(args)
    targets = [parse_subset(t) for t in args.target]
    try:
        report = bound_missing(partial, targets, norm_objective=args.norm_objective)
    except InfeasibleError as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    _emit(jsonio.bounds_report_to_json(report), args)
    return EXIT_OK


def cmd_vertices(args) -> int:
    partial = _partial_from_args(args)
    try:
        polytope = enumerate_vertices(partial, cap_dim=args.cap_dim)
    except InfeasibleError as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    projection = None
    targets = [parse_subset(t) for t in args.target] if args.target else None
    if targets:
        projection = project_vertices(polytope, targets)
    _emit(jsonio.polytope_to_json(polytope, projection, targets), args)
    return EXIT_OK


def cmd_estimate(args) -> int:
    data = ingest_csv(
        args.data,
        log_returns=args.log_returns,
        header=True if args.header else "auto",
    )
    est = empirical_signature_ties(data) if args.ties else empirical_signature(data)
    doc = jsonio.signature_to_json(est.even)
    doc.update(
        {
            "weights": jsonio.weights_to_json(est.weights),
            "n": est.n,
            "tie_adjusted": est.tie_adjusted,
        }
    )
    _emit(doc, args)
    return EXIT_OK


def cmd_elliptical(args) -> int:
    P = _matrix_from_args(args)
    mc = McConfig(samples=args.mc_samples, seed=args.seed)
    res = elliptical_signature(P, mc)
    doc = jsonio.signature_to_json(res.signature)
    doc.update(
        {
            "std_errors": [e.std_error for e in res.estimates],
            "method": [e.method for e in res.estimates],
            "weights": jsonio.weights_to_json(res.weights),
            "projected_values": res.projected.values.tolist(),
        }
    )
    _emit(doc, args)
    return EXIT_OK


def cmd_tlimit(args) -> int:
    P = _matrix_from_args(args)
    mc = McConfig(samples=args.mc_samples, seed=args.seed)
    res = t_limit_weights(P, mode=args.mode, mc=mc)
    doc = jsonio.weights_to_json(res.weights)
    doc["mode"] = res.mode
    if res.std_errors is not None:
        doc["std_errors"] = res.std_errors.tolist()
    _emit(doc, args)
    return EXIT_OK


def cmd_skeletal(args) -> int:
    sk = SkeletalSignature.create(args.d, parse_number_list(args.k))
    sol = skeletal_solve(sk)
    doc = {
        "d": args.d,
        "v": sol.v.tolist(),
        "attainable": sol.attainable,
    }
    if sol.group_weights is not None:
        doc["group_weights"] = sol.group_weights.tolist()
    _emit(doc, args)
    if not sol.attainable:
        print("not attainable", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_sample(args) -> int:
    w = jsonio.weights_from_json(_load_json(args.weights))
    sample = sample_mixture(w, args.n, args.seed)
    if args.format == "json":
        _emit({"values": sample.values.tolist(), "seed": args.seed}, args)
    else:
        text = jsonio.samples_to_csv(sample.values)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    data = ingest_csv(args.data, header=True if args.header else "auto")
    report = validate_mixture(data.values, level=args.level)
    doc = {
        "n": report.n,
        "on_diagonal_fraction": report.on_diagonal_fraction,
        "ks_pvalues": {str(k): v for k, v in report.ks_pvalues.items()},
        "uniformity_tested": report.uniformity_tested,
        "passed": report.passed,
    }
    _emit(doc, args)
    return EXIT_OK if report.passed else EXIT_INFEASIBLE


def cmd_reproduce(args) -> int:
    ok, checks = run_reproduction(args.out, mc_samples=args.mc_samples, seed=args.seed)
    for c in checks:
        status = "ok" if c.ok else "FAIL"
        print(f"[{status}] {c.name}: max_err={c.max_err:.3g} tol={c.tol:.3g} {c.detail}")
    print(f"report written to {args.out}")
    return EXIT_OK if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concord",
        description="Attainability and completion of concordance signatures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write JSON here instead of stdout")
        return p

    p = add("amatrix", cmd_amatrix, "print the coefficient matrix A_d")
    p.add_argument("--d", type=int, required=True)

    p = add("bmatrix", cmd_bmatrix, "print the collapsed equiconcordant matrix B_d")
    p.add_argument("--d", type=int, required=True)

    p = add("solve", cmd_solve, "weights from a complete even signature")
    p.add_argument("--signature", required=True, help="signature JSON file")

    p = add("signature", cmd_signature, "even (or full) signature of a weight vector")
    p.add_argument("--weights", required=True, help="weights JSON file")
    p.add_argument("--full", action="store_true", help="include odd cardinalities")

    for name, func, help_text in [
        ("check", cmd_check, "test attainability of a partial signature"),
        ("bounds", cmd_bounds, "bounds for missing concordance probabilities"),
        ("vertices", cmd_vertices, "vertices of the feasible weight polytope"),
    ]:
        p = add(name, func, help_text)
        p.add_argument("--signature", help="partial signature JSON file")
        p.add_argument("--d", type=int, help="dimension (with --pairs)")
        p.add_argument("--pairs", help="comma list of pair values, lexicographic")
        if name == "bounds":
            p.add_argument("--target", action="append", required=True,
                           help="target subset like 1,2,3,4 (repeatable)")
            p.add_argument("--norm-objective", action="store_true",
                           help="also solve the joint norm objective by Frank-Wolfe")
        if name == "vertices":
            p.add_argument("--target", action="append",
                           help="project vertices onto these subsets")
            p.add_argument("--cap-dim", type=int, default=6)

    p = add("estimate", cmd_estimate, "estimate a signature from CSV data")
    p.add_argument("--data", required=True, help="CSV file path")
    p.add_argument("--log-returns", action="store_true")
    p.add_argument("--ties", action="store_true", help="use the tie-splitting estimator")
    p.add_argument("--header", action="store_true", help="force header row")

    p = add("elliptical", cmd_elliptical, "signature of an elliptical copula")
    p.add_argument("--matrix", required=True, help="correlation matrix JSON file")
    p.add_argument("--mc-samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)

    p = add("tlimit", cmd_tlimit, "heavy-tail limit mixture weights")
    p.add_argument("--matrix", required=True)
    p.add_argument("--mode", choices=["analytic", "monte_carlo"], default="analytic")
    p.add_argument("--mc-samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)

    p = add("skeletal", cmd_skeletal, "solve the collapsed equiconcordant system")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", required=True, help="comma list: kappa_0, kappa_2, ...")

    p = add("sample", cmd_sample, "sample from an extremal mixture")
    p.add_argument("--weights", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = add("validate", cmd_validate, "mixture diagnostics for a sample CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--level", type=float, default=0.05)
    p.add_argument("--header", action="store_true")

    p = add("reproduce", cmd_reproduce, "regenerate the bundled case studies")
    p.set_defaults(out="reproduction")
    p.add_argument("--mc-samples", type=int, default=10_000_000)
    p.add_argument("--seed", type=int, default=20220426)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (NotAttainableError, InfeasibleError) as err:
        print(f"not attainable: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConcordError as err:
        print(f"error [{err.code}]: {err}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as err:
        print(f"error: invalid JSON: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
