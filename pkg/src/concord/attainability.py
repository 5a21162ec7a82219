"""Feasibility, bounds and vertex enumeration for partial signatures.

A partial signature (labels S containing the empty set, values kappa_S)
is attainable iff the polytope {w >= 0 : A_S w = kappa_S} is non-empty,
where A_S stacks the even-power-set rows of A_d selected by S.  Bounds for
missing entries are per-coordinate linear programs over that polytope, and
its vertices are exactly the basic feasible solutions, which are cheap to
enumerate at desk scale because the rows of A_d are linearly independent
(every basis is a column subset of size |S|).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .amatrix import a_row, build_A_matrix, check_dimension_cap
from .errors import (
    DimensionTooLargeError,
    EmptyTargetsError,
    InfeasibleError,
    InvalidLabelError,
    InvalidMatrixError,
    InvalidSignatureError,
    NotAttainableError,
)
from .signatures import (
    EvenSignature,
    MixtureWeights,
    signature_from_weights,
    weights_from_signature,
)
from .simplex import feasible_point, solve_lp
from .subsets import LabelSet, even_power_set, pair_label_set, validate_dimension

EQ_TOL = 1e-8
SIGN_TOL = 1e-9
CERT_TOL = 1e-7
DEFAULT_ENUM_DIM_CAP = 6
DEFAULT_MAX_BASES = 2_000_000


@dataclass(frozen=True)
class PartialSignature:
    d: int
    labels: LabelSet
    values: np.ndarray = field(repr=False)

    @classmethod
    def create(cls, d: int, labels, values) -> "PartialSignature":
        validate_dimension(d)
        pairs = list(zip([tuple(int(m) for m in s) for s in labels], values))
        by_label = dict(pairs)
        if len(by_label) != len(pairs):
            raise InvalidLabelError("duplicate labels in partial signature")
        if () not in by_label:
            by_label[()] = 1.0
        label_set = LabelSet.create(d, by_label.keys(), require_even=True)
        vals = np.array([by_label[s] for s in label_set], dtype=np.float64)
        if abs(vals[0] - 1.0) > SIGN_TOL:
            raise InvalidSignatureError(
                f"value for the empty set must be 1, got {vals[0]}"
            )
        if vals.min() < -SIGN_TOL or vals.max() > 1 + SIGN_TOL:
            raise InvalidSignatureError("partial signature values must lie in [0, 1]")
        vals = np.clip(vals, 0.0, 1.0)
        vals.setflags(write=False)
        return cls(d=d, labels=label_set, values=vals)

    @classmethod
    def from_pairs(cls, d: int, pair_values) -> "PartialSignature":
        """Empty set + all pairs in lexicographic order."""
        labels = pair_label_set(d)
        vals = [1.0] + [float(v) for v in pair_values]
        if len(vals) != len(labels):
            raise InvalidLabelError(
                f"expected {len(labels) - 1} pair values for d={d}, got {len(vals) - 1}"
            )
        return cls.create(d, labels.subsets, vals)

    def value_of(self, subset) -> float:
        subset = tuple(int(m) for m in subset)
        return float(self.values[self.labels.subsets.index(subset)])

    def is_complete(self) -> bool:
        return len(self.labels) == 1 << (self.d - 1)

    def constraint_matrix(self) -> np.ndarray:
        A = build_A_matrix(self.d)
        return A[self.labels.positions_in_even()]

    def missing_labels(self) -> tuple[tuple[int, ...], ...]:
        have = set(self.labels.subsets)
        return tuple(s for s in even_power_set(self.d) if s not in have)

    def with_constraint(self, subset, value: float) -> "PartialSignature":
        labels = list(self.labels.subsets) + [tuple(subset)]
        values = list(self.values) + [float(value)]
        return PartialSignature.create(self.d, labels, values)

    def without_constraint(self, subset) -> "PartialSignature":
        subset = tuple(int(m) for m in subset)
        if subset == ():
            raise InvalidLabelError("cannot drop the empty-set constraint")
        keep = [(s, v) for s, v in zip(self.labels.subsets, self.values) if s != subset]
        return PartialSignature.create(self.d, [s for s, _ in keep], [v for _, v in keep])


@dataclass(frozen=True)
class FeasibilityCertificate:
    feasible: bool
    witness: MixtureWeights | None
    phase1_objective: float
    infeasibility_reason: str | None = None


@dataclass(frozen=True)
class BoundsReport:
    targets: tuple[tuple[int, ...], ...]
    lower: np.ndarray
    upper: np.ndarray
    argmin: tuple[MixtureWeights, ...]
    argmax: tuple[MixtureWeights, ...]


@dataclass(frozen=True)
class WeightPolytope:
    d: int
    vertices: tuple[MixtureWeights, ...]
    rank: int

    def vertex_array(self) -> np.ndarray:
        return np.array([v.w for v in self.vertices])


def check_attainable(partial: PartialSignature, cap: int | None = None) -> FeasibilityCertificate:
    """Phase-1 LP feasibility of {w >= 0 : A_S w = kappa_S} with witness."""
    check_dimension_cap(partial.d, cap)
    if partial.is_complete():
        # fully specified signatures short-circuit to the exact linear solve;
        # when that shows negative weights, run phase 1 anyway so the verdict
        # carries a genuine LP certificate
        try:
            witness = weights_from_signature(
                EvenSignature.create(partial.d, partial.values)
            )
        except NotAttainableError as err:
            res = feasible_point(partial.constraint_matrix(), partial.values)
            return FeasibilityCertificate(
                feasible=False,
                witness=None,
                phase1_objective=res.phase1_objective,
                infeasibility_reason=str(err),
            )
        return FeasibilityCertificate(feasible=True, witness=witness, phase1_objective=0.0)

    A_S = partial.constraint_matrix()
    res = feasible_point(A_S, partial.values)
    if res.status == "infeasible":
        return FeasibilityCertificate(
            feasible=False,
            witness=None,
            phase1_objective=res.phase1_objective,
            infeasibility_reason=(
                f"phase-1 optimum {res.phase1_objective:.3e} > 0: no nonnegative "
                "weight vector matches the given values"
            ),
        )
    w = np.clip(res.x, 0.0, None)
    residual = float(np.abs(A_S @ w - partial.values).max())
    if residual > EQ_TOL:  # pragma: no cover - guarded by simplex tolerances
        raise InfeasibleError(
            f"witness violates equalities by {residual:.3e}", res.phase1_objective
        )
    return FeasibilityCertificate(
        feasible=True,
        witness=MixtureWeights.create(partial.d, w / w.sum()),
        phase1_objective=res.phase1_objective,
    )


def _validate_targets(partial: PartialSignature, targets) -> list[tuple[int, ...]]:
    if not targets:
        raise EmptyTargetsError("no target subsets given")
    out = []
    have = set(partial.labels.subsets)
    for t in targets:
        t = tuple(int(m) for m in t)
        if len(t) % 2:
            raise InvalidLabelError(f"target {t} has odd cardinality")
        if t in have:
            raise InvalidLabelError(f"target {t} is already constrained")
        out.append(t)
    return out


def bound_missing(
    partial: PartialSignature,
    targets,
    cap: int | None = None,
    norm_objective: bool = False,
) -> BoundsReport:
    """Exact per-coordinate [min, max] of kappa_I over the feasible weight set.

    With norm_objective=True the collectively-smallest/largest witnesses are
    recomputed by minimizing the Euclidean norm of the missing block (resp.
    its distance from the all-ones vector) by Frank-Wolfe over the polytope;
    the per-coordinate bounds themselves are unchanged.
    """
    check_dimension_cap(partial.d, cap)
    target_list = _validate_targets(partial, targets)
    cert = check_attainable(partial, cap=cap)
    if not cert.feasible:
        raise InfeasibleError(
            f"partial signature is infeasible: {cert.infeasibility_reason}",
            cert.phase1_objective,
        )
    A_S = partial.constraint_matrix()
    lower, upper, argmin, argmax = [], [], [], []
    for t in target_list:
        obj = a_row(t, partial.d)
        res_lo = solve_lp(obj, A_S, partial.values)
        res_hi = solve_lp(-obj, A_S, partial.values)
        if res_lo.status != "optimal" or res_hi.status != "optimal":
            # the polytope is bounded (weights sum to 1), so this cannot happen
            raise InfeasibleError(f"bound LP failed for target {t}")
        lower.append(res_lo.objective)
        upper.append(-res_hi.objective)
        argmin.append(MixtureWeights.create(partial.d, _clean(res_lo.x)))
        argmax.append(MixtureWeights.create(partial.d, _clean(res_hi.x)))
    if norm_objective:
        block = np.array([a_row(t, partial.d) for t in target_list])
        w_min = _frank_wolfe(A_S, partial.values, block, np.zeros(len(target_list)))
        w_max = _frank_wolfe(A_S, partial.values, block, np.ones(len(target_list)))
        argmin = [MixtureWeights.create(partial.d, w_min)] * len(target_list)
        argmax = [MixtureWeights.create(partial.d, w_max)] * len(target_list)
    lo = np.array(lower)
    hi = np.array(upper)
    lo = np.minimum(lo, hi)  # guard against LP rounding crossing the bounds
    return BoundsReport(
        targets=tuple(target_list),
        lower=lo,
        upper=hi,
        argmin=tuple(argmin),
        argmax=tuple(argmax),
    )


def _clean(w: np.ndarray) -> np.ndarray:
    w = np.clip(w, 0.0, None)
    return w / w.sum()


def _frank_wolfe(A_S, values, block, target, iters: int = 200, tol: float = 1e-10):
    """Minimize ||block w - target||^2 over {A_S w = values, w >= 0}."""
    res = feasible_point(A_S, values)
    w = _clean(res.x)
    for it in range(iters):
        grad = 2.0 * block.T @ (block @ w - target)
        lp = solve_lp(grad, A_S, values)
        s = _clean(lp.x)
        gap = float(grad @ (w - s))
        if gap < tol:
            break
        direction = s - w
        denom = float(np.linalg.norm(block @ direction) ** 2)
        step = 1.0 if denom <= 0 else min(1.0, gap / (2.0 * denom))
        w = w + step * direction
    return _clean(w)


def enumerate_vertices(
    partial: PartialSignature,
    cap_dim: int = DEFAULT_ENUM_DIM_CAP,
    max_bases: int = DEFAULT_MAX_BASES,
    dedup_tol: float = 1e-8,
) -> WeightPolytope:
    """All basic feasible solutions of {A_S w = kappa_S, w >= 0}, deduplicated.

    Rows of A_d are linearly independent, so every basis is a column subset
    of size |S| with a nonsingular square submatrix; candidates are pruned
    by the binomial budget before any work is done.
    """
    if partial.d > cap_dim:
        raise DimensionTooLargeError(
            f"vertex enumeration capped at d={cap_dim}, got d={partial.d}"
        )
    cert = check_attainable(partial)
    if not cert.feasible:
        raise InfeasibleError(
            f"partial signature is infeasible: {cert.infeasibility_reason}",
            cert.phase1_objective,
        )
    A_S = partial.constraint_matrix()
    m, n = A_S.shape
    n_candidates = math.comb(n, m)
    if n_candidates > max_bases:
        raise DimensionTooLargeError(
            f"{n_candidates} candidate bases exceed the enumeration budget {max_bases}"
        )
    vertices: list[np.ndarray] = []
    b = partial.values
    for cols in itertools.combinations(range(n), m):
        B = A_S[:, cols]
        try:
            x = np.linalg.solve(B, b)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)) or x.min() < -SIGN_TOL:
            continue
        w = np.zeros(n)
        w[list(cols)] = np.clip(x, 0.0, None)
        if np.abs(A_S @ w - b).max() > EQ_TOL:
            continue
        if not any(np.abs(w - v).max() <= dedup_tol for v in vertices):
            vertices.append(w)
    verts = tuple(
        MixtureWeights.create(partial.d, v / v.sum()) for v in vertices
    )
    return WeightPolytope(d=partial.d, vertices=verts, rank=m)


def project_vertices(polytope: WeightPolytope, targets) -> np.ndarray:
    """Images A_T w_i of every vertex; rows are vertices, columns targets."""
    target_list = [tuple(int(m) for m in t) for t in targets]
    for t in target_list:
        if len(t) % 2:
            raise InvalidLabelError(f"target {t} has odd cardinality")
    block = np.array([a_row(t, polytope.d) for t in target_list])
    return polytope.vertex_array() @ block.T


def check_cut_polytope(P_tau: np.ndarray, cap: int | None = None) -> FeasibilityCertificate:
    """Is P_tau an attainable Kendall rank correlation matrix?

    Equivalent to membership of the cut polytope: feasibility of the pairs
    label set with kappa_ij = (1 + tau_ij) / 2.
    """
    P = np.asarray(P_tau, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise InvalidMatrixError(f"expected a square matrix, got shape {P.shape}")
    d = P.shape[0]
    validate_dimension(d)
    if not np.allclose(P, P.T, atol=1e-12):
        raise InvalidMatrixError("matrix must be symmetric")
    if not np.allclose(np.diag(P), 1.0, atol=1e-12):
        raise InvalidMatrixError("matrix must have a unit diagonal")
    if np.abs(P).max() > 1 + 1e-12:
        raise InvalidMatrixError("entries must lie in [-1, 1]")
    values = [(1.0 + P[i - 1, j - 1]) / 2.0 for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    partial = PartialSignature.from_pairs(d, values)
    return check_attainable(partial, cap=cap)


def hull_contains(points: np.ndarray, x: np.ndarray, tol: float = EQ_TOL) -> bool:
    """Is x a convex combination of the given points?  (LP feasibility.)"""
    pts = np.asarray(points, dtype=np.float64)
    A = np.vstack([pts.T, np.ones(pts.shape[0])])
    b = np.concatenate([np.asarray(x, dtype=np.float64), [1.0]])
    res = feasible_point(A, b)
    return res.status == "optimal" and res.phase1_objective <= tol


def completion_of(partial: PartialSignature, weights: MixtureWeights) -> EvenSignature:
    """Even signature induced by a feasible witness (completes the partial)."""
    return signature_from_weights(weights)
