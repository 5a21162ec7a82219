"""Dense two-phase primal simplex for equality-form linear programs.

Solves min c.x subject to A x = b, x >= 0 on a dense tableau.  Bland's
anti-cycling rule (lowest eligible index enters, ties in the ratio test
break to the lowest basis index) guarantees termination, which matters here
because attainability polytopes are highly degenerate: many basic feasible
solutions share coordinates that are exactly zero.

The phase-1 optimum doubles as an infeasibility certificate: it is the
minimal total artificial mass, so a value bounded away from zero proves no
nonnegative solution of A x = b exists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailureError

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective: float | None
    phase1_objective: float
    basis: list[int] | None
    iterations: int


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])


def _bland_iterate(T: np.ndarray, basis: list[int], ncols: int, max_iter: int) -> tuple[str, int]:
    """Run simplex iterations on tableau T in place; last row is the objective."""
    m = T.shape[0] - 1
    it = 0
    while True:
        # entering: lowest index with negative reduced cost
        enter = -1
        for j in range(ncols):
            if T[-1, j] < -PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            return "optimal", it
        # leaving: min ratio, ties to lowest basis variable index
        leave = -1
        best = np.inf
        for i in range(m):
            a = T[i, enter]
            if a > PIVOT_TOL:
                ratio = T[i, -1] / a
                if ratio < best - PIVOT_TOL or (
                    abs(ratio - best) <= PIVOT_TOL
                    and (leave < 0 or basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded", it
        _pivot(T, leave, enter)
        basis[leave] = enter
        it += 1
        if it > max_iter:
            raise NumericalFailureError(
                f"simplex exceeded {max_iter} iterations despite Bland's rule"
            )


def solve_lp(
    c: np.ndarray,
    A_eq: np.ndarray,
    b_eq: np.ndarray,
    max_iter: int | None = None,
) -> LpResult:
    """Minimize c.x over {A x = b, x >= 0}; returns phase-1 certificate either way."""
    A = np.asarray(A_eq, dtype=np.float64)
    b = np.asarray(b_eq, dtype=np.float64).copy()
    c = np.asarray(c, dtype=np.float64)
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError(f"shape mismatch: A {A.shape}, b {b.shape}, c {c.shape}")
    if max_iter is None:
        max_iter = 200 * (m + n) + 2000

    A = A.copy()
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # phase 1: [A | I][x; a] = b, minimize sum of artificials
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    basis = list(range(n, n + m))
    T[-1, :n] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()

    status, it1 = _bland_iterate(T, basis, n + m, max_iter)
    if status != "optimal":  # pragma: no cover - phase 1 is always bounded below by 0
        raise NumericalFailureError(f"phase 1 terminated with status {status}")
    phase1 = -T[-1, -1]
    iterations = it1

    if phase1 > FEAS_TOL:
        return LpResult(
            status="infeasible",
            x=None,
            objective=None,
            phase1_objective=float(phase1),
            basis=None,
            iterations=iterations,
        )

    # drive any residual artificials out of the basis; a row with no real
    # pivot is redundant and can be neutralized
    keep_rows = list(range(m))
    for i in range(m):
        if basis[i] >= n:
            piv = -1
            for j in range(n):
                if abs(T[i, j]) > PIVOT_TOL:
                    piv = j
                    break
            if piv >= 0:
                _pivot(T, i, piv)
                basis[i] = piv
            else:
                keep_rows.remove(i)

    if len(keep_rows) < m:
        rows = keep_rows + [m]
        T = T[rows]
        basis = [basis[i] for i in keep_rows]
        m = len(keep_rows)

    # phase 2 on the original columns
    T2 = np.zeros((m + 1, n + 1))
    T2[:m, :n] = T[:m, :n]
    T2[:m, -1] = T[:m, -1]
    T2[-1, :n] = c
    for i, bi in enumerate(basis):
        T2[-1] -= c[bi] * T2[i]

    status, it2 = _bland_iterate(T2, basis, n, max_iter)
    iterations += it2
    if status == "unbounded":
        return LpResult(
            status="unbounded",
            x=None,
            objective=None,
            phase1_objective=float(phase1),
            basis=list(basis),
            iterations=iterations,
        )

    x = np.zeros(n)
    for i, bi in enumerate(basis):
        x[bi] = T2[i, -1]
    x[np.abs(x) < 1e-14] = 0.0
    return LpResult(
        status="optimal",
        x=x,
        objective=float(c @ x),
        phase1_objective=float(phase1),
        basis=list(basis),
        iterations=iterations,
    )


def feasible_point(A_eq: np.ndarray, b_eq: np.ndarray) -> LpResult:
    """Phase-1 only entry point: any feasible vertex of {A x = b, x >= 0}."""
    return solve_lp(np.zeros(A_eq.shape[1]), A_eq, b_eq)
