"""Dense two-phase primal simplex for small linear programs.

The solver targets the small certificate programs built elsewhere in this
package: a few dozen rows and columns, dense data, heavy degeneracy.  It
maximizes over constraints given in relational form (<=, =, >=) with
per-variable bounds restricted to lower in {0, -inf} and upper in
{finite, +inf}.

Conversion to computational form: finite upper bounds become explicit <=
rows, free variables are split into differences of nonnegative pairs,
rows are sign-normalized to a nonnegative right-hand side, and slack,
surplus, and artificial columns are appended.  Phase one drives the
artificials to zero; phase two optimizes the real objective.

Pivoting uses Dantzig's rule (most positive reduced cost) and switches to
Bland's rule after a stall of 2 * (rows + columns) consecutive degenerate
pivots, which guarantees termination on cycling instances.  Ties in the
ratio test always leave the smallest basic index, so solves are
deterministic.  An optimal point is re-checked against the original
constraints before it is returned; a failed re-check raises instead of
reporting a wrong optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .core import DEFAULT_TOLERANCES, DimensionMismatchError, InputError, Tolerances

__all__ = [
    "LpError",
    "LpSolution",
    "LpStatus",
    "NumericalBreakdownError",
    "Relation",
    "StandardLp",
    "feasibility_violation",
    "solve",
]


class Relation(Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class LpError(RuntimeError):
    """The solver could not certify any of the three statuses."""


class NumericalBreakdownError(LpError):
    """Pivoting stalled past the iteration cap, or the final point failed
    its feasibility re-check.  Never silently reported as Optimal."""


class StandardLp:
    """maximize objective . x  subject to  a x (rel) rhs  and variable bounds.

    lower[j] must be 0 or -inf; upper[j] must be finite (>= lower) or +inf.
    Rows may be empty, variables may not.
    """

    __slots__ = ("objective", "a", "relations", "rhs", "lower", "upper")

    def __init__(
        self,
        objective,
        a,
        relations: Sequence[Relation],
        rhs,
        lower=None,
        upper=None,
    ) -> None:
        self.objective = np.array(objective, dtype=float)
        if self.objective.ndim != 1 or self.objective.size == 0:
            raise InputError("objective must be a nonempty vector")
        m = self.objective.size
        self.a = np.array(a, dtype=float).reshape(-1, m)
        r = self.a.shape[0]
        self.relations = tuple(relations)
        self.rhs = np.array(rhs, dtype=float).reshape(-1)
        if len(self.relations) != r or self.rhs.size != r:
            raise DimensionMismatchError("rows, relations, and rhs must align")
        if not all(isinstance(rel, Relation) for rel in self.relations):
            raise InputError("relations must be Relation members")
        self.lower = (
            np.zeros(m) if lower is None else np.array(lower, dtype=float).reshape(-1)
        )
        self.upper = (
            np.full(m, np.inf) if upper is None else np.array(upper, dtype=float).reshape(-1)
        )
        if self.lower.size != m or self.upper.size != m:
            raise DimensionMismatchError("bounds must have one entry per variable")
        for arr, name in ((self.objective, "objective"), (self.a, "matrix"), (self.rhs, "rhs")):
            if not np.isfinite(arr).all():
                raise InputError(f"{name} entries must be finite")
        for j in range(m):
            if self.lower[j] != 0.0 and not np.isneginf(self.lower[j]):
                raise InputError("lower bounds must be 0 or -inf")
            if np.isnan(self.upper[j]) or np.isneginf(self.upper[j]):
                raise InputError("upper bounds must be finite or +inf")
            if self.upper[j] < self.lower[j]:
                raise InputError(f"upper bound of variable {j} lies below its lower bound")
        for arr in (self.objective, self.a, self.rhs, self.lower, self.upper):
            arr.setflags(write=False)

    @property
    def num_vars(self) -> int:
        return self.objective.size

    @property
    def num_rows(self) -> int:
        return self.rhs.size

    def __repr__(self) -> str:
        return f"StandardLp(vars={self.num_vars}, rows={self.num_rows})"


@dataclass(frozen=True)
class LpSolution:
    """Outcome of a solve.

    value and point are set only when status is OPTIMAL; the point is in
    the original variable space, and value equals objective . point.
    """

    status: LpStatus
    value: float | None
    point: np.ndarray | None
    iterations: int


def feasibility_violation(lp: StandardLp, point: np.ndarray) -> float:
    """Largest constraint or bound violation of ``point``, scaled per row
    by 1 + |rhs| so the measure is meaningful across magnitudes."""
    x = np.asarray(point, dtype=float)
    worst = 0.0
    if lp.num_rows:
        activity = lp.a @ x
        for i, rel in enumerate(lp.relations):
            resid = activity[i] - lp.rhs[i]
            if rel is Relation.LE:
                gap = max(resid, 0.0)
            elif rel is Relation.GE:
                gap = max(-resid, 0.0)
            else:
                gap = abs(resid)
            worst = max(worst, gap / (1.0 + abs(lp.rhs[i])))
    lower_gap = np.max(lp.lower - x, initial=0.0)
    upper_gap = np.max(x - lp.upper, initial=0.0)
    return float(max(worst, lower_gap, upper_gap))


def _pivot(tableau: np.ndarray, obj: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    column = tableau[:, col].copy()
    column[row] = 0.0
    tableau -= np.outer(column, tableau[row])
    obj -= obj[col] * tableau[row]
    basis[row] = col


def _run_simplex(
    tableau: np.ndarray,
    obj: np.ndarray,
    basis: np.ndarray,
    tol: Tolerances,
    iteration_cap: int,
) -> tuple[str, int]:
    """Optimize in place; returns ("optimal" | "unbounded", pivot count)."""
    rows, width = tableau.shape
    stall_limit = 2 * (rows + width - 1)
    pivots = 0
    stall = 0
    bland = False
    while True:
        reduced = obj[:-1]
        if bland:
            improving = np.flatnonzero(reduced > tol.lp)
            if improving.size == 0:
                return "optimal", pivots
            col = int(improving[0])
        else:
            col = int(np.argmax(reduced))
            if reduced[col] <= tol.lp:
                return "optimal", pivots
        column = tableau[:, col]
        candidates = np.flatnonzero(column > tol.lp)
        if candidates.size == 0:
            return "unbounded", pivots
        ratios = np.maximum(tableau[candidates, -1], 0.0) / column[candidates]
        best = float(ratios.min())
        tied = candidates[ratios <= best + tol.lp]
        row = int(tied[np.argmin(basis[tied])])
        _pivot(tableau, obj, basis, row, col)
        pivots += 1
        if best <= tol.lp:
            stall += 1
            if stall > stall_limit:
                bland = True
        else:
            stall = 0
            bland = False
        if pivots > iteration_cap:
            raise NumericalBreakdownError(
                f"no progress after {pivots} pivots; aborting instead of looping"
            )


def solve(lp: StandardLp, tol: Tolerances = DEFAULT_TOLERANCES) -> LpSolution:
    """Solve ``lp`` to one of Optimal, Infeasible, or Unbounded.

    Deterministic for fixed input and tolerances.  Raises
    NumericalBreakdownError rather than returning a point that fails the
    feasibility re-check.
    """
    m = lp.num_vars

    # Finite upper bounds become explicit rows; bounded-variable pivoting
    # is not worth its complexity at these sizes.
    rows = [] if lp.num_rows == 0 else [lp.a]
    relations = list(lp.relations)
    rhs = [] if lp.num_rows == 0 else [lp.rhs]
    for j in np.flatnonzero(np.isfinite(lp.upper)):
        bound_row = np.zeros((1, m))
        bound_row[0, j] = 1.0
        rows.append(bound_row)
        relations.append(Relation.LE)
        rhs.append(np.array([lp.upper[j]]))
    a = np.vstack(rows) if rows else np.zeros((0, m))
    b = np.concatenate(rhs) if rhs else np.zeros(0)
    r = a.shape[0]

    # Split free variables into nonnegative pairs.
    split_cols: list[tuple[int, float]] = []
    for j in range(m):
        split_cols.append((j, 1.0))
        if np.isneginf(lp.lower[j]):
            split_cols.append((j, -1.0))
    n_struct = len(split_cols)
    a_split = np.empty((r, n_struct))
    c_split = np.empty(n_struct)
    for pos, (j, sign) in enumerate(split_cols):
        a_split[:, pos] = sign * a[:, j]
        c_split[pos] = sign * lp.objective[j]

    # Sign-normalize rows, then append slack/surplus and artificial columns.
    flip = b < 0.0
    a_split[flip] *= -1.0
    b = np.abs(b)
    rel_codes = np.empty(r, dtype=int)  # 0: <=, 1: =, 2: >=
    for i, rel in enumerate(relations):
        code = {Relation.LE: 0, Relation.EQ: 1, Relation.GE: 2}[rel]
        if flip[i] and code != 1:
            code = 2 - code
        rel_codes[i] = code

    slack_rows = np.flatnonzero(rel_codes != 1)
    art_rows = np.flatnonzero(rel_codes != 0)
    n_slack = slack_rows.size
    n_art = art_rows.size
    width = n_struct + n_slack + n_art + 1
    tableau = np.zeros((r, width))
    tableau[:, :n_struct] = a_split
    tableau[:, -1] = b
    basis = np.empty(r, dtype=int)
    for offset, i in enumerate(slack_rows):
        col = n_struct + offset
        tableau[i, col] = 1.0 if rel_codes[i] == 0 else -1.0
        if rel_codes[i] == 0:
            basis[i] = col
    for offset, i in enumerate(art_rows):
        col = n_struct + n_slack + offset
        tableau[i, col] = 1.0
        basis[i] = col

    iteration_cap = 10_000 + 100 * (r + width)
    iterations = 0

    if n_art:
        phase_cost = np.zeros(width)
        phase_cost[n_struct + n_slack : -1] = -1.0
        obj = phase_cost - phase_cost[basis] @ tableau
        status, pivots = _run_simplex(tableau, obj, basis, tol, iteration_cap)
        iterations += pivots
        if status != "optimal":
            raise NumericalBreakdownError("phase one reported an unbounded auxiliary program")
        feas_gap = 10.0 * tol.lp * (1.0 + float(np.max(b, initial=0.0)))
        if -obj[-1] < -feas_gap:
            return LpSolution(LpStatus.INFEASIBLE, None, None, iterations)

        # Pivot leftover artificials out of the basis; rows that offer no
        # pivot are redundant and get dropped.
        art_start = n_struct + n_slack
        drop_rows = []
        for i in range(r):
            if basis[i] < art_start:
                continue
            candidates = np.flatnonzero(np.abs(tableau[i, :art_start]) > tol.lp)
            if candidates.size:
                _pivot(tableau, obj, basis, i, int(candidates[0]))
                iterations += 1
            else:
                drop_rows.append(i)
        if drop_rows:
            keep = np.setdiff1d(np.arange(r), drop_rows)
            tableau = tableau[keep]
            basis = basis[keep]
            r = tableau.shape[0]
        tableau = np.delete(tableau, np.s_[art_start : art_start + n_art], axis=1)
        width = tableau.shape[1]

    cost = np.zeros(width)
    cost[:n_struct] = c_split
    obj = cost - cost[basis] @ tableau if r else cost.copy()
    status, pivots = _run_simplex(tableau, obj, basis, tol, iteration_cap)
    iterations += pivots
    if status == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED, None, None, iterations)

    z = np.zeros(n_struct)
    for i in range(r):
        if basis[i] < n_struct:
            z[basis[i]] = tableau[i, -1]
    point = np.zeros(m)
    for pos, (j, sign) in enumerate(split_cols):
        point[j] += sign * z[pos]
    if feasibility_violation(lp, point) > tol.lp:
        raise NumericalBreakdownError("optimal point failed its feasibility re-check")
    value = float(lp.objective @ point)
    point.setflags(write=False)
    return LpSolution(LpStatus.OPTIMAL, value, point, iterations)
