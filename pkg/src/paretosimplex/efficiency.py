"""Certificate programs and the efficiency decision procedure.

A feasible point is efficient exactly when some strictly positive weight
vector makes it a maximizer of the collapsed objective.  Each of the
three certificate programs below searches for such weights in one shot:

* T0 asks for weights that tie every column, which certifies the whole
  simplex efficient at once.
* T1 targets a support pattern: the support columns must tie and every
  other column must trail by a positive gap, certifying the open face on
  that support (and its closure).
* T2 is the single-column case of the same construction, certifying one
  vertex.

The strict gaps make T1 and T2 certify that the support is exactly the
argmax pattern of some weighting.  A point can also be efficient by lying
on the boundary of a larger efficient face, where no weighting separates
its support from the rest: duplicate columns are the simplest case, a
column sitting in the convex hull of the tied ones the general one.  The
closure program covers these: it keeps the support tied but only forbids
other columns from exceeding it, so a positive optimum exhibits weights
whose argmax pattern contains the support.  That still makes the point a
maximizer under strictly positive weights, hence efficient, and the
report's face names the larger pattern actually certified.  The closure
program runs only after the exact-face test fails, so the common path is
unchanged.

All programs maximize a margin capped at one, and their optimum is 0 or
1: any feasible solution with a positive margin can be rescaled to margin
one.  A positive optimum means efficient; the decision threshold sits at
one half, the midpoint of the two possible values, so the verdict never
hinges on solver noise.  Because the programs depend only on the support,
verdicts are cached per support pattern.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    CriteriaMatrix,
    Deterministic,
    DimensionMismatchError,
    InputError,
    PartiallyRandomized,
    PointClass,
    Randomized,
    SimplexPoint,
    SupportPattern,
    Tolerances,
    Verdict,
    clamped_indices,
    classify,
)
from .lp import LpSolution, LpStatus, NumericalBreakdownError, Relation, StandardLp, solve
from .scalarize import (
    FullSimplex,
    OpenFace,
    SolutionSetDescriptor,
    UniqueVertex,
    WeightVector,
    argmax_set,
    weighted_objective,
)

__all__ = [
    "EfficiencyAnalyzer",
    "EfficiencyReport",
    "TestKind",
    "TestProgram",
    "TestResult",
    "build_closure",
    "build_t0",
    "build_t1",
    "build_t2",
    "decide",
    "verify_certificate",
]

#: Verdict threshold between the two admissible optima 0 and 1.
DECISION_THRESHOLD = 0.5


class TestKind(Enum):
    T0 = "T0"
    T1 = "T1"
    T2 = "T2"
    CLOSURE = "closure"


@dataclass(frozen=True)
class TestProgram:
    """A certificate program plus the layout of its variable vector.

    target is the support the program certifies: every column for T0, the
    tested support for T1, a single column for T2.  weight_vars, floor_var,
    gap_vars, and margin_var give the positions of the weights, the weight
    floor, the per-column gap variables (keyed by 1-based column), and the
    maximized margin inside the LP's variable vector.
    """

    kind: TestKind
    target: SupportPattern
    lp: StandardLp
    weight_vars: tuple[int, ...]
    floor_var: int
    gap_vars: dict[int, int] = field(default_factory=dict)
    margin_var: int | None = None


@dataclass(frozen=True)
class TestResult:
    program: TestProgram
    solution: LpSolution

    @property
    def value(self) -> float:
        return self.solution.value  # type: ignore[return-value]


@dataclass(frozen=True)
class EfficiencyReport:
    """Outcome of deciding one point.

    face describes the region the decisive certificate proves efficient
    alongside the point (whole simplex, one vertex, or an open face); it
    is absent for dominated points.  clamped lists 1-based components
    whose positive mass fell within the zero threshold and was excluded
    from the support.
    """

    point: SimplexPoint
    point_class: PointClass
    verdict: Verdict
    test: TestKind
    value: float
    certificate: WeightVector | None
    face: SolutionSetDescriptor | None
    clamped: tuple[int, ...] = ()


def build_t0(matrix: CriteriaMatrix) -> TestProgram:
    """Program deciding whether some strictly positive weighting ties all
    columns: maximize the weight floor, subject to all collapsed
    coefficients equal, every weight at least the floor, floor at most 1.
    """
    k, n = matrix.k, matrix.n
    entries = matrix.entries
    nvars = k + 1
    floor = k
    rows = np.zeros((n - 1 + k + 1, nvars))
    relations: list[Relation] = []
    rhs = np.zeros(n - 1 + k + 1)
    for j in range(n - 1):
        rows[j, :k] = entries[:, j] - entries[:, j + 1]
        relations.append(Relation.EQ)
    for i in range(k):
        r = n - 1 + i
        rows[r, i] = 1.0
        rows[r, floor] = -1.0
        relations.append(Relation.GE)
    rows[-1, floor] = 1.0
    relations.append(Relation.LE)
    rhs[-1] = 1.0
    objective = np.zeros(nvars)
    objective[floor] = 1.0
    lp = StandardLp(objective, rows, relations, rhs, lower=np.full(nvars, -np.inf))
    return TestProgram(
        kind=TestKind.T0,
        target=SupportPattern(range(1, n + 1)),
        lp=lp,
        weight_vars=tuple(range(k)),
        floor_var=floor,
    )


def _build_gap_program(matrix: CriteriaMatrix, support: SupportPattern, kind: TestKind) -> TestProgram:
    """Shared construction for T1 and T2: tie the support columns, force a
    positive gap to every other column, and maximize the smallest of the
    gaps and the weight floor (capped at one)."""
    k, n = matrix.k, matrix.n
    entries = matrix.entries
    inside = [j - 1 for j in support.indices]
    outside = [j for j in range(n) if j + 1 not in support]
    q = len(outside)
    nvars = k + 1 + q + 1
    floor = k
    gap0 = k + 1
    margin = k + 1 + q

    nrows = (len(inside) - 1) + q + k + q + 1 + 1
    rows = np.zeros((nrows, nvars))
    relations: list[Relation] = []
    rhs = np.zeros(nrows)
    r = 0
    for a, b in itertools.pairwise(inside):
        rows[r, :k] = entries[:, a] - entries[:, b]
        relations.append(Relation.EQ)
        r += 1
    lead = inside[0]
    for offset, j in enumerate(outside):
        rows[r, :k] = entries[:, lead] - entries[:, j]
        rows[r, gap0 + offset] = -1.0
        relations.append(Relation.GE)
        r += 1
    for i in range(k):
        rows[r, i] = 1.0
        rows[r, floor] = -1.0
        relations.append(Relation.GE)
        r += 1
    for offset in range(q):
        rows[r, gap0 + offset] = 1.0
        rows[r, margin] = -1.0
        relations.append(Relation.GE)
        r += 1
    rows[r, floor] = 1.0
    rows[r, margin] = -1.0
    relations.append(Relation.GE)
    r += 1
    rows[r, floor] = 1.0
    relations.append(Relation.LE)
    rhs[r] = 1.0

    objective = np.zeros(nvars)
    objective[margin] = 1.0
    lp = StandardLp(objective, rows, relations, rhs, lower=np.full(nvars, -np.inf))
    return TestProgram(
        kind=kind,
        target=support,
        lp=lp,
        weight_vars=tuple(range(k)),
        floor_var=floor,
        gap_vars={j + 1: gap0 + offset for offset, j in enumerate(outside)},
        margin_var=margin,
    )


def build_t1(matrix: CriteriaMatrix, support: SupportPattern) -> TestProgram:
    """Certificate program for the open face on ``support``."""
    if not 2 <= len(support) <= matrix.n - 1:
        raise InputError(
            f"support size {len(support)} outside 2..{matrix.n - 1} for n={matrix.n}"
        )
    if support.indices[-1] > matrix.n:
        raise DimensionMismatchError("support index exceeds the number of columns")
    return _build_gap_program(matrix, support, TestKind.T1)


def build_t2(matrix: CriteriaMatrix, j: int) -> TestProgram:
    """Certificate program for the vertex on column ``j`` (1-based)."""
    if not 1 <= j <= matrix.n:
        raise InputError(f"column index {j} out of range 1..{matrix.n}")
    return _build_gap_program(matrix, SupportPattern((j,)), TestKind.T2)


def build_closure(matrix: CriteriaMatrix, support: SupportPattern) -> TestProgram:
    """Weak-gap variant deciding whether ``support`` sits inside the argmax
    pattern of some strictly positive weighting: the support columns must
    tie and the rest must not exceed them.  Maximizes the weight floor
    capped at one; tying all columns is the job of the all-column program,
    so the full support is rejected here.
    """
    if not 1 <= len(support) <= matrix.n - 1:
        raise InputError(
            f"support size {len(support)} outside 1..{matrix.n - 1} for n={matrix.n}"
        )
    if support.indices[-1] > matrix.n:
        raise DimensionMismatchError("support index exceeds the number of columns")
    k, n = matrix.k, matrix.n
    entries = matrix.entries
    inside = [j - 1 for j in support.indices]
    outside = [j for j in range(n) if j + 1 not in support]
    nvars = k + 1
    floor = k
    nrows = (len(inside) - 1) + len(outside) + k + 1
    rows = np.zeros((nrows, nvars))
    relations: list[Relation] = []
    rhs = np.zeros(nrows)
    r = 0
    for a, b in itertools.pairwise(inside):
        rows[r, :k] = entries[:, a] - entries[:, b]
        relations.append(Relation.EQ)
        r += 1
    lead = inside[0]
    for j in outside:
        rows[r, :k] = entries[:, lead] - entries[:, j]
        relations.append(Relation.GE)
        r += 1
    for i in range(k):
        rows[r, i] = 1.0
        rows[r, floor] = -1.0
        relations.append(Relation.GE)
        r += 1
    rows[r, floor] = 1.0
    relations.append(Relation.LE)
    rhs[r] = 1.0
    objective = np.zeros(nvars)
    objective[floor] = 1.0
    lp = StandardLp(objective, rows, relations, rhs, lower=np.full(nvars, -np.inf))
    return TestProgram(
        kind=TestKind.CLOSURE,
        target=support,
        lp=lp,
        weight_vars=tuple(range(k)),
        floor_var=floor,
    )


def _expected_support(matrix: CriteriaMatrix, point_class: PointClass) -> SupportPattern:
    if isinstance(point_class, Randomized):
        return SupportPattern(range(1, matrix.n + 1))
    if isinstance(point_class, PartiallyRandomized):
        return point_class.support
    return point_class.support


def verify_certificate(
    matrix: CriteriaMatrix,
    weights: WeightVector,
    point_class: PointClass,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    """Check a claimed efficiency certificate: the weights must be strictly
    positive and their collapsed objective must tie exactly the support of
    the given class (all columns for randomized points)."""
    if weights.k != matrix.k:
        raise DimensionMismatchError(f"{weights.k} weights for {matrix.k} criteria")
    if not weights.strictly_positive:
        return False
    tied = argmax_set(weighted_objective(matrix, weights), tol)
    return tied == _expected_support(matrix, point_class)


class EfficiencyAnalyzer:
    """Decision procedure for one criteria matrix with cached certificates.

    Verdicts depend only on a point's support, so each certificate program
    is solved at most once per analyzer.  The cache is keyed on support
    patterns and guarded by a lock; instances are safe to share across
    threads.
    """

    def __init__(self, matrix: CriteriaMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        self.matrix = matrix
        self.tol = tol
        self._lock = threading.Lock()
        self._cache: dict[tuple[TestKind, SupportPattern], TestResult] = {}

    def _solve(self, kind: TestKind, key: SupportPattern, build) -> TestResult:
        with self._lock:
            hit = self._cache.get((kind, key))
        if hit is not None:
            return hit
        program = build()
        solution = solve(program.lp, self.tol)
        if solution.status is not LpStatus.OPTIMAL:
            raise NumericalBreakdownError(
                f"certificate program {kind.value} reported {solution.status.value}; "
                "it is feasible and bounded by construction"
            )
        result = TestResult(program, solution)
        with self._lock:
            return self._cache.setdefault((kind, key), result)

    def t0(self) -> TestResult:
        full = SupportPattern(range(1, self.matrix.n + 1))
        return self._solve(TestKind.T0, full, lambda: build_t0(self.matrix))

    def t1(self, support: SupportPattern) -> TestResult:
        return self._solve(TestKind.T1, support, lambda: build_t1(self.matrix, support))

    def t2(self, j: int) -> TestResult:
        key = SupportPattern((j,))
        return self._solve(TestKind.T2, key, lambda: build_t2(self.matrix, j))

    def closure(self, support: SupportPattern) -> TestResult:
        return self._solve(
            TestKind.CLOSURE, support, lambda: build_closure(self.matrix, support)
        )

    def certificate_from(self, result: TestResult) -> WeightVector:
        """Extract the weight vector from a positive certificate solution,
        rescaled so the smallest weight is exactly one."""
        point = result.solution.point
        weights = np.array([point[v] for v in result.program.weight_vars])
        smallest = weights.min()
        if smallest <= 0.0:
            raise NumericalBreakdownError("certificate weights are not positive")
        return WeightVector(weights / smallest)

    def decide(self, x: SimplexPoint) -> EfficiencyReport:
        """Classify ``x`` and decide efficiency with the cheapest decisive
        certificate program."""
        if x.n != self.matrix.n:
            raise DimensionMismatchError(
                f"point has {x.n} components, matrix has {self.matrix.n} columns"
            )
        point_class = classify(x, self.tol)
        clamped = clamped_indices(x, self.tol)

        t0 = self.t0()
        if t0.value > DECISION_THRESHOLD:
            return self._efficient(x, point_class, t0, FullSimplex(), clamped)
        if isinstance(point_class, Randomized):
            # No all-tying weights exist, so no randomized point is efficient.
            return EfficiencyReport(
                x, point_class, Verdict.DOMINATED, TestKind.T0, t0.value, None, None, clamped
            )
        if isinstance(point_class, PartiallyRandomized):
            result = self.t1(point_class.support)
            face: SolutionSetDescriptor = OpenFace(point_class.support)
        else:
            result = self.t2(point_class.index)
            face = UniqueVertex(point_class.index)
        if result.value > DECISION_THRESHOLD:
            return self._efficient(x, point_class, result, face, clamped)
        # The exact-face test failed, but the point may still border a
        # larger efficient face (duplicate columns and the like).
        fallback = self.closure(result.program.target)
        if fallback.value > DECISION_THRESHOLD:
            return self._efficient_closure(x, point_class, fallback, clamped)
        return EfficiencyReport(
            x, point_class, Verdict.DOMINATED, fallback.program.kind, fallback.value, None, None, clamped
        )

    def _efficient(
        self,
        x: SimplexPoint,
        point_class: PointClass,
        result: TestResult,
        face: SolutionSetDescriptor,
        clamped: tuple[int, ...],
    ) -> EfficiencyReport:
        certificate = self.certificate_from(result)
        tied = argmax_set(weighted_objective(self.matrix, certificate), self.tol)
        if not certificate.strictly_positive or tied != result.program.target:
            raise NumericalBreakdownError(
                f"extracted certificate does not tie exactly {result.program.target}"
            )
        return EfficiencyReport(
            x,
            point_class,
            Verdict.EFFICIENT,
            result.program.kind,
            result.value,
            certificate,
            face,
            clamped,
        )

    def _efficient_closure(
        self,
        x: SimplexPoint,
        point_class: PointClass,
        result: TestResult,
        clamped: tuple[int, ...],
    ) -> EfficiencyReport:
        certificate = self.certificate_from(result)
        tied = argmax_set(weighted_objective(self.matrix, certificate), self.tol)
        if not certificate.strictly_positive or not set(result.program.target).issubset(tied):
            raise NumericalBreakdownError(
                f"extracted certificate does not keep {result.program.target} at the maximum"
            )
        if len(tied) == self.matrix.n:
            face: SolutionSetDescriptor = FullSimplex()
        elif len(tied) == 1:
            face = UniqueVertex(tied.indices[0])
        else:
            face = OpenFace(tied)
        return EfficiencyReport(
            x,
            point_class,
            Verdict.EFFICIENT,
            result.program.kind,
            result.value,
            certificate,
            face,
            clamped,
        )


def decide(
    matrix: CriteriaMatrix,
    x: SimplexPoint,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> EfficiencyReport:
    """Decide efficiency of one point.  Builds a fresh analyzer; callers
    checking many points against one matrix should hold an
    EfficiencyAnalyzer instead to reuse its certificate cache."""
    return EfficiencyAnalyzer(matrix, tol).decide(x)
