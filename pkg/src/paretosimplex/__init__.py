"""Pareto efficiency analysis for linear criteria on the probability simplex.

Given a matrix whose rows score the columns under several criteria, this
package decides whether a mixed strategy (a point of the probability
simplex) is Pareto efficient, produces strictly positive weight vectors
as certificates, enumerates the efficient vertices and open faces, and
cross-checks verdicts with an independent dominance program.
"""

from .core import (
    DEFAULT_TOLERANCES,
    CriteriaMatrix,
    Deterministic,
    DimensionMismatchError,
    InputError,
    InvalidPointError,
    PartiallyRandomized,
    PointClass,
    Randomized,
    SimplexPoint,
    SupportPattern,
    Tolerances,
    Verdict,
    clamped_indices,
    classify,
    vertex,
)
from .efficiency import (
    DECISION_THRESHOLD,
    EfficiencyAnalyzer,
    EfficiencyReport,
    TestKind,
    TestProgram,
    TestResult,
    build_closure,
    build_t0,
    build_t1,
    build_t2,
    decide,
    verify_certificate,
)
from .enumeration import (
    MAX_ENUMERABLE_COLUMNS,
    EfficientStructure,
    EnumerationCapError,
    bicriterion_full_check,
    check_full,
    enumerate_faces,
    enumerate_vertices,
)
from .lp import (
    LpError,
    LpSolution,
    LpStatus,
    NumericalBreakdownError,
    Relation,
    StandardLp,
    feasibility_violation,
    solve,
)
from .oracle import build_dominance_lp, dominance_lp_verdict, sample_dominators
from .scalarize import (
    FullSimplex,
    ObjectiveVector,
    OpenFace,
    SolutionSetDescriptor,
    UniqueVertex,
    WeightVector,
    argmax_set,
    solution_set,
    weighted_objective,
)

__version__ = "0.1.0"

__all__ = [
    "DECISION_THRESHOLD",
    "DEFAULT_TOLERANCES",
    "MAX_ENUMERABLE_COLUMNS",
    "CriteriaMatrix",
    "Deterministic",
    "DimensionMismatchError",
    "EfficiencyAnalyzer",
    "EfficiencyReport",
    "EfficientStructure",
    "EnumerationCapError",
    "FullSimplex",
    "InputError",
    "InvalidPointError",
    "LpError",
    "LpSolution",
    "LpStatus",
    "NumericalBreakdownError",
    "ObjectiveVector",
    "OpenFace",
    "PartiallyRandomized",
    "PointClass",
    "Randomized",
    "Relation",
    "SimplexPoint",
    "SolutionSetDescriptor",
    "StandardLp",
    "SupportPattern",
    "TestKind",
    "TestProgram",
    "TestResult",
    "Tolerances",
    "UniqueVertex",
    "Verdict",
    "WeightVector",
    "argmax_set",
    "bicriterion_full_check",
    "build_dominance_lp",
    "build_closure",
    "build_t0",
    "build_t1",
    "build_t2",
    "check_full",
    "clamped_indices",
    "classify",
    "decide",
    "dominance_lp_verdict",
    "enumerate_faces",
    "enumerate_vertices",
    "feasibility_violation",
    "sample_dominators",
    "solution_set",
    "solve",
    "verify_certificate",
    "vertex",
    "weighted_objective",
]
