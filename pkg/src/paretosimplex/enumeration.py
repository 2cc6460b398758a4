"""Exhaustive structure of the efficient set: vertices and open faces.

Because efficiency depends only on a point's support, the efficient set
is a union of open faces and the whole structure is finite: one verdict
per support pattern.  Enumeration therefore scans every vertex and every
support of size two and up.  The scan is exponential in the number of
columns, so it is capped by default and can be limited to small supports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    DEFAULT_TOLERANCES,
    CriteriaMatrix,
    DimensionMismatchError,
    InputError,
    SupportPattern,
    Tolerances,
)
from .efficiency import DECISION_THRESHOLD, EfficiencyAnalyzer
from .scalarize import WeightVector

__all__ = [
    "MAX_ENUMERABLE_COLUMNS",
    "EfficientStructure",
    "EnumerationCapError",
    "bicriterion_full_check",
    "check_full",
    "enumerate_faces",
    "enumerate_vertices",
]

#: Hard cap on columns for exhaustive scans (2**n support patterns).
MAX_ENUMERABLE_COLUMNS = 16


class EnumerationCapError(RuntimeError):
    """Exhaustive scan refused: too many columns without an explicit override."""


@dataclass(frozen=True)
class EfficientStructure:
    """Enumerated efficient structure.

    full means every feasible point is efficient.  vertices holds the
    efficient column indices, faces the efficient support patterns among
    those scanned.  exhaustive is set when every support size up to n-1
    was scanned, so the structure describes the entire efficient set.
    """

    full: bool
    vertices: frozenset[int]
    faces: frozenset[SupportPattern]
    exhaustive: bool
    warning: str | None = None


def check_full(
    matrix: CriteriaMatrix,
    tol: Tolerances = DEFAULT_TOLERANCES,
    analyzer: EfficiencyAnalyzer | None = None,
) -> tuple[bool, WeightVector | None]:
    """Decide whether every feasible point is efficient.

    True comes with a verified certificate: strictly positive weights
    under which every column ties.
    """
    analyzer = analyzer or EfficiencyAnalyzer(matrix, tol)
    result = analyzer.t0()
    if result.value <= DECISION_THRESHOLD:
        return False, None
    return True, analyzer.certificate_from(result)


def enumerate_vertices(
    matrix: CriteriaMatrix,
    tol: Tolerances = DEFAULT_TOLERANCES,
    analyzer: EfficiencyAnalyzer | None = None,
) -> frozenset[int]:
    """1-based indices of the efficient vertices.  Never empty: some vertex
    maximizes any strictly positive weighting, and one always exists that
    certifies at least one vertex."""
    analyzer = analyzer or EfficiencyAnalyzer(matrix, tol)
    full, _ = check_full(matrix, tol, analyzer)
    if full:
        return frozenset(range(1, matrix.n + 1))
    return frozenset(
        j for j in range(1, matrix.n + 1) if _pattern_efficient(analyzer, SupportPattern((j,)))
    )


def _scan_sizes(n: int, max_support: int | None) -> range:
    cap = n - 1 if max_support is None else min(max_support, n - 1)
    return range(2, cap + 1)


def _pattern_efficient(analyzer: EfficiencyAnalyzer, pattern: SupportPattern) -> bool:
    """Exact-face test first, weak-gap closure test when that fails; mirrors
    the per-point decision so the scans agree with it on every support."""
    if len(pattern) == 1:
        primary = analyzer.t2(pattern.indices[0])
    else:
        primary = analyzer.t1(pattern)
    if primary.value > DECISION_THRESHOLD:
        return True
    return analyzer.closure(pattern).value > DECISION_THRESHOLD


def enumerate_faces(
    matrix: CriteriaMatrix,
    tol: Tolerances = DEFAULT_TOLERANCES,
    max_support: int | None = None,
    allow_large: bool = False,
    analyzer: EfficiencyAnalyzer | None = None,
) -> EfficientStructure:
    """Scan vertices and support patterns for efficiency.

    max_support limits the scanned support sizes; the result is flagged
    exhaustive only when nothing was cut off.  Matrices with more than
    MAX_ENUMERABLE_COLUMNS columns are refused unless allow_large is set,
    in which case the structure carries a warning instead.
    """
    n = matrix.n
    if max_support is not None and max_support < 2:
        raise InputError("max_support below 2 scans no faces; omit it instead")
    warning = None
    if n > MAX_ENUMERABLE_COLUMNS:
        if not allow_large:
            raise EnumerationCapError(
                f"{n} columns means up to {2 ** n} support patterns; "
                f"pass allow_large to scan anyway"
            )
        warning = f"exhaustive scan over up to {2 ** n} support patterns"
    analyzer = analyzer or EfficiencyAnalyzer(matrix, tol)
    sizes = _scan_sizes(n, max_support)
    exhaustive = sizes.stop > n - 1
    full, _ = check_full(matrix, tol, analyzer)
    if full:
        vertices = frozenset(range(1, n + 1))
        faces = frozenset(
            SupportPattern(combo)
            for size in sizes
            for combo in itertools.combinations(range(1, n + 1), size)
        )
        return EfficientStructure(True, vertices, faces, exhaustive, warning)
    vertices = enumerate_vertices(matrix, tol, analyzer)
    faces = frozenset(
        pattern
        for size in sizes
        for combo in itertools.combinations(range(1, n + 1), size)
        if _pattern_efficient(analyzer, pattern := SupportPattern(combo))
    )
    return EfficientStructure(False, vertices, faces, exhaustive, warning)


def bicriterion_full_check(
    matrix: CriteriaMatrix,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    """Closed-form sufficient test for two criteria.

    With consecutive first-criterion entries all distinct, every feasible
    point is efficient if the trade-off ratios
    (c2[j+1] - c2[j]) / (c1[j] - c1[j+1]) are all equal and positive.
    Equality is relative to the first ratio at ``tol.tie``.  This checks
    sufficiency only: a False still leaves the LP-based check_full to
    decide.
    """
    if matrix.k != 2:
        raise DimensionMismatchError("the ratio test applies to exactly two criteria")
    first, second = matrix.entries[0], matrix.entries[1]
    denominators = first[:-1] - first[1:]
    if (denominators == 0.0).any():
        raise InputError(
            "consecutive first-criterion entries must be distinct for the ratio test"
        )
    ratios = (second[1:] - second[:-1]) / denominators
    lead = ratios[0]
    if lead <= 0.0:
        return False
    return bool(
        (ratios > 0.0).all() and (abs(ratios - lead) <= tol.tie * abs(lead)).all()
    )
