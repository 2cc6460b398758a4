"""Domain types for linear multi-criteria analysis on the probability simplex.

The feasible set is the standard probability simplex: vectors with
nonnegative components summing to one.  Points are classified by support
size: deterministic points put all mass on a single column (a vertex),
randomized points have strictly positive mass everywhere, and partially
randomized points sit strictly between those extremes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

__all__ = [
    "DEFAULT_TOLERANCES",
    "CriteriaMatrix",
    "Deterministic",
    "DimensionMismatchError",
    "InputError",
    "InvalidPointError",
    "PartiallyRandomized",
    "PointClass",
    "Randomized",
    "SimplexPoint",
    "SupportPattern",
    "Tolerances",
    "Verdict",
    "clamped_indices",
    "classify",
    "vertex",
]


class InputError(ValueError):
    """Invalid domain data (malformed matrix, point, support, or tolerance)."""


class DimensionMismatchError(InputError):
    """Operands whose dimensions do not agree."""


class InvalidPointError(InputError):
    """Candidate point violates simplex membership."""


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds shared across the library.

    x_zero: point components at or below this count as zero.
    tie: objective coefficients within this of the maximum count as tied.
    lp: pivot and feasibility tolerance of the simplex solver.

    The solver tolerance must not exceed the tie tolerance, otherwise the
    noise the solver is allowed to leave behind could flip tie decisions.
    """

    x_zero: float = 1e-9
    tie: float = 1e-7
    lp: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("x_zero", "tie", "lp"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and np.isfinite(value) and value > 0):
                raise InputError(f"tolerance {name!r} must be a positive finite number")
        if self.lp > self.tie:
            raise InputError("solver tolerance lp must not exceed tie tolerance")


DEFAULT_TOLERANCES = Tolerances()


def _frozen_array(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != ndim:
        raise InputError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


class CriteriaMatrix:
    """A k-by-n matrix of criteria values; row i scores the n columns under
    criterion i.  Requires at least two criteria and two columns, all finite.
    """

    __slots__ = ("entries",)

    def __init__(self, entries) -> None:
        arr = _frozen_array(entries, ndim=2)
        k, n = arr.shape
        if k < 2 or n < 2:
            raise InputError(f"need at least two criteria and two columns, got {k}x{n}")
        if not np.isfinite(arr).all():
            raise InputError("criteria entries must be finite")
        self.entries = arr

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    def __repr__(self) -> str:
        return f"CriteriaMatrix(k={self.k}, n={self.n})"


class SimplexPoint:
    """A probability vector.

    Components in [-x_zero, 0) are clamped to zero at construction; anything
    more negative is rejected.  The component sum must be within n * x_zero
    of one.  Coordinates are never renormalized.
    """

    __slots__ = ("coords",)

    def __init__(self, coords, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        arr = np.array(coords, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidPointError("a point must be a nonempty one-dimensional vector")
        if not np.isfinite(arr).all():
            raise InvalidPointError("point components must be finite")
        if (arr < -tol.x_zero).any():
            worst = float(arr.min())
            raise InvalidPointError(f"component {worst} is below -x_zero")
        arr[arr < 0.0] = 0.0
        total = float(arr.sum())
        if abs(total - 1.0) > arr.size * tol.x_zero:
            raise InvalidPointError(f"components sum to {total}, not 1")
        arr.setflags(write=False)
        self.coords = arr

    @property
    def n(self) -> int:
        return self.coords.size

    def __len__(self) -> int:
        return self.coords.size

    def __repr__(self) -> str:
        inner = ", ".join(format(c, "g") for c in self.coords)
        return f"SimplexPoint([{inner}])"


@dataclass(frozen=True)
class SupportPattern:
    """Sorted, duplicate-free 1-based column indices."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        cleaned = []
        for i in self.indices:
            j = int(i)
            if j != i:
                raise InputError(f"support index {i!r} is not an integer")
            cleaned.append(j)
        if not cleaned:
            raise InputError("a support pattern cannot be empty")
        if len(set(cleaned)) != len(cleaned):
            raise InputError("support indices must be distinct")
        if min(cleaned) < 1:
            raise InputError("support indices are 1-based")
        object.__setattr__(self, "indices", tuple(sorted(cleaned)))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, j: object) -> bool:
        return j in self.indices

    def __repr__(self) -> str:
        return f"SupportPattern({self.indices})"


@dataclass(frozen=True)
class Deterministic:
    """All mass on one column: the point is the vertex with this 1-based index."""

    index: int

    def __post_init__(self) -> None:
        if int(self.index) != self.index or self.index < 1:
            raise InputError("vertex index must be a positive integer")
        object.__setattr__(self, "index", int(self.index))

    @property
    def support(self) -> SupportPattern:
        return SupportPattern((self.index,))


@dataclass(frozen=True)
class PartiallyRandomized:
    """Mass on at least two but not all columns."""

    support: SupportPattern

    def __post_init__(self) -> None:
        if len(self.support) < 2:
            raise InputError("a partially randomized point has support size >= 2")


@dataclass(frozen=True)
class Randomized:
    """Strictly positive mass on every column."""


PointClass = Deterministic | PartiallyRandomized | Randomized


class Verdict(Enum):
    EFFICIENT = "efficient"
    DOMINATED = "dominated"


def classify(x: SimplexPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> PointClass:
    """Classify a point by its support at threshold ``tol.x_zero``.

    The support consists of exactly the components strictly above x_zero,
    so boundary mass within the threshold is treated as zero.  With two
    columns there is no partially randomized class.
    """
    coords = x.coords
    if abs(float(coords.sum()) - 1.0) > coords.size * tol.x_zero:
        raise InvalidPointError("point does not lie on the simplex at this tolerance")
    positive = np.flatnonzero(coords > tol.x_zero)
    if positive.size == 0:
        raise InvalidPointError("every component is within the zero threshold")
    if positive.size == 1:
        return Deterministic(int(positive[0]) + 1)
    if positive.size == coords.size:
        return Randomized()
    return PartiallyRandomized(SupportPattern(int(j) + 1 for j in positive))


def clamped_indices(x: SimplexPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[int, ...]:
    """1-based indices with positive mass at or below the zero threshold.

    These are the components that classification treats as zero even though
    they carry (negligible) mass.
    """
    coords = x.coords
    mask = (coords > 0.0) & (coords <= tol.x_zero)
    return tuple(int(j) + 1 for j in np.flatnonzero(mask))


def vertex(j: int, n: int) -> SimplexPoint:
    """The j-th vertex of the n-simplex (1-based): the unit vector e_j."""
    if n < 1:
        raise InputError("dimension must be positive")
    if not 1 <= j <= n:
        raise InputError(f"vertex index {j} out of range 1..{n}")
    coords = np.zeros(n)
    coords[j - 1] = 1.0
    return SimplexPoint(coords)
