"""Arithmetic and comparison of compact convex sets in R and R^2.

Two representations are supported:

* ``Interval`` -- a compact interval [lo, hi], the one-dimensional case.
* ``SupportSet`` -- a convex compact subset of R^2 represented by its
  support values on a fixed grid of M directions
  u_i = (cos(2*pi*i/M), sin(2*pi*i/M)).

The support vector IS the object: inclusion and Hausdorff distance are
defined directly on support vectors.  All constructors provided here
(balls, points, Minkowski sums, nonnegative scalings) keep the sampled
support values exact for the represented set, so no polytope
reconstruction is ever needed.

All operations are pure functions on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

DEFAULT_GRID_SIZE = 64


class RepresentationMismatchError(ValueError):
    """Operands use different set representations (or grid sizes)."""


class NegativeScaleError(ValueError):
    """A negative scalar was passed where a nonnegative one is required."""


class UnsupportedProductError(TypeError):
    """Set products are defined for intervals only."""


@dataclass(frozen=True)
class Interval:
    """Compact interval [lo, hi] with lo <= hi."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo = float(self.lo)
        hi = float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoints must not be NaN")
        if lo > hi:
            raise ValueError(f"inverted interval: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class SupportSet:
    """Convex compact subset of R^2 given by support values on a direction grid."""

    support: tuple

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.support)
        if len(vals) < 3:
            raise ValueError("support grid needs at least 3 directions")
        if any(math.isnan(v) for v in vals):
            raise ValueError("support values must not be NaN")
        object.__setattr__(self, "support", vals)

    @property
    def grid_size(self) -> int:
        return len(self.support)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.support, dtype=float)

    def __repr__(self) -> str:
        return f"SupportSet(M={self.grid_size})"


ConvexSet = Union[Interval, SupportSet]


def directions(grid_size: int) -> np.ndarray:
    """Unit direction grid used by SupportSet, shape (M, 2)."""
    angles = 2.0 * np.pi * np.arange(grid_size) / grid_size
    return np.column_stack([np.cos(angles), np.sin(angles)])


@dataclass(frozen=True)
class InclusionVerdict:
    """Outcome of an inclusion test A subset-of B.

    ``slack`` is the signed margin at the witness direction; the test holds
    iff slack >= -tolerance_used.
    """

    holds: bool
    slack: float
    witness_direction: Union[int, str]
    tolerance_used: float


def _check_same_kind(a: ConvexSet, b: ConvexSet) -> None:
    if isinstance(a, Interval) and isinstance(b, Interval):
        return
    if isinstance(a, SupportSet) and isinstance(b, SupportSet):
        if a.grid_size != b.grid_size:
            raise RepresentationMismatchError(
                f"mixed support grids: {a.grid_size} vs {b.grid_size}"
            )
        return
    raise RepresentationMismatchError(
        f"mixed set representations: {type(a).__name__} vs {type(b).__name__}"
    )


def minkowski_sum(a: ConvexSet, b: ConvexSet) -> ConvexSet:
    """A (+) B.  Support functions of convex compacts add."""
    _check_same_kind(a, b)
    if isinstance(a, Interval):
        return Interval(a.lo + b.lo, a.hi + b.hi)
    return SupportSet(tuple(x + y for x, y in zip(a.support, b.support)))


def scale(lam: float, a: ConvexSet) -> ConvexSet:
    """lam * A for lam >= 0 (support values scale by lam)."""
    lam = float(lam)
    if lam < 0.0:
        raise NegativeScaleError(f"scale factor must be nonnegative, got {lam}")
    if isinstance(a, Interval):
        return Interval(lam * a.lo, lam * a.hi)
    if isinstance(a, SupportSet):
        return SupportSet(tuple(lam * v for v in a.support))
    raise TypeError(f"not a convex set: {a!r}")


def ball(radius: float, kind: str = "interval", grid_size: int = DEFAULT_GRID_SIZE) -> ConvexSet:
    """Closed ball of the given radius centered at the origin."""
    radius = float(radius)
    if radius < 0.0:
        raise ValueError(f"ball radius must be nonnegative, got {radius}")
    if kind == "interval":
        return Interval(-radius, radius)
    if kind == "support":
        return SupportSet((radius,) * grid_size)
    raise ValueError(f"unknown representation kind: {kind!r}")


def point(value, kind: str = "interval", grid_size: int = DEFAULT_GRID_SIZE) -> ConvexSet:
    """Singleton set {value}.  For 'support', value is a 2-vector."""
    if kind == "interval":
        v = float(value)
        return Interval(v, v)
    if kind == "support":
        p = np.asarray(value, dtype=float)
        if p.shape != (2,):
            raise ValueError("support-kind point needs a 2-vector")
        return SupportSet(tuple(directions(grid_size) @ p))
    raise ValueError(f"unknown representation kind: {kind!r}")


def includes(a: ConvexSet, b: ConvexSet, tol: float = 0.0) -> InclusionVerdict:
    """Test A subset-of B with a mixed relative-absolute tolerance.

    The raw slack in a direction is h_B - h_A; the per-direction pass
    threshold is -tol * (1 + |h_B|) (for intervals, 1 + max endpoint
    magnitude of B).  The witness is the most binding direction.
    """
    _check_same_kind(a, b)
    tol = float(tol)
    if isinstance(a, Interval):
        margin_hi = b.hi - a.hi
        margin_lo = a.lo - b.lo
        tol_eff = tol * (1.0 + max(abs(b.lo), abs(b.hi)))
        if margin_hi <= margin_lo:
            slack, witness = margin_hi, "hi"
        else:
            slack, witness = margin_lo, "lo"
        return InclusionVerdict(
            holds=bool(slack >= -tol_eff),
            slack=float(slack),
            witness_direction=witness,
            tolerance_used=tol_eff,
        )
    ha = a.as_array()
    hb = b.as_array()
    margins = hb - ha
    tols = tol * (1.0 + np.abs(hb))
    j = int(np.argmin(margins + tols))
    return InclusionVerdict(
        holds=bool(margins[j] >= -tols[j]),
        slack=float(margins[j]),
        witness_direction=j,
        tolerance_used=float(tols[j]),
    )


def interval_product(a: Interval, b: Interval) -> Interval:
    """Moore product of two intervals (min/max over endpoint products)."""
    if not isinstance(a, Interval) or not isinstance(b, Interval):
        raise UnsupportedProductError("set products are defined for intervals only")
    cands = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(cands), max(cands))


def hausdorff(a: ConvexSet, b: ConvexSet) -> float:
    """Hausdorff distance; exact on this representation class."""
    _check_same_kind(a, b)
    if isinstance(a, Interval):
        return max(abs(a.lo - b.lo), abs(a.hi - b.hi))
    return float(np.max(np.abs(a.as_array() - b.as_array())))
